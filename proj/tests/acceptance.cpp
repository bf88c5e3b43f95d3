// Acceptance run: one PASS/FAIL line per criterion, every tolerance pinned here.
// Exit code 0 only when all selected criteria pass.

#include "dlab/cutoffs.hpp"
#include "dlab/fft.hpp"
#include "dlab/inflation.hpp"
#include "dlab/kernel_decay.hpp"
#include "dlab/lemma_check.hpp"
#include "dlab/littlewood_paley.hpp"
#include "dlab/mollifier_check.hpp"
#include "dlab/pseudo_product.hpp"
#include "dlab/solver.hpp"
#include "dlab/spectral.hpp"
#include "dlab/strichartz.hpp"
#include "dlab/trilinear.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using namespace dlab;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> notes;

    void require(bool ok) { pass = pass && ok; }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double v, int digits = 4)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double rel_diff(const SpectralField2D& a, const SpectralField2D& b)
{
    return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

double max_abs(const SpectralField2D& f)
{
    double m = 0.0;
    for (const cplx& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

SimConfig gaussian_config(std::size_t n, double L, double alpha, double amplitude, double t_end, double dt)
{
    Grid2D g(n, n, L, L);
    SimConfig c{g, DispersionParams(alpha)};
    c.dt = dt;
    c.t_end = t_end;
    c.initial = make_initial("gaussian", g, amplitude, 1.0, 1);
    c.monitor_stride = int(std::lround(t_end / dt));
    c.store_states = false;
    return c;
}

void propagator_algebra(Outcome& o)
{
    const double tol = 1e-12;
    const Grid2D g(128, 128, 40.0, 25.0);
    CounterRng rng(101);
    double worst_unit = 0.0, worst_group = 0.0, worst_inverse = 0.0;
    const double alphas[3] = {1.0, 1.5, 2.0};
    for (int n = 0; n < 100; ++n) {
        const DispersionParams p(alphas[n % 3]);
        const SpectralField2D f = random_bandlimited(g, 1.0, rng);
        const double t1 = rng.uniform(-5.0, 5.0), t2 = rng.uniform(-5.0, 5.0);
        const SpectralField2D u1 = propagate(f, t1, p);
        worst_unit = std::max(worst_unit, std::abs(l2_norm(u1) / l2_norm(f) - 1.0));
        worst_group = std::max(worst_group, rel_diff(propagate(u1, t2, p), propagate(f, t1 + t2, p)));
        worst_inverse = std::max(worst_inverse, rel_diff(propagate(u1, -t1, p), f));
    }
    o.require(worst_unit <= tol && worst_group <= tol && worst_inverse <= tol);
    o.detail << "100 fields 128x128: unitarity " << fmt(worst_unit) << ", group law " << fmt(worst_group)
             << ", inverse " << fmt(worst_inverse) << " (tolerance " << fmt(tol) << ")";
}

void conservation(Outcome& o)
{
    const double m_tol = 1e-8, h_tol = 1e-6, min_halving = 8.0;
    double worst_m = 0.0, worst_h = 0.0, worst_halving = INFINITY;
    for (double a : {1.0, 1.5, 2.0}) {
        double dH[2] = {0.0, 0.0}, dM = 0.0;
        for (int n = 0; n < 2; ++n) {
            const Trajectory t = simulate(gaussian_config(256, 40.0, a, 10.0, 1.0, n == 0 ? 1e-3 : 5e-4));
            const MonitorRow& m0 = t.monitors.front();
            const MonitorRow& m1 = t.monitors.back();
            if (n == 0) dM = std::abs(m1.M - m0.M) / m0.M;
            dH[n] = std::abs(m1.H - m0.H) / std::abs(m0.H);
        }
        const double halving = dH[0] / dH[1];
        o.note("alpha " + fmt(a) + ": M drift " + fmt(dM) + ", H drift " + fmt(dH[0]) + " (dt 1e-3), " +
               fmt(dH[1]) + " (dt 5e-4), halving ratio " + fmt(halving));
        worst_m = std::max(worst_m, dM);
        worst_h = std::max(worst_h, dH[0]);
        worst_halving = std::min(worst_halving, halving);
    }
    o.require(worst_m <= m_tol && worst_h <= h_tol && worst_halving >= min_halving);
    o.detail << "alpha 1,1.5,2 on 256x256, t_end 1: max M drift " << fmt(worst_m) << " (<= " << fmt(m_tol)
             << "), max H drift " << fmt(worst_h) << " (<= " << fmt(h_tol) << "), min halving ratio "
             << fmt(worst_halving) << " (>= " << fmt(min_halving) << ")";
}

void dilation(Outcome& o)
{
    const double disc_tol = 1e-6, slack = 1.1, factor_tol = 0.1;
    double worst_disc = 0.0, worst_over = 0.0, worst_factor = 0.0;
    for (double a : {1.0, 2.0}) {
        const SimConfig c = gaussian_config(64, 30.0, a, 1e-9, 0.5, 2e-3);
        for (double lambda : {0.5, 0.25}) {
            const ScalingReport r = scaled_solution_check(c, lambda, {0.0, 0.5});
            worst_disc = std::max(worst_disc, r.discrepancy);
            for (std::size_t i = 0; i < r.s_values.size(); ++i) {
                worst_over = std::max(worst_over, r.norm_ratio[i] / r.bound[i]);
                if (r.s_values[i] == 0.0)
                    worst_factor = std::max(worst_factor, std::abs(r.norm_ratio[i] / r.scaling_factor - 1.0));
            }
        }
    }
    o.require(worst_disc <= disc_tol && worst_over <= slack && worst_factor <= factor_tol);
    o.detail << "lambda 1/2,1/4, alpha 1,2: discrepancy " << fmt(worst_disc) << " (<= " << fmt(disc_tol)
             << "), max norm ratio / bound " << fmt(worst_over) << " (<= " << fmt(slack)
             << "), s=0 deviation from the scaling factor " << fmt(worst_factor) << " (<= " << fmt(factor_tol) << ")";
}

void kernel_decay(Outcome& o)
{
    const double t_lo = -1.15, t_hi = -0.85, n_tol = 0.15, N = 64.0;
    KernelSweepOptions opt;
    opt.delta = 0.9;
    opt.doubling_tolerance = 0.01;
    opt.doubling_tau_limit = 32.0;
    std::vector<std::string> failed;
    for (double a : {1.0, 1.5, 2.0}) {
        const DispersionParams p(a);
        std::vector<double> times;
        for (double tau : {8.0, 16.0, 32.0, 64.0, 128.0}) times.push_back(tau / std::pow(N, a + 1.0));
        const SweepResult rt = kernel_decay_t_sweep(N, times, p, opt);
        const SweepResult rn = kernel_decay_n_sweep({64.0, 128.0, 256.0}, 128.0 / std::pow(256.0, a + 1.0), p, opt);
        std::vector<double> small;
        for (double tau : {1.0 / 16, 0.25, 0.5}) small.push_back(tau / std::pow(N, a + 1.0));
        const SweepResult rs = kernel_small_time_sweep(N, small, p, opt);
        double cmax = 0.0;
        for (const auto& pt : rs.points) cmax = std::max(cmax, pt.ratio);
        const bool t_ok = rt.fit.slope >= t_lo && rt.fit.slope <= t_hi && rt.flags.empty();
        const bool n_ok = rn.fit.slope <= -a / 2.0 + n_tol && rn.flags.empty();
        if (!t_ok || !n_ok) failed.push_back(fmt(a));
        o.require(t_ok && n_ok);
        std::string flags;
        for (const auto& f : rt.flags) flags += " [" + f + "]";
        for (const auto& f : rn.flags) flags += " [" + f + "]";
        o.note("alpha " + fmt(a) + ": t-slope " + fmt(rt.fit.slope) + " in [" + fmt(t_lo) + "," + fmt(t_hi) +
               "] " + (t_ok ? "ok" : "MISS") + ", N-slope " + fmt(rn.fit.slope) + " <= " + fmt(-a / 2.0 + n_tol) +
               " " + (n_ok ? "ok" : "MISS") + ", small-time constant " + fmt(cmax) + flags);
    }
    o.detail << "N=64 tau 8..128, N 64..256, doubling to 1%: ";
    if (failed.empty()) o.detail << "all alpha within the windows";
    else {
        o.detail << "outside the windows for alpha";
        for (const auto& f : failed) o.detail << " " << f;
    }
}

void strichartz(Outcome& o)
{
    const double tol = 0.1, min_r2 = 0.9;
    for (double a : {1.0, 1.5, 2.0}) {
        const DispersionParams p(a);
        StrichartzOptions s;
        s.mode = StrichartzMode::localized;
        s.epsilon = 0.05;
        s.theta = l4_theta(s.epsilon);
        s.trials = 32;
        const SweepResult loc = strichartz_sweep(p, s);
        const bool loc_ok = loc.fit.slope <= -a / 8.0 + tol && loc.fit.r2 >= min_r2;

        s.mode = StrichartzMode::global;
        s.theta = 0.5;
        const SweepResult glo = strichartz_sweep(p, s);
        const double glo_lim = -(s.theta / 6.0) * (a - 0.5) + tol;
        const bool glo_ok = glo.fit.slope <= glo_lim;
        o.require(loc_ok && glo_ok);
        o.note("alpha " + fmt(a) + ": localized slope " + fmt(loc.fit.slope) + " <= " + fmt(-a / 8.0 + tol) +
               ", R2 " + fmt(loc.fit.r2) + (loc_ok ? " ok" : " MISS") + "; global slope " + fmt(glo.fit.slope) +
               " <= " + fmt(glo_lim) + (glo_ok ? " ok" : " MISS"));
    }
    o.detail << "N 8..256, 32 trials, alpha 1,1.5,2: L4-point slope <= -alpha/8 + " << fmt(tol) << " with R2 >= "
             << fmt(min_r2) << ", global theta=1/2 slope <= -(theta/6)(alpha-1/2) + " << fmt(tol);
}

// Every factor is a single lattice point carrying one theta cell, so the form reduces to one product.
double point_mass_exact(const DispersionParams& p, double& form)
{
    TrilinearConfig cfg{{Dyadic::from_value(4), Dyadic::from_value(4), Dyadic::from_value(4)},
                        {Dyadic::from_value(16), Dyadic::from_value(16), Dyadic::from_value(16)},
                        std::nullopt};
    const TriLattice lat = fit_lattice(cfg, p);
    const long i1 = 3, k1 = 2, i2 = -1, k2 = 4;
    const double om = eval_resonance({i1 * lat.dxi, k1 * lat.dmu}, {i2 * lat.dxi, k2 * lat.dmu}, p);
    const double L = 16.0, d = 2.0 * L / lat.n_theta;
    const int a = 2, b = 5;
    const double s = -L + (a + 0.5) * d - L + (b + 0.5) * d + om;
    const int c = int(std::floor((s + L) / d));
    if (c < 0 || c >= lat.n_theta) return INFINITY;
    auto point = [&](long i, long k, int cell, double v) {
        ThetaFunction f;
        f.L = L;
        f.support = {{i, k}};
        f.values.assign(std::size_t(lat.n_theta), 0.0);
        f.values[std::size_t(cell)] = v;
        return f;
    };
    const double v1 = 0.75, v2 = 1.25, v3 = 2.5;
    form = trilinear_form(lat, point(i1, k1, a, v1), point(i2, k2, b, v2), point(i1 + i2, k1 + k2, c, v3), p);
    const double expected = v1 * v2 * v3 * d * d * lat.dxi * lat.dmu * lat.dxi * lat.dmu;
    return std::abs(form - expected) / expected;
}

void trilinear(Outcome& o)
{
    const double tol = 0.1, exact_tol = 1e-12;
    auto D = [](double v) { return Dyadic::from_value(v); };
    struct Case {
        TrilinearCase which;
        TrilinearConfig cfg;
    };
    const std::vector<Case> cases{
        {TrilinearCase::c1, {{D(4), D(4), D(4)}, {D(16), D(16), D(16)}, std::nullopt}},
        {TrilinearCase::c2a, {{D(2), D(16), D(16)}, {D(64), D(16), D(16)}, std::nullopt}},
        {TrilinearCase::c2b, {{D(2), D(16), D(16)}, {D(16), D(64), D(16)}, std::nullopt}},
        {TrilinearCase::c3, {{D(8), D(8), D(16)}, {D(16), D(16), D(16)}, std::array<Dyadic, 3>{D(2), D(2), D(4)}}},
    };
    double worst = 0.0, worst_exact = 0.0;
    for (double a : {1.0, 1.5, 2.0}) {
        const DispersionParams p(a);
        std::string line = "alpha " + fmt(a) + ":";
        for (const Case& c : cases) {
            TrilinearSweepOptions opt;
            opt.which = c.which;
            opt.base = c.cfg;
            opt.trials = 16;
            const SweepResult r = trilinear_scaling_sweep(p, opt);
            worst = std::max(worst, std::abs(r.fit.slope));
            line += std::string(" ") + to_string(c.which) + " slope " + fmt(r.fit.slope);
        }
        double form = 0.0;
        const double e = point_mass_exact(p, form);
        worst_exact = std::max(worst_exact, e);
        o.note(line + ", point mass relative error " + fmt(e));
    }
    o.require(worst <= tol && worst_exact <= exact_tol);
    o.detail << "cases c1,c2a,c2b,c3, lambda 1..16, 16 trials, 47^3 lattice: max |slope| " << fmt(worst) << " (<= "
             << fmt(tol) << "), point mass " << fmt(worst_exact) << " (<= " << fmt(exact_tol) << ")";
}

// closed forms of the lemma constants, evaluated without the library
double lemma_f(double a, double delta)
{
    const double B = a * (a + 1.0) / 2.0;
    const double g = (a + 1.0 + B + delta) / (a + 1.0 + B - delta);
    return (B + delta - (B - delta) / std::sqrt(g)) + std::pow(std::pow(g, 1.0 / a) - 1.0, a) + (g - 1.0);
}

void lemma(Outcome& o)
{
    // 30-digit evaluation of the closed forms at alpha = 1, delta = 0.1
    const double frozen = 0.3674472979983422, tol = 1e-6, printed = 0.367458;
    std::uint64_t violations = 0, mismatches = 0;
    double slack = 0.0;
    for (double a : {1.0, 1.5, 2.0})
        for (double d : {0.05, 0.1, 0.2}) {
            const LemmaReport r = lemma_tech_check(d, DispersionParams(a), 1000000, 7);
            violations += r.violations;
            mismatches += r.mirror_mismatches;
            slack = std::max(slack, r.max_slack);
        }
    const double lib = lemma_constants(0.1, DispersionParams(1.0)).f();
    const double indep = lemma_f(1.0, 0.1);
    o.require(violations == 0 && mismatches == 0 && std::abs(lib - frozen) <= tol && std::abs(indep - frozen) <= tol);
    o.detail << "9 (alpha, delta) x 1e6 samples: " << violations << " violations, " << mismatches
             << " mirror mismatches, max lhs/rhs " << fmt(slack) << "; f(0.1) at alpha 1 = " << fmt(lib, 10)
             << " vs independent " << fmt(indep, 10) << " and frozen " << fmt(frozen, 10) << " (tolerance "
             << fmt(tol) << ")";
    o.note("the literal " + fmt(printed, 7) + " differs from the closed form by " + fmt(std::abs(printed - frozen), 3));
}

void pseudo_product(Outcome& o)
{
    const double dual_tol = 1e-9, leib_tol = 1e-10, prod_tol = 1e-10;
    const Grid2D g(64, 64, 2 * pi, 2 * pi);
    const DispersionParams p(1.5);
    CounterRng rng(202);
    auto field = [&] { return dealias(random_bandlimited(g, 1.0, rng)); };

    double worst_dual = 0.0;
    const std::vector<BilinearSymbol> symbols{identity_symbol(), shell_transition_symbol(Dyadic::from_value(16), p),
                                              dispersion_commutator_symbol(Dyadic::from_value(16), p),
                                              energy_symbol(Dyadic::from_value(8), p, false)};
    for (const BilinearSymbol& eta : symbols) {
        const SpectralField2D f = field(), k = field(), h = field();
        auto [e1, e2] = adjoint_symbols(eta);
        const double lhs = real_pairing(pi_eta_apply(f, k, eta), h);
        const double scale = std::abs(lhs) + 1e-300;
        worst_dual = std::max({worst_dual, std::abs(lhs - real_pairing(f, pi_eta_apply(h, k, e1))) / scale,
                               std::abs(lhs - real_pairing(f, pi_eta_apply(k, h, e2))) / scale});
    }

    const BilinearSymbol eta = shell_transition_symbol(Dyadic::from_value(16), p);
    const SpectralField2D f = field(), h = field();
    SpectralField2D lhs = apply_x_multiplier(pi_eta_apply(f, h, eta), XMultiplier::d_dx);
    SpectralField2D rhs = pi_eta_apply(apply_x_multiplier(f, XMultiplier::d_dx), h, eta) +
                          pi_eta_apply(f, apply_x_multiplier(h, XMultiplier::d_dx), eta);
    double worst_leib = max_abs(lhs - rhs) / max_abs(lhs);
    lhs = apply_d_dy(pi_eta_apply(f, h, eta));
    rhs = pi_eta_apply(apply_d_dy(f), h, eta) + pi_eta_apply(f, apply_d_dy(h), eta);
    worst_leib = std::max(worst_leib, max_abs(lhs - rhs) / max_abs(lhs));

    RealField2D pf = inverse_transform(f), ph = inverse_transform(h);
    for (std::size_t n = 0; n < pf.values.size(); ++n) pf.values[n] *= ph.values[n];
    const SpectralField2D phys = dealias(transform(pf));
    const SpectralField2D direct = dealias(pi_eta_apply(f, h, identity_symbol()));
    const double prod = max_abs(phys - direct) / max_abs(phys);

    const double bound = 2.0 * varphi_deriv_max();
    double worst_eta3 = 0.0;
    for (double a : {1.0, 1.5, 2.0}) {
        const DispersionParams q(a);
        for (int k = 2; k <= 12; ++k) {
            const double H = std::ldexp(1.0, k);
            const double xr = 2 * std::pow(H, 1.0 / a), mr = 2 * std::sqrt(H);
            for (int n = 0; n < 4000; ++n) {
                const Zeta z1{rng.uniform(-xr, xr), rng.uniform(-mr, mr)};
                const Zeta z2{rng.uniform(-xr, xr), rng.uniform(-mr, mr)};
                worst_eta3 = std::max(worst_eta3, std::abs(shell_transition_value(z1, z2, H, q)));
            }
        }
    }
    o.require(worst_dual <= dual_tol && worst_leib <= leib_tol && prod <= prod_tol && worst_eta3 <= bound);
    o.detail << "64x64 dealiased fields: duality " << fmt(worst_dual) << " (<= " << fmt(dual_tol) << "), Leibniz "
             << fmt(worst_leib) << " (<= " << fmt(leib_tol) << "), identity symbol vs pointwise product " << fmt(prod)
             << " (<= " << fmt(prod_tol) << "), shell transition sup over H 4..4096 " << fmt(worst_eta3)
             << " (<= " << fmt(bound) << ")";
}

void coercivity(Outcome& o)
{
    const double lo = 0.5, hi = 2.0, b0_max = 0.01;
    double rmin = INFINITY, rmax = 0.0, b0 = 0.0;
    std::size_t shells = 0;
    for (double a : {1.0, 1.5, 2.0}) {
        const DispersionParams p(a);
        const Grid2D g(64, 64, 20 * pi, 20 * pi);
        SimConfig sc{g, p};
        sc.dt = 1e-3;
        sc.t_end = 0.2;
        sc.monitor_stride = 20;
        SpectralField2D u0 = make_initial("random", g, 1.0, 2.0, 1);
        u0 = (0.009 / bs_norm_trajectory({u0}, 0.0, p)) * u0;
        sc.initial = u0;
        const Trajectory tr = simulate(sc);
        const CoercivityReport r = coercivity_report(tr.states, tr.states, 0.5, p);
        rmin = std::min(rmin, r.min_ratio);
        rmax = std::max(rmax, r.max_ratio);
        b0 = std::max(b0, r.b0_norm_u);
        shells += r.shells.size();
        o.note("alpha " + fmt(a) + ": ratios [" + fmt(r.min_ratio, 8) + ", " + fmt(r.max_ratio, 8) + "] over " +
               std::to_string(tr.states.size()) + " frames, B0 norm " + fmt(r.b0_norm_u));
    }
    o.require(shells > 0 && b0 <= b0_max && rmin >= lo && rmax <= hi);
    o.detail << "alpha 1,1.5,2: shell ratios in [" << fmt(rmin, 8) << ", " << fmt(rmax, 8) << "] (window [" << fmt(lo)
             << ", " << fmt(hi) << "]), trajectory B0 norm " << fmt(b0) << " (<= " << fmt(b0_max) << ")";
}

void inflation(Outcome& o)
{
    const double eps = 0.05, del = 0.05, s = 0.25, t = 0.1;
    const double slope_tol = 0.15, min_r2 = 0.9, band = 20.0, time_tol = 0.05;
    const std::vector<double> Ns{64, 128, 256, 512, 1024};
    const PicardOptions q;
    std::vector<std::string> failed;
    for (double a : {1.0, 1.5}) {
        const double pred = inflation_exponent(a, eps, del);
        const SweepResult r = inflation_sweep(a, s, eps, del, Ns, t, q);
        double lo = INFINITY, hi = 0.0;
        for (std::size_t i = 0; i < r.points.size(); ++i) {
            lo = std::min(lo, r.param(i, "omega_min_rel"));
            hi = std::max(hi, r.param(i, "omega_max_rel"));
        }
        const IllposedParams ip(64.0, eps, del, s, DispersionParams(a));
        const double tmax = 0.1 / ip.phase_scale();
        const SweepResult rt = inflation_time_sweep(ip, {tmax / 10.0, tmax / std::sqrt(10.0), tmax}, q);
        const SweepResult tiny = inflation_sweep(a, s, eps, del, Ns, 1e-4, q);

        const bool slope_ok = std::abs(r.fit.slope - pred) <= slope_tol && r.fit.r2 >= min_r2 && r.flags.empty();
        const bool band_ok = lo > 0.0 && hi / lo <= band;
        const bool time_ok = std::abs(rt.fit.slope - 1.0) <= time_tol && rt.flags.empty();
        if (!slope_ok) failed.push_back("slope@" + fmt(a));
        if (!band_ok) failed.push_back("band@" + fmt(a));
        if (!time_ok) failed.push_back("time@" + fmt(a));
        o.require(slope_ok && band_ok && time_ok);
        o.note("alpha " + fmt(a) + ": slope " + fmt(r.fit.slope) + " vs " + fmt(pred) + " +- " + fmt(slope_tol) +
               ", R2 " + fmt(r.fit.r2) + ", phase band C/c " + fmt(hi / lo) + " (<= " + fmt(band) +
               "), time slope " + fmt(rt.fit.slope) + " (1 +- " + fmt(time_tol) + ")");
        o.note("alpha " + fmt(a) + " diagnostic at t=1e-4: slope " + fmt(tiny.fit.slope) + ", R2 " + fmt(tiny.fit.r2));
    }
    o.detail << "alpha 1,1.5, N 64..1024, t=0.1: ";
    if (failed.empty()) o.detail << "all checks within tolerance";
    else {
        o.detail << "missed";
        for (const auto& f : failed) o.detail << " " << f;
    }
}

void mollifier(Outcome& o)
{
    const double tol = 0.05;
    double worst_margin = INFINITY;
    bool decreasing = true;
    for (double a : {1.0, 1.5, 2.0})
        for (double d : {0.25, 0.5}) {
            MollifierOptions opt;
            opt.delta = d;
            const MollifierReport r = mollifier_check(DispersionParams(a), opt);
            worst_margin = std::min(worst_margin, r.gain.fit.slope - (-d - tol));
            decreasing = decreasing && r.defect_ratio_decreasing;
            o.note("alpha " + fmt(a) + ", delta " + fmt(d) + ": gain slope " + fmt(r.gain.fit.slope) + " (>= " +
                   fmt(-d - tol) + "), defect ratio " + (r.defect_ratio_decreasing ? "decreasing" : "NOT decreasing"));
        }
    o.require(worst_margin >= 0.0 && decreasing);
    o.detail << "delta 0.25,0.5, alpha 1,1.5,2, lambda 1/4..1/128: smallest slope margin " << fmt(worst_margin)
             << ", defect ratios " << (decreasing ? "decreasing" : "not decreasing");
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void determinism(Outcome& o)
{
    const char* cli = std::getenv("DLAB_CLI");
    if (!cli) {
        o.require(false);
        o.detail << "DLAB_CLI is not set";
        return;
    }
    const std::vector<std::pair<std::string, std::string>> runs{
        {"simulate", "grid.nx=32 grid.ny=32 time.dt=0.001 time.t_end=0.01 time.monitor_stride=5"},
        {"strichartz", "trials=2 Ns=8,16 samples=17"},
        {"kernel-decay", "alpha=1 N=16 taus=1,2 n_sweep.Ns=16,32 n_sweep.tau_max=2 small.taus=0.25"},
        {"inflation", "alpha=1 Ns=64,128 t=0.0001 time_check.N=64"},
        {"trilinear", "trials=2 lambdas=1,2"},
        {"tech-lemma", "samples=10000"},
        {"energy", "grid.n=32 time.t_end=0.02 time.monitor_stride=10"},
        {"scaling", "grid.n=32 lambdas=0.5 time.t_end=0.05"},
        {"mollifier", "lambdas=0.25,0.125 trials=1"},
    };
    const fs::path root = fs::temp_directory_path() / ("dlab_acceptance_" + std::to_string(::getpid()));
    std::vector<std::string> bad;
    std::size_t files = 0;
    for (const auto& [sub, args] : runs) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path dir = root / (sub + "_" + std::to_string(rep));
            const std::string cmd = std::string(cli) + " run " + sub + " " + args + " --seed 5 --threads 1 --out-dir " +
                                    dir.string() + " > /dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
            if (code != 0 && code != 2) bad.push_back(sub + " exit " + std::to_string(code));
        }
        const fs::path d0 = root / (sub + "_0"), d1 = root / (sub + "_1");
        if (!fs::exists(d0)) continue;
        for (const auto& e : fs::directory_iterator(d0)) {
            const std::string name = e.path().filename().string();
            if (name == "manifest.json") continue;  // carries wall-clock timestamps
            ++files;
            if (slurp(e.path()) != slurp(d1 / name)) bad.push_back(sub + "/" + name);
        }
    }
    fs::remove_all(root);
    o.require(bad.empty() && files > 0);
    o.detail << runs.size() << " subcommands run twice, " << files << " output files compared byte for byte";
    for (const auto& b : bad) o.note("differs or failed: " + b);
}

}  // namespace

int main(int argc, char** argv)
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "propagator algebra", 10, propagator_algebra},
        {2, "conservation laws", 900, conservation},
        {3, "dilation symmetry", 120, dilation},
        {4, "kernel decay", 600, kernel_decay},
        {5, "localized and global Strichartz", 900, strichartz},
        {6, "trilinear bounds", 1200, trilinear},
        {7, "resonance lemma", 60, lemma},
        {8, "pseudo-product identities", 300, pseudo_product},
        {9, "modified-energy coercivity", 300, coercivity},
        {10, "norm inflation", 600, inflation},
        {11, "mollifier rates", 120, mollifier},
        {12, "determinism", 600, determinism},
    };
    // optional arguments select criteria by number; none runs them all
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false);
            o.detail << "error: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_s;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail.str()
                  << " [" << fmt(secs, 3) << " s, limit " << fmt(c.limit_s) << " s" << (in_time ? "" : ", OVER")
                  << "]\n";
        for (const auto& n : o.notes) std::cout << "    " << n << "\n";
        std::cout.flush();
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}
