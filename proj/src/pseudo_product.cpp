#include "dlab/pseudo_product.hpp"

#include "dlab/cutoffs.hpp"
#include "dlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dlab {

BilinearSymbol identity_symbol()
{
    BilinearSymbol s;
    s.eval = [](Zeta, Zeta) { return cplx(1.0, 0.0); };
    s.bound = 1.0;
    s.tag = SymbolTag::identity;
    s.label = "identity";
    return s;
}

BilinearSymbol zero_symbol()
{
    BilinearSymbol s;
    s.eval = [](Zeta, Zeta) { return cplx(0.0, 0.0); };
    s.vanishes = [](Zeta, Zeta) { return true; };
    s.bound = 0.0;
    s.tag = SymbolTag::zero;
    s.label = "zero";
    return s;
}

BilinearSymbol custom_symbol(std::function<cplx(Zeta, Zeta)> f, double bound, std::string label)
{
    BilinearSymbol s;
    s.eval = std::move(f);
    s.bound = bound;
    s.tag = SymbolTag::custom;
    s.label = std::move(label);
    return s;
}

std::pair<BilinearSymbol, BilinearSymbol> adjoint_symbols(const BilinearSymbol& eta)
{
    auto base = eta.eval;
    BilinearSymbol a1, a2;
    a1.eval = [base](Zeta z1, Zeta z2) {
        return std::conj(base({z1.first + z2.first, z1.second + z2.second}, {-z2.first, -z2.second}));
    };
    a2.eval = [base](Zeta z1, Zeta z2) {
        return std::conj(base({z1.first + z2.first, z1.second + z2.second}, {-z1.first, -z1.second}));
    };
    if (eta.vanishes) {
        auto v = eta.vanishes;
        a1.vanishes = [v](Zeta z1, Zeta z2) {
            return v({z1.first + z2.first, z1.second + z2.second}, {-z2.first, -z2.second});
        };
        a2.vanishes = [v](Zeta z1, Zeta z2) {
            return v({z1.first + z2.first, z1.second + z2.second}, {-z1.first, -z1.second});
        };
    }
    a1.bound = a2.bound = eta.bound;
    a1.tag = SymbolTag::adjoint_first;
    a2.tag = SymbolTag::adjoint_second;
    a1.label = "adjoint_first(" + eta.label + ")";
    a2.label = "adjoint_second(" + eta.label + ")";
    return {a1, a2};
}

namespace {

// min over t in [0,1] of |t a + b|
double segment_min_abs(double a, double b)
{
    if ((b <= 0.0 && a + b >= 0.0) || (b >= 0.0 && a + b <= 0.0)) return 0.0;
    return std::min(std::abs(b), std::abs(a + b));
}

// t -> |t xi1 + xi2|^alpha + (t mu1 + mu2)^2 is convex, so its maximum sits at an
// endpoint and the sum of the separate minima bounds it from below.
bool transition_vanishes(Zeta z1, Zeta z2, double H, const DispersionParams& p)
{
    const double a = p.alpha();
    auto arg = [&](double t) {
        double x = t * z1.first + z2.first, m = t * z1.second + z2.second;
        return std::pow(std::abs(x), a) + m * m;
    };
    double hi = std::max(arg(0.0), arg(1.0)) / H;
    double mm = segment_min_abs(z1.second, z2.second);
    double lo = (std::pow(segment_min_abs(z1.first, z2.first), a) + mm * mm) / H;
    if (hi <= 2.0 / 3.0) return true;
    if (lo >= 5.0 / 3.0) return true;
    if (lo >= 5.0 / 6.0 && hi <= 4.0 / 3.0) return true;
    return false;
}

}  // namespace

double shell_transition_value(Zeta z1, Zeta z2, double H, const DispersionParams& p)
{
    if (transition_vanishes(z1, z2, H, p)) return 0.0;
    static const QuadRule rule = gauss_legendre(kThetaNodes, 0.0, 1.0);
    const double a = p.alpha();
    double acc = 0.0;
    for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
        double t = rule.nodes[n];
        double x = t * z1.first + z2.first, m = t * z1.second + z2.second;
        acc += rule.weights[n] * varphi_deriv((std::pow(std::abs(x), a) + m * m) / H);
    }
    return -2.0 * acc;
}

BilinearSymbol shell_transition_symbol(Dyadic H, const DispersionParams& p)
{
    if (H.value() < 2.0) throw std::invalid_argument("shell transition symbol needs H >= 2");
    BilinearSymbol s;
    const double h = H.value();
    s.eval = [h, p](Zeta z1, Zeta z2) { return cplx(shell_transition_value(z1, z2, h, p), 0.0); };
    s.vanishes = [h, p](Zeta z1, Zeta z2) { return transition_vanishes(z1, z2, h, p); };
    s.bound = 2.0 * varphi_deriv_max();
    s.tag = SymbolTag::shell_transition;
    s.label = "shell_transition(H=" + std::to_string(int(h)) + ")";
    return s;
}

// The theta integral of |x|^{a-1} sgn x along x = t xi1 + xi2 has the
// antiderivative |x|^a / (a xi1), so no quadrature is needed.
cplx dispersion_commutator_value(Zeta z1, Zeta z2, double H, const DispersionParams& p)
{
    const double a = p.alpha();
    double mean;
    if (z1.first == 0.0) {
        double x = z2.first;
        mean = x == 0.0 ? 0.0 : std::pow(std::abs(x), a - 1.0) * (x > 0.0 ? 1.0 : -1.0);
    } else {
        mean = (std::pow(std::abs(z1.first + z2.first), a) - std::pow(std::abs(z2.first), a)) / (a * z1.first);
    }
    return cplx(0.0, -a * std::pow(H, 1.0 / a - 1.0) * mean);
}

BilinearSymbol dispersion_commutator_symbol(Dyadic H, const DispersionParams& p)
{
    BilinearSymbol s;
    const double h = H.value();
    s.eval = [h, p](Zeta z1, Zeta z2) { return dispersion_commutator_value(z1, z2, h, p); };
    // uniform on frequencies with |xi| <= 2 (5H/3)^{1/alpha}, the range the symbol is used on
    const double a = p.alpha();
    s.bound = a * std::pow(h, 1.0 / a - 1.0) * std::pow(2.0 * std::pow(5.0 * h / 3.0, 1.0 / a), a - 1.0);
    s.tag = SymbolTag::dispersion_commutator;
    s.label = "dispersion_commutator(H=" + std::to_string(int(h)) + ")";
    return s;
}

BilinearSymbol energy_symbol(Dyadic H, const DispersionParams& p, bool same_solution)
{
    BilinearSymbol base = shell_transition_symbol(H, p);
    const double c = same_solution ? -1.0 / (2.0 * kNonlinearityConstant) : -1.0 / kNonlinearityConstant;
    BilinearSymbol s;
    auto ev = base.eval;
    s.eval = [ev, c](Zeta z1, Zeta z2) { return c * ev(z1, z2); };
    s.vanishes = base.vanishes;
    s.bound = std::abs(c) * base.bound;
    s.tag = SymbolTag::energy;
    s.label = std::string(same_solution ? "energy_same(" : "energy_pair(") + base.label + ")";
    return s;
}

namespace {

struct Entry {
    long j, k;
    Zeta z;
    cplx c;
};

std::vector<Entry> nonzero_entries(const SpectralField2D& f)
{
    const Grid2D& g = f.grid;
    std::vector<Entry> out;
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t k = 0; k < g.ny; ++k) {
            const cplx& c = f(i, k);
            if (c == cplx(0.0, 0.0)) continue;
            out.push_back({g.jx(i), g.jy(k), {g.xi(i), g.mu(k)}, c});
        }
    return out;
}

// sum_{z1} eta(z1, z - z1) f(z1) g(z - z1) for one output lattice point
cplx convolution_at(const Grid2D& gr, long j, long k, const std::vector<Entry>& fl,
                    const SpectralField2D& g, const BilinearSymbol& eta)
{
    cplx acc(0.0, 0.0);
    const double dxi = gr.dxi(), dmu = gr.dmu();
    for (const Entry& e : fl) {
        long j2 = j - e.j, k2 = k - e.k;
        if (!gr.in_range(j2, k2)) continue;
        const cplx& c2 = g.coeffs[gr.index_of(j2, k2)];
        if (c2 == cplx(0.0, 0.0)) continue;
        Zeta z2{dxi * double(j2), dmu * double(k2)};
        if (eta.vanishes && eta.vanishes(e.z, z2)) continue;
        acc += eta.eval(e.z, z2) * e.c * c2;
    }
    return acc;
}

template <bool Parallel>
SpectralField2D pi_eta_impl(const SpectralField2D& f, const SpectralField2D& g, const BilinearSymbol& eta)
{
    require_same_grid(f.grid, g.grid, "pi_eta_apply");
    const Grid2D& gr = f.grid;
    SpectralField2D out(gr, f.hermitian && g.hermitian);
    const auto fl = nonzero_entries(f);
    const double w = gr.dxi() * gr.dmu() / (2.0 * std::numbers::pi);
    const long n = long(gr.size());
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
    for (long idx = 0; idx < n; ++idx) {
        std::size_t i = std::size_t(idx) / gr.ny, k = std::size_t(idx) % gr.ny;
        out.coeffs[std::size_t(idx)] = w * convolution_at(gr, gr.jx(i), gr.jy(k), fl, g, eta);
    }
    return out;
}

template <bool Parallel>
cplx trilinear_impl(const SpectralField2D& f, const SpectralField2D& g, const SpectralField2D& h,
                    const BilinearSymbol& eta)
{
    require_same_grid(f.grid, g.grid, "trilinear_form");
    require_same_grid(f.grid, h.grid, "trilinear_form");
    const Grid2D& gr = f.grid;
    const auto fl = nonzero_entries(f);
    const auto hl = nonzero_entries(h);
    std::vector<cplx> partial(hl.size());
    const long n = long(hl.size());
#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
    for (long m = 0; m < n; ++m) {
        const Entry& e = hl[std::size_t(m)];
        partial[std::size_t(m)] = std::conj(e.c) * convolution_at(gr, e.j, e.k, fl, g, eta);
    }
    // fixed summation order keeps the result independent of the schedule
    cplx acc(0.0, 0.0);
    for (const cplx& c : partial) acc += c;
    const double w = gr.dxi() * gr.dmu();
    return acc * (w * w / (2.0 * std::numbers::pi));
}

}  // namespace

SpectralField2D pi_eta_apply(const SpectralField2D& f, const SpectralField2D& g, const BilinearSymbol& eta)
{
    return pi_eta_impl<true>(f, g, eta);
}

SpectralField2D pi_eta_apply_serial(const SpectralField2D& f, const SpectralField2D& g, const BilinearSymbol& eta)
{
    return pi_eta_impl<false>(f, g, eta);
}

cplx trilinear_form(const SpectralField2D& f, const SpectralField2D& g, const SpectralField2D& h,
                    const BilinearSymbol& eta)
{
    return trilinear_impl<true>(f, g, h, eta);
}

cplx trilinear_form_serial(const SpectralField2D& f, const SpectralField2D& g, const SpectralField2D& h,
                           const BilinearSymbol& eta)
{
    return trilinear_impl<false>(f, g, h, eta);
}

double real_pairing(const SpectralField2D& a, const SpectralField2D& b)
{
    return inner(b, a).real();
}

ShellEnergy modified_energy(const SpectralField2D& u, const SpectralField2D& v, Dyadic H,
                            const BilinearSymbol& eta, const DispersionParams& p)
{
    require_same_grid(u.grid, v.grid, "modified_energy");
    ShellEnergy e;
    SpectralField2D w = project(v, Projection::shell(H), p);
    double n = l2_norm(w);
    e.shell_l2sq = n * n;
    if (eta.tag == SymbolTag::zero) return e;
    SpectralField2D low = project(u, Projection::ll(H), p);
    e.correction = trilinear_form(low, v, w, eta).real() / H.value();
    return e;
}

double correction_bound_shape(const SpectralField2D& u, const SpectralField2D& v, Dyadic H,
                              const DispersionParams& p)
{
    const double h = H.value();
    double a = l2_norm(project(u, Projection::ll(H), p));
    double b = l2_norm(project(v, Projection::sim(H), p));
    double c = l2_norm(project(v, Projection::shell(H), p));
    return std::pow(h, -1.0 + 1.0 / (2.0 * p.alpha()) + 0.25) * a * b * c;
}

CoercivityReport coercivity_report(const std::vector<SpectralField2D>& u_traj,
                                   const std::vector<SpectralField2D>& v_traj, double s,
                                   const DispersionParams& p, bool same_solution, double floor)
{
    if (u_traj.empty() || u_traj.size() != v_traj.size())
        throw std::invalid_argument("coercivity_report needs aligned nonempty trajectories");
    CoercivityReport r;
    r.bs_norm_v = bs_norm_trajectory(v_traj, s, p);
    r.b0_norm_u = bs_norm_trajectory(u_traj, 0.0, p);
    const auto shells = resolved_shells(v_traj.front().grid, p);

    double p1 = l2_norm(project(v_traj.front(), Projection::shell(Dyadic::from_log2(0)), p));
    r.energy_sum = p1 * p1;
    r.min_ratio = INFINITY;
    r.max_ratio = -INFINITY;
    for (const Dyadic& H : shells) {
        if (H.log2() == 0) continue;
        BilinearSymbol eta = energy_symbol(H, p, same_solution);
        double sup = 0.0;
        for (std::size_t t = 0; t < v_traj.size(); ++t) {
            ShellEnergy e = modified_energy(u_traj[t], v_traj[t], H, eta, p);
            sup = std::max(sup, std::abs(e.value()));
            ShellRatio sr;
            sr.log2H = H.log2();
            sr.time_index = t;
            sr.shell_l2sq = e.shell_l2sq;
            sr.correction = e.correction;
            double total = l2_norm(v_traj[t]);
            if (e.shell_l2sq > floor * total * total) {
                sr.ratio = e.value() / e.shell_l2sq;
                r.min_ratio = std::min(r.min_ratio, sr.ratio);
                r.max_ratio = std::max(r.max_ratio, sr.ratio);
            } else {
                sr.ratio = std::nan("");
            }
            r.shells.push_back(sr);
        }
        r.energy_sum += std::pow(H.value(), 2.0 * s) * sup;
    }
    double bs2 = r.bs_norm_v * r.bs_norm_v;
    double denom = r.energy_sum + r.b0_norm_u * bs2;
    r.inferred_constant = denom > 0.0 ? bs2 / denom : 0.0;
    return r;
}

}  // namespace dlab
