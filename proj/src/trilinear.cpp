#include "dlab/trilinear.hpp"

#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dlab {

const char* to_string(TrilinearCase c)
{
    switch (c) {
    case TrilinearCase::c1: return "c1";
    case TrilinearCase::c2a: return "c2a";
    case TrilinearCase::c2b: return "c2b";
    case TrilinearCase::c3: return "c3";
    }
    return "?";
}

namespace {

std::array<double, 3> values(const std::array<Dyadic, 3>& d)
{
    return {d[0].value(), d[1].value(), d[2].value()};
}

std::array<double, 3> sorted(std::array<double, 3> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

Dyadic nearest_dyadic(double v) { return Dyadic::from_log2(int(std::lround(std::log2(v)))); }

double xi_extent(double H, const DispersionParams& p)
{
    return std::pow(2.0 * H / (p.alpha() + 1.0), 1.0 / p.alpha());
}

}  // namespace

void check_trilinear_hypotheses(TrilinearCase c, const TrilinearConfig& cfg)
{
    const auto H = values(cfg.H), L = values(cfg.L);
    const auto Hs = sorted(H), Ls = sorted(L);
    const double hmin = Hs[0], hmax = Hs[2], lmax = Ls[2];
    if (c == TrilinearCase::c2a || c == TrilinearCase::c2b) {
        if (!(8.0 * hmin <= hmax))
            throw std::invalid_argument("case " + std::string(to_string(c)) + " needs H_min <= H_max/8, got H_min = " +
                                        std::to_string(hmin) + ", H_max = " + std::to_string(hmax));
        bool paired = false;
        for (int i = 0; i < 3; ++i) paired = paired || (H[i] == hmin && L[i] == lmax);
        if (c == TrilinearCase::c2a && !paired)
            throw std::invalid_argument("case c2a needs one factor carrying both H_min and L_max");
        if (c == TrilinearCase::c2b && paired)
            throw std::invalid_argument("case c2b needs no factor carrying both H_min and L_max");
    }
    if (c == TrilinearCase::c3) {
        if (!(hmax <= 2.0 * hmin))
            throw std::invalid_argument("case c3 needs H_max <= 2 H_min, got H_min = " + std::to_string(hmin) +
                                        ", H_max = " + std::to_string(hmax));
        if (!cfg.N) throw std::invalid_argument("case c3 needs the x-frequencies N");
    }
}

double trilinear_bound(TrilinearCase c, const TrilinearConfig& cfg, const DispersionParams& p)
{
    check_trilinear_hypotheses(c, cfg);
    const auto Hs = sorted(values(cfg.H)), Ls = sorted(values(cfg.L));
    const double a = p.alpha();
    switch (c) {
    case TrilinearCase::c1: return std::pow(Hs[0], 1.0 / (2.0 * a) + 0.25) * std::sqrt(Ls[0]);
    case TrilinearCase::c2a: return std::pow(Hs[2], -0.5) * std::pow(Hs[0], 0.25) * std::sqrt(Ls[0] * Ls[2]);
    case TrilinearCase::c2b: return std::pow(Hs[2], -0.5) * std::pow(Hs[0], 0.25) * std::sqrt(Ls[0] * Ls[1]);
    case TrilinearCase::c3: {
        const auto Ns = sorted(values(*cfg.N));
        return std::pow(Ns[2], -a / 2.0) * std::pow(Hs[0], 0.25) * std::sqrt(Ls[1] * Ls[2]);
    }
    }
    return 0.0;
}

TriLattice fit_lattice(const TrilinearConfig& cfg, const DispersionParams& p, long n_half, int n_theta)
{
    if (n_half < 1 || n_theta < 1) throw std::invalid_argument("trilinear lattice needs n_half, n_theta >= 1");
    if ((2 * n_half + 1) * (2 * n_half + 1) * n_theta > 48 * 48 * 48)
        throw std::invalid_argument("trilinear lattice exceeds 48^3 points per function");
    double X = 0.0, Y = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double H = cfg.H[i].value();
        double x = xi_extent(H, p);
        if (cfg.N) x = std::min(x, 2.0 * (*cfg.N)[i].value());
        X = std::max(X, x);
        Y = std::max(Y, std::sqrt(2.0 * H));
    }
    TriLattice lat;
    lat.n_xi = lat.n_mu = n_half;
    lat.n_theta = n_theta;
    lat.dxi = X / double(n_half);
    lat.dmu = Y / double(n_half);
    return lat;
}

std::vector<std::pair<long, long>> lattice_support(const TriLattice& lat, Dyadic H, std::optional<Dyadic> N,
                                                   const DispersionParams& p)
{
    std::vector<std::pair<long, long>> s;
    const double h = H.value();
    for (long i = -lat.n_xi; i <= lat.n_xi; ++i) {
        const double xi = double(i) * lat.dxi;
        if (N && !(std::abs(xi) >= 0.5 * N->value() && std::abs(xi) <= 2.0 * N->value())) continue;
        for (long k = -lat.n_mu; k <= lat.n_mu; ++k) {
            const double v = eval_h(xi, double(k) * lat.dmu, p);
            if (v >= 0.5 * h && v <= 2.0 * h) s.emplace_back(i, k);
        }
    }
    return s;
}

ThetaFunction random_theta_function(const TriLattice& lat, const TrilinearConfig& cfg, int which,
                                    const DispersionParams& p, std::uint64_t seed, std::uint64_t stream)
{
    if (which < 0 || which > 2) throw std::invalid_argument("factor index must be 0, 1 or 2");
    ThetaFunction f;
    f.L = cfg.L[which].value();
    std::optional<Dyadic> N;
    if (cfg.N) N = (*cfg.N)[which];
    f.support = lattice_support(lat, cfg.H[which], N, p);
    if (f.support.empty())
        throw std::invalid_argument("factor " + std::to_string(which + 1) + " has no lattice points in its support");
    CounterRng rng(seed, stream);
    f.values.resize(f.support.size() * std::size_t(lat.n_theta));
    for (double& v : f.values) v = rng.uniform();
    return f;
}

double theta_norm(const TriLattice& lat, const ThetaFunction& f)
{
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * (2.0 * f.L / double(lat.n_theta)) * lat.dxi * lat.dmu);
}

namespace {

struct FormContext {
    const TriLattice& lat;
    const ThetaFunction &f1, &f2, &f3;
    const DispersionParams& p;
    std::vector<long> row3;  // lattice cell -> support row of f3, or -1
    long wx, wy;

    FormContext(const TriLattice& l, const ThetaFunction& a, const ThetaFunction& b, const ThetaFunction& c,
                const DispersionParams& pp)
        : lat(l), f1(a), f2(b), f3(c), p(pp), wx(2 * l.n_xi + 1), wy(2 * l.n_mu + 1)
    {
        for (const ThetaFunction* f : {&a, &b, &c})
            if (f->values.size() != f->support.size() * std::size_t(l.n_theta))
                throw std::invalid_argument("theta function does not match the lattice");
        row3.assign(std::size_t(wx * wy), -1);
        for (std::size_t r = 0; r < c.support.size(); ++r)
            row3[std::size_t((c.support[r].first + l.n_xi) * wy + c.support[r].second + l.n_mu)] = long(r);
    }

    double row_sum(std::size_t s1) const
    {
        const int nt = lat.n_theta;
        const double d1 = 2.0 * f1.L / nt, d2 = 2.0 * f2.L / nt, d3 = 2.0 * f3.L / nt;
        const auto [i1, k1] = f1.support[s1];
        const Zeta z1{double(i1) * lat.dxi, double(k1) * lat.dmu};
        const double* v1 = &f1.values[s1 * std::size_t(nt)];
        double acc = 0.0;
        for (std::size_t s2 = 0; s2 < f2.support.size(); ++s2) {
            const auto [i2, k2] = f2.support[s2];
            const long i3 = i1 + i2, k3 = k1 + k2;
            if (std::abs(i3) > lat.n_xi || std::abs(k3) > lat.n_mu) continue;
            const long r3 = row3[std::size_t((i3 + lat.n_xi) * wy + k3 + lat.n_mu)];
            if (r3 < 0) continue;
            const double om = eval_resonance(z1, {double(i2) * lat.dxi, double(k2) * lat.dmu}, p);
            if (std::abs(om) >= f1.L + f2.L + f3.L) continue;
            const double* v2 = &f2.values[s2 * std::size_t(nt)];
            const double* v3 = &f3.values[std::size_t(r3) * std::size_t(nt)];
            double pair = 0.0;
            for (int a = 0; a < nt; ++a) {
                const double t1 = -f1.L + (a + 0.5) * d1;
                double inner = 0.0;
                for (int b = 0; b < nt; ++b) {
                    const double s = t1 - f2.L + (b + 0.5) * d2 + om;
                    const double c = std::floor((s + f3.L) / d3);
                    if (c >= 0.0 && c < double(nt)) inner += v2[b] * v3[int(c)];
                }
                pair += v1[a] * inner;
            }
            acc += pair;
        }
        return acc * d1 * d2;
    }

    double weight() const { return lat.dxi * lat.dmu * lat.dxi * lat.dmu; }
};

}  // namespace

double trilinear_form(const TriLattice& lat, const ThetaFunction& f1, const ThetaFunction& f2,
                      const ThetaFunction& f3, const DispersionParams& p)
{
    const FormContext ctx(lat, f1, f2, f3, p);
    std::vector<double> partial(f1.support.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long s1 = 0; s1 < long(partial.size()); ++s1) partial[std::size_t(s1)] = ctx.row_sum(std::size_t(s1));
    double total = 0.0;
    for (double v : partial) total += v;
    return total * ctx.weight();
}

double trilinear_form_serial(const TriLattice& lat, const ThetaFunction& f1, const ThetaFunction& f2,
                             const ThetaFunction& f3, const DispersionParams& p)
{
    const FormContext ctx(lat, f1, f2, f3, p);
    double total = 0.0;
    for (std::size_t s1 = 0; s1 < f1.support.size(); ++s1) total += ctx.row_sum(s1);
    return total * ctx.weight();
}

namespace {

SweepPoint trilinear_point(TrilinearCase c, const TrilinearConfig& cfg, const DispersionParams& p, int trials,
                           std::uint64_t seed, std::uint64_t point, long n_half, int n_theta)
{
    if (trials < 1) throw std::invalid_argument("trilinear check needs trials >= 1");
    const double bound = trilinear_bound(c, cfg, p);
    const TriLattice lat = fit_lattice(cfg, p, n_half, n_theta);
    double best = 0.0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t base = (point << 40) | (std::uint64_t(t) << 2);
        ThetaFunction f1 = random_theta_function(lat, cfg, 0, p, seed, base | 0);
        ThetaFunction f2 = random_theta_function(lat, cfg, 1, p, seed, base | 1);
        ThetaFunction f3 = random_theta_function(lat, cfg, 2, p, seed, base | 2);
        const double I = trilinear_form(lat, f1, f2, f3, p);
        best = std::max(best, I / (theta_norm(lat, f1) * theta_norm(lat, f2) * theta_norm(lat, f3)));
    }
    SweepPoint pt;
    const auto H = values(cfg.H), L = values(cfg.L);
    const auto Hs = sorted(H);
    pt.params = {{"alpha", p.alpha()}, {"H1", H[0]}, {"H2", H[1]}, {"H3", H[2]}, {"L1", L[0]},
                 {"L2", L[1]},         {"L3", L[2]}, {"H_min", Hs[0]}};
    if (cfg.N) {
        const auto N = values(*cfg.N);
        pt.params.insert(pt.params.end(), {{"N1", N[0]}, {"N2", N[1]}, {"N3", N[2]}, {"N_max", sorted(N)[2]}});
    }
    pt.params.insert(pt.params.end(), {{"trials", double(trials)}, {"dxi", lat.dxi}, {"dmu", lat.dmu}});
    pt.measured = best;
    pt.bound = bound;
    pt.ratio = best / bound;
    return pt;
}

}  // namespace

SweepResult trilinear_scaling_sweep(const DispersionParams& p, const TrilinearSweepOptions& o)
{
    if (o.lambdas.size() < 2) throw std::invalid_argument("trilinear sweep needs >= 2 scales");
    check_trilinear_hypotheses(o.which, o.base);
    const double a = p.alpha();
    SweepResult r;
    r.name = std::string("trilinear_") + to_string(o.which);
    r.abscissa = "H_min";
    for (std::size_t n = 0; n < o.lambdas.size(); ++n) {
        const double lam = o.lambdas[n];
        TrilinearConfig cfg;
        for (int i = 0; i < 3; ++i) {
            cfg.H[i] = Dyadic::from_value(o.base.H[i].value() * lam);
            cfg.L[i] = nearest_dyadic(o.base.L[i].value() * std::pow(lam, 1.0 + 1.0 / a));
        }
        if (o.base.N) {
            std::array<Dyadic, 3> N;
            for (int i = 0; i < 3; ++i) N[i] = nearest_dyadic((*o.base.N)[i].value() * std::pow(lam, 1.0 / a));
            cfg.N = N;
        }
        r.points.push_back(trilinear_point(o.which, cfg, p, o.trials, o.seed, n, o.n_half, o.n_theta));
        r.points.back().params.push_back({"lambda", lam});
    }
    r.fit = r.refit("ratio");
    return r;
}

SweepResult trilinear_frequency_sweep(const DispersionParams& p, const TrilinearConfig& base,
                                      const std::vector<double>& Ns, int trials, std::uint64_t seed, long n_half,
                                      int n_theta)
{
    if (Ns.size() < 2) throw std::invalid_argument("frequency sweep needs >= 2 values");
    SweepResult r;
    r.name = "trilinear_c3_frequency";
    r.abscissa = "N_max";
    for (std::size_t n = 0; n < Ns.size(); ++n) {
        TrilinearConfig cfg = base;
        const Dyadic N = Dyadic::from_value(Ns[n]);
        cfg.N = std::array<Dyadic, 3>{N, N, Dyadic::from_log2(N.log2() + 1)};
        r.points.push_back(trilinear_point(TrilinearCase::c3, cfg, p, trials, seed, n, n_half, n_theta));
    }
    r.fit = r.refit("ratio");
    return r;
}

}  // namespace dlab
