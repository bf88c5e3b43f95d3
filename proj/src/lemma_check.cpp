#include "dlab/lemma_check.hpp"

#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dlab {

LemmaConstants lemma_constants(double delta, const DispersionParams& p)
{
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    const double a = p.alpha(), B = p.B();
    LemmaConstants c;
    c.g = (a + 1.0 + B + delta) / (a + 1.0 + B - delta);
    c.f1 = B + delta - (B - delta) / std::sqrt(c.g);
    c.f2 = std::pow(std::pow(c.g, 1.0 / a) - 1.0, a);
    c.f3 = c.g - 1.0;
    return c;
}

namespace {

struct Sides {
    double lhs, rhs;
};

Sides evaluate(Zeta z1, Zeta z2, double f, const DispersionParams& p)
{
    double h1 = eval_h(z1.first, z1.second, p), h2 = eval_h(z2.first, z2.second, p);
    double h12 = eval_h(z1.first + z2.first, z1.second + z2.second, p);
    return {h12, std::abs(h1 - h2) + f * std::max(h1, h2)};
}

}  // namespace

LemmaReport lemma_tech_check(double delta, const DispersionParams& p, std::uint64_t samples, std::uint64_t seed,
                             LemmaSampling mode)
{
    if (samples == 0) throw std::invalid_argument("lemma check needs at least one sample");
    LemmaReport r;
    r.alpha = p.alpha();
    r.delta = delta;
    r.c = lemma_constants(delta, p);
    const double f = r.c.f();
    const double a = p.alpha(), B = p.B();
    const double lo = std::log(1e-2), hi = std::log(1e4);
    CounterRng rng(seed, mode == LemmaSampling::independent ? 1 : 2);

    auto band_mu = [&](double xi_abs) {
        double w = std::pow(xi_abs, a);
        return std::sqrt(rng.uniform((B - delta) * w, (B + delta) * w));
    };
    for (std::uint64_t n = 0; n < samples; ++n) {
        double x1 = std::exp(rng.uniform(lo, hi));
        double x2 = mode == LemmaSampling::independent ? std::exp(rng.uniform(lo, hi))
                                                       : x1 * std::exp(rng.uniform(-0.5, 0.5));
        double m1 = band_mu(x1), m2 = band_mu(x2);
        double sx = rng.uniform() < 0.5 ? 1.0 : -1.0;
        double sm = rng.uniform() < 0.5 ? 1.0 : -1.0;
        Zeta z1{sx * x1, sm * m1}, z2{-sx * x2, -sm * m2};
        Sides s = evaluate(z1, z2, f, p);
        Sides m = evaluate({-z1.first, -z1.second}, {-z2.first, -z2.second}, f, p);
        if (m.lhs != s.lhs || m.rhs != s.rhs) ++r.mirror_mismatches;
        if (s.lhs > s.rhs * (1.0 + 1e-12)) ++r.violations;
        r.max_slack = std::max(r.max_slack, s.lhs / s.rhs);
        ++r.samples;
    }
    return r;
}

}  // namespace dlab
