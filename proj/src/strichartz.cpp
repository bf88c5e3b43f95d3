#include "dlab/strichartz.hpp"

#include "dlab/cutoffs.hpp"
#include "dlab/fft.hpp"
#include "dlab/littlewood_paley.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double reciprocal(double r) { return r > 0.0 ? 1.0 / r : kInf; }

// C-infinity bump on (lo, hi), 1 at the midpoint
double bump(double s, double lo, double hi)
{
    double u = (2.0 * s - lo - hi) / (hi - lo);
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

}  // namespace

StrichartzExponents strichartz_exponents(StrichartzMode mode, const DispersionParams& p, double theta, double epsilon)
{
    const double a = p.alpha();
    StrichartzExponents e;
    if (mode == StrichartzMode::localized) {
        if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("localized theta must lie in [0,1)");
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
        e.q = reciprocal(theta * (1.0 - epsilon) / 2.0);
        e.bound_exponent = theta * (epsilon * (a + 1.0) - a / 4.0);
    } else {
        if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("global theta must lie in [0,1]");
        e.q = reciprocal(5.0 * theta / 12.0);
        e.bound_exponent = -(theta / 6.0) * (a - 0.5);
    }
    e.p = reciprocal((1.0 - theta) / 2.0);
    return e;
}

double l4_theta(double epsilon) { return 1.0 / (2.0 - epsilon); }

SweepResult strichartz_sweep(const DispersionParams& p, const StrichartzOptions& o)
{
    if (o.Ns.empty()) throw std::invalid_argument("strichartz sweep needs at least one N");
    if (o.trials < 1 || o.samples < 2) throw std::invalid_argument("strichartz sweep needs trials >= 1, samples >= 2");
    if (!(o.delta > 0.0 && o.delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    const StrichartzExponents ex = strichartz_exponents(o.mode, p, o.theta, o.epsilon);
    const double a = p.alpha(), B = p.B();
    const bool localized = o.mode == StrichartzMode::localized;

    // scaled lattice: xi Nyquist 2, mu Nyquist 4
    const double lx1 = double(o.nx) * std::numbers::pi / 2.0;
    const double ly1 = double(o.ny) * std::numbers::pi / 4.0;

    SweepResult r;
    r.name = localized ? "strichartz_localized" : "strichartz_global";
    r.abscissa = "N";
    for (std::size_t ni = 0; ni < o.Ns.size(); ++ni) {
        const double N = o.Ns[ni];
        if (!(N >= 1.0)) throw std::invalid_argument("strichartz sweep needs N >= 1");
        const double ymu = std::pow(N, a / 2.0);
        const Grid2D g(o.nx, o.ny, lx1 / N, ly1 / ymu);
        const double tscale = std::pow(N, -(a + 1.0));
        const double dt = 2.0 * o.window * tscale / double(o.samples - 1);
        const double x0 = 0.5 * g.lx, y0 = 0.5 * g.ly;

        auto data_weight = [&](double xi, double mu) {
            double w = bump(std::abs(xi) / N, 5.0 / 6.0, 4.0 / 3.0) * chi(mu / (2.0 * ymu));
            if (localized && w > 0.0) w *= rho_delta(B - mu * mu / std::pow(std::abs(xi), a), 2.0 * o.delta);
            return w;
        };
        auto chain = [&](double xi, double mu) {
            double m = varphi_N(xi, N);
            if (localized)
                m *= projection_symbol(Projection::nonresonant(o.delta), xi, mu, p);
            return m;
        };

        double best = 0.0;
        for (int tr = 0; tr < o.trials; ++tr) {
            CounterRng rng(o.seed, (std::uint64_t(ni) << 32) | std::uint64_t(tr));
            SpectralField2D phi(g);
            for (std::size_t i = 0; i < g.nx; ++i) {
                const long j = g.jx(i);
                if (j <= 0 || 2 * j >= long(g.nx)) continue;
                for (std::size_t k = 0; k < g.ny; ++k) {
                    const long kk = g.jy(k);
                    if (2 * kk == -long(g.ny)) continue;
                    const double xi = g.xi(i), mu = g.mu(k);
                    const double w = data_weight(xi, mu);
                    if (w == 0.0) continue;
                    // coherent packet at the box centre plus a random perturbation
                    cplx z(rng.normal(), rng.normal());
                    cplx c = w * (1.0 + 0.5 * z) * std::polar(1.0, -(xi * x0 + mu * y0));
                    phi(i, k) = c;
                    phi.coeffs[g.index_of(-j, -kk)] = std::conj(c);
                }
            }
            const double nrm = l2_norm(phi);
            if (nrm == 0.0) throw std::invalid_argument("strichartz data support misses the lattice");
            for (cplx& c : phi.coeffs) c /= nrm;
            const SpectralField2D pphi = apply_real_multiplier(phi, chain);

            std::vector<double> spatial(std::size_t(o.samples));
            for (int s = 0; s < o.samples; ++s) {
                const double t = -o.window * tscale + dt * double(s);
                spatial[std::size_t(s)] = lp_norm(inverse_transform(propagate(pphi, t, p)), ex.p);
            }
            best = std::max(best, mixed_norm_from_spatial(spatial, dt, ex.q));
        }
        SweepPoint pt;
        pt.params = {{"alpha", a},       {"theta", o.theta}, {"epsilon", o.epsilon}, {"delta", o.delta},
                     {"N", N},           {"q", ex.q},        {"p", ex.p},            {"trials", double(o.trials)},
                     {"window", o.window * tscale}};
        pt.measured = best;
        pt.bound = std::pow(N, ex.bound_exponent);
        pt.ratio = pt.measured / pt.bound;
        r.points.push_back(pt);
    }
    r.fit = r.refit("measured");
    return r;
}

}  // namespace dlab
