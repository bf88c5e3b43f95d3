#include "dlab/littlewood_paley.hpp"

#include "dlab/cutoffs.hpp"
#include "dlab/fft.hpp"
#include "dlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dlab {

Dyadic Dyadic::from_log2(int k)
{
    if (k < 0) throw std::invalid_argument("dyadic exponent must be >= 0");
    Dyadic d;
    d.k_ = k;
    return d;
}

Dyadic Dyadic::from_value(double v)
{
    int e = 0;
    double m = std::frexp(v, &e);
    if (!(v >= 1.0) || m != 0.5) throw std::invalid_argument("not a dyadic number >= 1: " + std::to_string(v));
    return from_log2(e - 1);
}

Dyadic dyadic_floor(Dyadic H, double beta)
{
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
    // the tolerance absorbs products like (1/3)*3 landing just below an integer
    double e = beta * double(H.log2());
    return Dyadic::from_log2(int(std::floor(e + 1e-12)));
}

Projection Projection::nonresonant(double delta)
{
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("nonresonant delta must lie in (0,1)");
    return {Selector::nonresonant, 1.0, delta};
}

double projection_symbol(const Projection& pr, double xi, double mu, const DispersionParams& p)
{
    const double H = pr.H;
    switch (pr.sel) {
    case Selector::x_band:
        return varphi_N(xi, H);
    case Selector::shell:
        return varphi_N(shell_symbol(xi, mu, p), H);
    case Selector::shells_le:
        return chi(shell_symbol(xi, mu, p) / H);
    case Selector::shells_ll:
        return H >= 8.0 ? chi(shell_symbol(xi, mu, p) / (H / 8.0)) : 0.0;
    case Selector::shells_sim: {
        double X = shell_symbol(xi, mu, p);
        return chi(X / (4.0 * H)) - (H >= 8.0 ? chi(X / (H / 8.0)) : 0.0);
    }
    case Selector::shells_gg:
        return 1.0 - chi(shell_symbol(xi, mu, p) / (4.0 * H));
    case Selector::nonresonant:
        if (xi == 0.0) return mu != 0.0 ? 1.0 : 0.0;
        return rho_delta(p.B() - mu * mu / std::pow(std::abs(xi), p.alpha()), pr.delta);
    }
    return 0.0;
}

SpectralField2D project(const SpectralField2D& f, const Projection& pr, const DispersionParams& p)
{
    return apply_real_multiplier(f, [&](double xi, double mu) { return projection_symbol(pr, xi, mu, p); });
}

double es_norm(const SpectralField2D& f, double s, const DispersionParams& p, SobolevWeight w)
{
    const Grid2D& g = f.grid;
    double acc = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i) {
        double xi = g.xi(i);
        for (std::size_t k = 0; k < g.ny; ++k) {
            double a = std::norm(f(i, k));
            if (a == 0.0) continue;
            if (s != 0.0) {
                double X = w == SobolevWeight::shell ? shell_symbol(xi, g.mu(k), p) : eval_h(xi, g.mu(k), p);
                a *= std::pow(1.0 + X * X, s);
            }
            acc += a;
        }
    }
    return std::sqrt(acc * g.dxi() * g.dmu());
}

Conserved conserved_quantities(const SpectralField2D& uh, const DispersionParams& p)
{
    const Grid2D& g = uh.grid;
    Conserved c;
    double quad = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i) {
        double xa = std::pow(std::abs(g.xi(i)), p.alpha());
        for (std::size_t k = 0; k < g.ny; ++k) {
            double a = std::norm(uh(i, k));
            double mu = g.mu(k);
            mass += a;
            quad += (xa + mu * mu) * a;
        }
    }
    const double w = g.dxi() * g.dmu();
    RealField2D u = inverse_transform(uh);
    double cubic = 0.0;
    for (double v : u.values) cubic += v * v * v;
    c.M = mass * w;
    c.H = quad * w + cubic * g.dx() * g.dy() / 3.0;
    return c;
}

Conserved conserved_quantities(const RealField2D& u, const DispersionParams& p)
{
    Conserved c = conserved_quantities(transform(u), p);
    // mass straight from the samples avoids one transform round trip
    double m = 0.0;
    for (double v : u.values) m += v * v;
    c.M = m * u.grid.dx() * u.grid.dy();
    return c;
}

double lp_norm(const RealField2D& u, double pexp)
{
    if (std::isinf(pexp)) {
        double m = 0.0;
        for (double v : u.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(pexp >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be >= 1");
    double acc = 0.0;
    for (double v : u.values) acc += std::pow(std::abs(v), pexp);
    return std::pow(acc * u.grid.dx() * u.grid.dy(), 1.0 / pexp);
}

double mixed_norm_from_spatial(const std::vector<double>& spatial, double dt, double q)
{
    if (spatial.empty()) throw std::invalid_argument("mixed norm of an empty trajectory");
    if (spatial.size() == 1) return spatial[0];
    if (std::isinf(q)) return *std::max_element(spatial.begin(), spatial.end());
    double acc = 0.0;
    for (std::size_t n = 0; n < spatial.size(); ++n) {
        double w = (n == 0 || n + 1 == spatial.size()) ? 0.5 * dt : dt;
        acc += w * std::pow(spatial[n], q);
    }
    return std::pow(acc, 1.0 / q);
}

double mixed_norm(const std::vector<RealField2D>& traj, double dt, double q, double pexp)
{
    if (traj.empty()) throw std::invalid_argument("mixed norm of an empty trajectory");
    std::vector<double> sp;
    sp.reserve(traj.size());
    for (const auto& u : traj) sp.push_back(lp_norm(u, pexp));
    return mixed_norm_from_spatial(sp, dt, q);
}

std::vector<Dyadic> resolved_shells(const Grid2D& g, const DispersionParams& p)
{
    double xmax = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t k = 0; k < g.ny; ++k) xmax = std::max(xmax, shell_symbol(g.xi(i), g.mu(k), p));
    std::vector<Dyadic> out;
    for (int k = 0;; ++k) {
        Dyadic H = Dyadic::from_log2(k);
        if (k > 0 && H.value() * 2.0 / 3.0 >= xmax) break;
        out.push_back(H);
    }
    return out;
}

double bs_norm_trajectory(const std::vector<SpectralField2D>& traj, double s, const DispersionParams& p)
{
    if (traj.empty()) throw std::invalid_argument("B^s norm of an empty trajectory");
    const auto shells = resolved_shells(traj.front().grid, p);
    double total = 0.0;
    for (const Dyadic& H : shells) {
        auto pr = Projection::shell(H);
        if (H.log2() == 0) {
            double n = l2_norm(project(traj.front(), pr, p));
            total += n * n;
            continue;
        }
        double best = 0.0;
        for (const auto& f : traj) best = std::max(best, l2_norm(project(f, pr, p)));
        total += std::pow(H.value(), 2.0 * s) * best * best;
    }
    return std::sqrt(total);
}

}  // namespace dlab
