#include "dlab/spectral.hpp"

#include "dlab/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace dlab {

double eval_omega(double xi, double mu, const DispersionParams& p)
{
    return xi * (std::pow(std::abs(xi), p.alpha()) + mu * mu);
}

double eval_h(double xi, double mu, const DispersionParams& p)
{
    return (p.alpha() + 1.0) * std::pow(std::abs(xi), p.alpha()) + mu * mu;
}

double eval_resonance(Zeta z1, Zeta z2, const DispersionParams& p)
{
    // summing the two single terms first makes the result exactly symmetric
    double single = eval_omega(z1.first, z1.second, p) + eval_omega(z2.first, z2.second, p);
    return eval_omega(z1.first + z2.first, z1.second + z2.second, p) - single;
}

double shell_symbol(double xi, double mu, const DispersionParams& p)
{
    return std::pow(std::abs(xi), p.alpha()) + mu * mu;
}

SpectralField2D apply_multiplier(const SpectralField2D& f,
                                 const std::function<cplx(double, double)>& m)
{
    const Grid2D& g = f.grid;
    SpectralField2D r(g, f.hermitian);
    for (std::size_t i = 0; i < g.nx; ++i) {
        double xi = g.xi(i);
        for (std::size_t k = 0; k < g.ny; ++k) r(i, k) = m(xi, g.mu(k)) * f(i, k);
    }
    return r;
}

SpectralField2D apply_real_multiplier(const SpectralField2D& f,
                                      const std::function<double(double, double)>& m)
{
    const Grid2D& g = f.grid;
    SpectralField2D r(g, f.hermitian);
    for (std::size_t i = 0; i < g.nx; ++i) {
        double xi = g.xi(i);
        for (std::size_t k = 0; k < g.ny; ++k) r(i, k) = m(xi, g.mu(k)) * f(i, k);
    }
    return r;
}

SpectralField2D propagate(const SpectralField2D& f, double t, const DispersionParams& p)
{
    if (t == 0.0) return f;
    return apply_multiplier(f, [&](double xi, double mu) {
        double ph = t * eval_omega(xi, mu, p);
        return cplx(std::cos(ph), std::sin(ph));
    });
}

SpectralField2D apply_x_multiplier(const SpectralField2D& f, XMultiplier kind, double order)
{
    const Grid2D& g = f.grid;
    if (kind == XMultiplier::frac_derivative) {
        if (!(order >= 0.0) || !std::isfinite(order))
            throw std::invalid_argument("fractional order must be finite and >= 0");
        if (order == 0.0) return f;
        return apply_real_multiplier(f, [&](double xi, double) { return std::pow(std::abs(xi), order); });
    }
    SpectralField2D r(g, f.hermitian);
    for (std::size_t i = 0; i < g.nx; ++i) {
        if (i == g.nx / 2) continue;
        cplx m(0.0, g.xi(i));
        for (std::size_t k = 0; k < g.ny; ++k) r(i, k) = m * f(i, k);
    }
    return r;
}

SpectralField2D apply_d_dy(const SpectralField2D& f)
{
    const Grid2D& g = f.grid;
    SpectralField2D r(g, f.hermitian);
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t k = 0; k < g.ny; ++k) {
            if (k == g.ny / 2) continue;
            r(i, k) = cplx(0.0, g.mu(k)) * f(i, k);
        }
    return r;
}

double mollifier_symbol(double xi, double mu, double lambda, const DispersionParams& p)
{
    return chi(std::pow(lambda, 1.0 / p.alpha()) * xi) * chi(std::sqrt(lambda) * mu);
}

SpectralField2D mollify(const SpectralField2D& f, double lambda, const DispersionParams& p)
{
    if (!(lambda > 0.0)) throw std::invalid_argument("mollifier scale must be positive");
    return apply_real_multiplier(f, [&](double xi, double mu) { return mollifier_symbol(xi, mu, lambda, p); });
}

SpectralField2D random_bandlimited(const Grid2D& g, double frac, CounterRng& rng)
{
    SpectralField2D f(g, true);
    const long jm = long(frac * double(g.nx / 2)), km = long(frac * double(g.ny / 2));
    for (long j = -jm; j <= jm; ++j)
        for (long k = -km; k <= km; ++k) {
            if (!g.in_range(j, k) || !g.in_range(-j, -k)) continue;
            if (j == -long(g.nx / 2) || k == -long(g.ny / 2)) continue;
            // visit each conjugate pair once: (j,k) > (-j,-k) lexicographically, or the origin
            if (j < 0 || (j == 0 && k < 0)) continue;
            double a = rng.normal(), b = rng.normal();
            if (j == 0 && k == 0) {
                f.coeffs[g.index_of(0, 0)] = cplx(a, 0.0);
                continue;
            }
            cplx c(a, b);
            f.coeffs[g.index_of(j, k)] = c;
            f.coeffs[g.index_of(-j, -k)] = std::conj(c);
        }
    double n = l2_norm(f);
    if (n > 0.0)
        for (auto& c : f.coeffs) c /= n;
    return f;
}

}  // namespace dlab
