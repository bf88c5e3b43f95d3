#pragma once

#include "dlab/grid.hpp"
#include "dlab/params.hpp"
#include "dlab/rng.hpp"

#include <functional>
#include <utility>

namespace dlab {

using Zeta = std::pair<double, double>;  // (xi, mu)

// omega(xi,mu) = xi (|xi|^alpha + mu^2)
double eval_omega(double xi, double mu, const DispersionParams& p);
// h = d omega / d xi = (alpha+1)|xi|^alpha + mu^2
double eval_h(double xi, double mu, const DispersionParams& p);
// Omega(z1,z2) = omega(z1+z2) - omega(z1) - omega(z2)
double eval_resonance(Zeta z1, Zeta z2, const DispersionParams& p);
// |xi|^alpha + mu^2, the quantity the dyadic shells are built on
double shell_symbol(double xi, double mu, const DispersionParams& p);

// coeffs(xi,mu) *= m(xi,mu)
SpectralField2D apply_multiplier(const SpectralField2D& f,
                                 const std::function<cplx(double, double)>& m);
SpectralField2D apply_real_multiplier(const SpectralField2D& f,
                                      const std::function<double(double, double)>& m);

// exact linear flow: coeffs *= e^{i t omega}
SpectralField2D propagate(const SpectralField2D& f, double t, const DispersionParams& p);

enum class XMultiplier { frac_derivative, d_dx };
// frac_derivative multiplies by |xi|^order, d_dx by i xi (zero on the Nyquist column)
SpectralField2D apply_x_multiplier(const SpectralField2D& f, XMultiplier kind, double order = 0.0);
// i mu, zero on the Nyquist row
SpectralField2D apply_d_dy(const SpectralField2D& f);

// smooth low-pass chi(lambda^{1/alpha} xi) chi(lambda^{1/2} mu)
double mollifier_symbol(double xi, double mu, double lambda, const DispersionParams& p);
SpectralField2D mollify(const SpectralField2D& f, double lambda, const DispersionParams& p);

// Random real field: Gaussian coefficients on |j| <= frac*nx/2, |k| <= frac*ny/2,
// hermitian-symmetrized, Nyquist lines empty, scaled to unit L^2 norm.
SpectralField2D random_bandlimited(const Grid2D& g, double frac, CounterRng& rng);

}  // namespace dlab
