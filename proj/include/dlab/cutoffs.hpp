#pragma once

namespace dlab {

// Smooth step built from e^{-1/x}: equals 1 for t <= 0, 0 for t >= 1.
double smooth_step_down(double t);
double smooth_step_down_deriv(double t);

// chi: 1 on [-4/3,4/3], 0 outside (-5/3,5/3)
double chi(double x);
double chi_deriv(double x);

// varphi(x) = chi(x) - chi(2x), supported in 2/3 < |x| < 5/3, equal to 1 on [5/6, 4/3]
double varphi(double x);
double varphi_deriv(double x);

// dyadic pieces: N = 1 gives chi, N >= 2 gives varphi(x/N)
double varphi_N(double x, double N);

// rho: 0 on [-1/2,1/2], 1 for |x| >= 1; rho_delta(x) = rho(x/delta)
double rho(double x);
double rho_delta(double x, double delta);

// max |varphi'| (sampled once, cached)
double varphi_deriv_max();

}  // namespace dlab
