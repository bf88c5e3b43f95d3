#pragma once

#include "dlab/littlewood_paley.hpp"
#include "dlab/params.hpp"
#include "dlab/sweep.hpp"

#include <vector>

namespace dlab {

// The kernel I_t(x,y) = int e^{i(t omega + x xi + y mu)} varphi_N(xi) rho_delta(B - mu^2/|xi|^alpha)
// obeys sup|I_t^N| = N^{1+alpha/2} S(N^{alpha+1} t), where S(tau) = sup|I_tau^1|.
// S is computed on the positive half band (I = 2 Re I^+) with a smooth
// truncation chi(mu/M) far outside the searched window, trapezoid sums on
// uniform lattices, FFTs in both directions and a parabolic peak refinement.
struct KernelQuadrature {
    double refine = 1.0;    // divides the xi and mu quadrature steps
    double m_scale = 1.0;   // widens the mu truncation
};

struct KernelSup {
    double tau = 0.0;
    double sup = 0.0;       // S(tau)
    double x = 0.0, y = 0.0;
    double area = 0.0;      // sum of |multiplier| over the truncated lattice
    std::size_t n_xi = 0, n_mu = 0;
};

KernelSup kernel_sup_normalized(double tau, const DispersionParams& p, double delta,
                                const KernelQuadrature& q = {});
// same, remembering results for repeated (tau, alpha, delta, quadrature)
KernelSup kernel_sup_cached(double tau, const DispersionParams& p, double delta, const KernelQuadrature& q = {});

// direct double sum at one point, same lattice and truncation as the FFT path
double kernel_value_normalized(double tau, double x, double y, const DispersionParams& p, double delta,
                               const KernelQuadrature& q = {});

// sup|I_t^N| in physical units
double kernel_sup(double N, double t, const DispersionParams& p, double delta, const KernelQuadrature& q = {});

struct KernelSweepOptions {
    double delta = 0.9;
    double doubling_tolerance = 0.01;
    // doubling checks run at the first point and at the last point with tau below this limit
    double doubling_tau_limit = 1e300;
};

// sweep over t at fixed N; bound N^{-alpha/2} t^{-1}; fit against t
SweepResult kernel_decay_t_sweep(double N, const std::vector<double>& times, const DispersionParams& p,
                                 const KernelSweepOptions& o = {});
// sweep over N at fixed t; fit against N
SweepResult kernel_decay_n_sweep(const std::vector<double>& Ns, double t, const DispersionParams& p,
                                 const KernelSweepOptions& o = {});
// times below N^{-(alpha+1)}; bound N^{1/2} t^{-1/2}; ratio is the recorded constant C
SweepResult kernel_small_time_sweep(double N, const std::vector<double>& times, const DispersionParams& p,
                                    const KernelSweepOptions& o = {});

// relative change of S(tau) when every step is halved and the truncation widened
double kernel_doubling_change(double tau, const DispersionParams& p, double delta);

}  // namespace dlab
