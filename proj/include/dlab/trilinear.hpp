#pragma once

#include "dlab/littlewood_paley.hpp"
#include "dlab/params.hpp"
#include "dlab/sweep.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace dlab {

enum class TrilinearCase { c1, c2a, c2b, c3 };

const char* to_string(TrilinearCase c);

// Dyadic data of the three factors. Factor i lives on
// D_i = {(tau, zeta): h(zeta) in [H_i/2, 2H_i], |tau + omega(zeta)| <= L_i} and, when N is
// given, |xi| in [N_i/2, 2N_i].
struct TrilinearConfig {
    std::array<Dyadic, 3> H, L;
    std::optional<std::array<Dyadic, 3>> N;
};

// Throws std::invalid_argument naming the violated side condition:
// c2a/c2b need H_min <= H_max/8, c2a needs (H_min, L_max) on one factor and c2b on none,
// c3 needs H_max <= 2 H_min and N.
void check_trilinear_hypotheses(TrilinearCase c, const TrilinearConfig& cfg);

// Claimed bound of int (f1 * f2) f3 / prod ||f_i||; the H^{1/4+} loss of case c3 is taken as H^{1/4}.
double trilinear_bound(TrilinearCase c, const TrilinearConfig& cfg, const DispersionParams& p);

// Functions are stored in the co-moving frame f(theta, zeta) = F(theta - omega(zeta), zeta),
// piecewise constant on n_theta cells of [-L, L] and sampled on a shared zeta lattice
// zeta = (i dxi, k dmu), |i| <= n_xi, |k| <= n_mu.
struct TriLattice {
    double dxi = 1.0, dmu = 1.0;
    long n_xi = 23, n_mu = 23;
    int n_theta = 12;
};

struct ThetaFunction {
    double L = 1.0;
    std::vector<std::pair<long, long>> support;  // lattice indices (i, k)
    std::vector<double> values;                  // support.size() x n_theta, theta fastest
};

// Lattice covering the bounding box of the three supports.
TriLattice fit_lattice(const TrilinearConfig& cfg, const DispersionParams& p, long n_half = 23, int n_theta = 12);

std::vector<std::pair<long, long>> lattice_support(const TriLattice& lat, Dyadic H, std::optional<Dyadic> N,
                                                   const DispersionParams& p);

// Nonnegative i.i.d. uniform cell values on the support of factor `which`.
ThetaFunction random_theta_function(const TriLattice& lat, const TrilinearConfig& cfg, int which,
                                    const DispersionParams& p, std::uint64_t seed, std::uint64_t stream);

double theta_norm(const TriLattice& lat, const ThetaFunction& f);

// sum over lattice pairs and theta midpoints of f1 f2 f3(theta1 + theta2 + Omega, zeta1 + zeta2),
// weighted by dtheta1 dtheta2 dxi^2 dmu^2; partial sums per zeta1 are combined in index order,
// so the value does not depend on the thread count
double trilinear_form(const TriLattice& lat, const ThetaFunction& f1, const ThetaFunction& f2,
                      const ThetaFunction& f3, const DispersionParams& p);
double trilinear_form_serial(const TriLattice& lat, const ThetaFunction& f1, const ThetaFunction& f2,
                             const ThetaFunction& f3, const DispersionParams& p);

struct TrilinearSweepOptions {
    TrilinearCase which = TrilinearCase::c1;
    TrilinearConfig base;
    std::vector<double> lambdas{1, 2, 4, 8, 16};  // H -> lambda H, N -> lambda^{1/alpha} N, L -> lambda^{1+1/alpha} L
    int trials = 16;
    std::uint64_t seed = 1;
    long n_half = 23;
    int n_theta = 12;
};

// Along the scaling direction of the equation every bound has the exponent of the integral,
// so the normalized ratio should show no trend. Measured is the max over trials of
// int (f1 * f2) f3 / prod ||f_i||; the fit is ratio against H_min.
SweepResult trilinear_scaling_sweep(const DispersionParams& p, const TrilinearSweepOptions& o);

// Case c3 at fixed H and L with N = (N, N, 2N) over `Ns`; the fit is ratio against N_max.
SweepResult trilinear_frequency_sweep(const DispersionParams& p, const TrilinearConfig& base,
                                      const std::vector<double>& Ns, int trials, std::uint64_t seed,
                                      long n_half = 23, int n_theta = 12);

}  // namespace dlab
