#pragma once

#include "dlab/params.hpp"
#include "dlab/sweep.hpp"

#include <cstdint>
#include <vector>

namespace dlab {

enum class StrichartzMode { localized, global };

// Exponents of the mixed norm L^q_t L^p_xy: localized 1/q = theta(1-eps)/2,
// global 1/q = 5 theta/12; both 1/p = (1-theta)/2. Infinity when the reciprocal is 0.
struct StrichartzExponents {
    double q = 0.0, p = 0.0;
    double bound_exponent = 0.0;  // claimed N-power of the estimate
};
StrichartzExponents strichartz_exponents(StrichartzMode mode, const DispersionParams& p, double theta, double epsilon);

// The L^4 point of the localized estimate, theta = 1/(2-eps).
double l4_theta(double epsilon);

// Each N uses the box (lx/N, ly/N^{alpha/2}) and the window |t| <= window N^{-(alpha+1)},
// sampled at `samples` points, so every N sees the same number of lattice modes and
// the same dispersive time in scaled units. Data are random wave packets with xi/N in
// the plateau [5/6, 4/3] of varphi (and, for the localized mode, rho_{2 delta} = 1 away
// from the resonant band), so the projection chain acts on them as the identity.
struct StrichartzOptions {
    StrichartzMode mode = StrichartzMode::localized;
    double theta = 0.5;
    double epsilon = 0.05;
    double delta = 0.5;
    std::vector<double> Ns{8, 16, 32, 64, 128, 256};
    int trials = 32;
    std::uint64_t seed = 1;
    double window = 2.0;
    int samples = 129;
    std::size_t nx = 64, ny = 128;
};

// Per N the measured value is the max over trials of ||P U(t) phi||_{L^q L^p} / ||phi||_{L^2};
// the fit is against N.
SweepResult strichartz_sweep(const DispersionParams& p, const StrichartzOptions& o);

}  // namespace dlab
