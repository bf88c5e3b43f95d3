#pragma once

#include "dlab/params.hpp"
#include "dlab/sweep.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dlab {

struct MollifierOptions {
    double s = 0.5;
    double delta = 0.25;
    std::vector<double> lambdas{1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
    int trials = 4;
    std::uint64_t seed = 1;
    std::size_t n = 256;  // lattice points per direction
    double decay = 0.2;   // E^s energy of the dyadic shell H falls like H^{-decay}
};

struct MollifierReport {
    // measured: max over trials of ||phi_lambda||_{E^{s+delta}} / ||phi||_{E^s}, bound lambda^{-delta}
    SweepResult gain;
    // measured: max over trials of ||phi_lambda - phi||_{E^{s-delta}} / ||phi||_{E^s}, bound lambda^delta
    SweepResult defect;
    bool defect_ratio_decreasing = false;  // defect ratio strictly decreases as lambda decreases
};

// Random data whose E^s energy per dyadic shell decays like H^{-decay}. The lattice is sized so that the
// mollifier cutoff at the smallest lambda sits inside the frequency range in both directions.
MollifierReport mollifier_check(const DispersionParams& p, const MollifierOptions& o = {});

}  // namespace dlab
