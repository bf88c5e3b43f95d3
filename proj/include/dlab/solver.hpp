#pragma once

#include "dlab/grid.hpp"
#include "dlab/params.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace dlab {

struct SimConfig {
    Grid2D grid;
    DispersionParams p;
    double dt = 1e-3;
    double t_end = 1.0;
    SpectralField2D initial;
    bool dealias = true;
    bool nonlinear = true;
    // +1 integrates forward; -1 runs the same equation backwards in time
    int direction = 1;
    int monitor_stride = 100;
    bool store_states = true;
    std::vector<double> monitor_s;  // empty means {0, 1/2, s_alpha + 0.05}
};

struct MonitorRow {
    double t = 0.0;
    double M = 0.0;
    double H = 0.0;
    std::vector<double> es;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField2D> states;
    std::vector<MonitorRow> monitors;
    std::vector<double> monitor_s;
};

class SimulationAborted : public std::runtime_error {
public:
    SimulationAborted(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time(last_valid_time) {}
    double last_valid_time;
};

// zero every coefficient with |j| > nx/3 or |k| > ny/3
SpectralField2D dealias(const SpectralField2D& f);
bool in_dealiased_box(const Grid2D& g, long j, long k);

// max |omega| over the retained lattice
double max_retained_omega(const Grid2D& g, const DispersionParams& p, bool dealiased = true);

// throws std::invalid_argument naming the violated condition
void validate(const SimConfig& cfg);

Trajectory simulate(const SimConfig& cfg);

// Named initial data. "gaussian": amplitude * exp(-r^2/width^2) centred in the box;
// "random": random band-limited field with Gaussian spectral envelope of the given
// width (in frequency units), scaled so its sup norm equals amplitude.
SpectralField2D make_initial(const std::string& preset, const Grid2D& g, double amplitude, double width,
                             std::uint64_t seed);

struct ScalingReport {
    double lambda = 1.0;
    double discrepancy = 0.0;  // relative L2 at matched final time
    std::vector<double> s_values;
    std::vector<double> norm_ratio;      // ||u_lambda(0)||_{E^s} / ||u(0)||_{E^s}
    std::vector<double> bound;           // lambda^{3/4 - 1/(2 alpha)} (1 + lambda^s)
    double scaling_factor = 1.0;         // lambda^{3/4 - 1/(2 alpha)}
};

// Runs cfg and its rescaled copy (box lambda^{-1/alpha} lx x lambda^{-1/2} ly,
// step lambda^{-(1+1/alpha)} dt, data lambda u0 at the same lattice indices).
ScalingReport scaled_solution_check(const SimConfig& cfg, double lambda, const std::vector<double>& s_values);

}  // namespace dlab
