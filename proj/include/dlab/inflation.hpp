#pragma once

#include "dlab/grid.hpp"
#include "dlab/params.hpp"
#include "dlab/sweep.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace dlab {

struct FrequencyBox {
    double xi_lo = 0.0, xi_hi = 1.0, mu_lo = 0.0, mu_hi = 1.0;

    // throws unless lo < hi in both coordinates and all ends are finite
    static FrequencyBox make(double xi_lo, double xi_hi, double mu_lo, double mu_hi);
    double area() const { return (xi_hi - xi_lo) * (mu_hi - mu_lo); }
    bool contains(double xi, double mu) const
    {
        return xi >= xi_lo && xi <= xi_hi && mu >= mu_lo && mu <= mu_hi;
    }
    FrequencyBox reflected() const { return {-xi_hi, -xi_lo, -mu_hi, -mu_lo}; }
};

class IllposedParams {
public:
    // gamma = N^{-(alpha+delta)} is derived; throws unless N >= 2, epsilon in (0,1), delta > 0
    IllposedParams(double N, double epsilon, double delta, double s, const DispersionParams& p);

    double N() const { return N_; }
    double epsilon() const { return epsilon_; }
    double delta() const { return delta_; }
    double s() const { return s_; }
    const DispersionParams& p() const { return p_; }
    double gamma() const { return gamma_; }
    // gamma N^alpha, the nominal size of the low-high resonance
    double phase_scale() const;

private:
    double N_, epsilon_, delta_, s_;
    DispersionParams p_;
    double gamma_;
};

// The data is a sum of constant amplitudes on four boxes:
// Q1+ = [g/2, g] x [g^e, 2g^e], Q2+ = [N, N+g] x [-g^e, -g^e/2], Q1- = -Q1+, Q2- = -Q2+,
// with amplitude g^{-(1+e)/2} on Q1 and g^{-(1+e)/2} N^{-alpha s} on Q2.
struct BoxSpectrum {
    std::array<FrequencyBox, 4> boxes;  // Q1+, Q1-, Q2+, Q2-
    std::array<double, 4> amplitude{};

    // integral of <w>^{2 sigma} |f|^2 with w = |xi|^alpha + mu^2, by Gauss panels on each box
    double es_norm_sq(double sigma, const DispersionParams& p, int panels = 4) const;
    double l2_norm_sq(int panels = 4) const { return es_norm_sq(0.0, DispersionParams(1.0), panels); }
};

BoxSpectrum illposed_data(const IllposedParams& ip);
// 2 g^{-(1+e)} (|Q1| + N^{-2 alpha s} |Q2|)
double illposed_l2_sq_closed_form(const IllposedParams& ip);

// Samples the box indicators on a lattice. Throws unless the spacing is at most g/8 in xi and
// g^e/8 in mu and every box lies inside the lattice range.
SpectralField2D illposed_data_on_grid(const IllposedParams& ip, const Grid2D& g);

struct PicardOptions {
    int nodes = 8;                 // Gauss points per panel
    double phase_per_panel = 2.0;  // max phase change of t Omega across one panel
    int refine = 1;                // panel-count multiplier in all four directions
    bool doubling_check = true;    // rerun with refine doubled and compare
    double tolerance = 0.01;       // allowed relative change under doubling
};

struct OutputNode {
    double xi = 0.0, mu = 0.0, weight = 0.0;
    cplx value;  // F(I_N)(t, zeta)
};

struct PicardResult {
    std::vector<OutputNode> field;
    double es_norm = 0.0;           // ||I_N(t)||_{E^s}
    double es_norm_refined = 0.0;   // same with doubled panels (0 if not run)
    bool converged = true;
    // extremes of |Omega| / (g N^alpha) over the inner nodes of the low-high pair
    double omega_min_rel = 0.0, omega_max_rel = 0.0;
};

// F(I_N)(t, zeta) = e^{i t omega(zeta)} xi sum_{a,b} A_a A_b int_{Q_a cap (zeta - Q_b)} (e^{i t Omega} - 1)/Omega dzeta1
// over ordered box pairs, or only (Q1+, Q2+) when restrict_lowhigh. The E^s norm uses the
// shell weight. Throws on t == 0.
PicardResult picard_second_iterate(const IllposedParams& ip, double t, bool restrict_lowhigh,
                                   const PicardOptions& opt = {});

// 2 - alpha - epsilon (alpha + delta) - delta
double inflation_exponent(double alpha, double epsilon, double delta);

// ||I_N(t)||^2_{E^s} over Ns (restricted interaction); abscissa "N", bound |t| N^{exponent}
SweepResult inflation_sweep(double alpha, double s, double epsilon, double delta, const std::vector<double>& Ns,
                            double t, const PicardOptions& opt = {});

// ||I_N(t)||_{E^s} over ts at fixed N; abscissa "t"
SweepResult inflation_time_sweep(const IllposedParams& ip, const std::vector<double>& ts,
                                 const PicardOptions& opt = {});

}  // namespace dlab
