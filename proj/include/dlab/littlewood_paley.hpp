#pragma once

#include "dlab/grid.hpp"
#include "dlab/params.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace dlab {

// A power of two >= 1, stored by its exponent.
class Dyadic {
public:
    Dyadic() = default;
    static Dyadic from_log2(int k);
    // throws unless v is an exact power of two >= 1
    static Dyadic from_value(double v);
    int log2() const { return k_; }
    double value() const { return std::ldexp(1.0, k_); }
    bool operator==(const Dyadic& o) const { return k_ == o.k_; }

private:
    int k_ = 0;
};

// 2^{floor(beta k)} for H = 2^k
Dyadic dyadic_floor(Dyadic H, double beta);

enum class Selector {
    x_band,        // F(P u) = varphi_N(xi) F u
    shell,         // psi_H = varphi_H(|xi|^alpha + mu^2)
    shells_le,     // shells <= H
    shells_ll,     // shells <= H/8 (the "much lower" part)
    shells_sim,    // shells H/4 .. 4H
    shells_gg,     // shells >= 8H
    nonresonant,   // rho_delta(B - mu^2/|xi|^alpha)
};

struct Projection {
    Selector sel = Selector::shell;
    double H = 1.0;       // N for x_band, H for shell families
    double delta = 0.1;   // only for nonresonant

    static Projection x_band(Dyadic N) { return {Selector::x_band, N.value(), 0.0}; }
    static Projection shell(Dyadic H) { return {Selector::shell, H.value(), 0.0}; }
    static Projection le(Dyadic H) { return {Selector::shells_le, H.value(), 0.0}; }
    static Projection ll(Dyadic H) { return {Selector::shells_ll, H.value(), 0.0}; }
    static Projection sim(Dyadic H) { return {Selector::shells_sim, H.value(), 0.0}; }
    static Projection gg(Dyadic H) { return {Selector::shells_gg, H.value(), 0.0}; }
    static Projection nonresonant(double delta);
};

double projection_symbol(const Projection& pr, double xi, double mu, const DispersionParams& p);
SpectralField2D project(const SpectralField2D& f, const Projection& pr, const DispersionParams& p);

enum class SobolevWeight { shell, h };

// sqrt(sum <w>^{2s} |f|^2 dxi dmu) with <x> = sqrt(1+x^2) and
// w = |xi|^alpha + mu^2 (shell) or (alpha+1)|xi|^alpha + mu^2 (h)
double es_norm(const SpectralField2D& f, double s, const DispersionParams& p,
               SobolevWeight w = SobolevWeight::shell);

struct Conserved {
    double M = 0.0;
    double H = 0.0;
};
// M = int u^2, H = int |D^{alpha/2} u|^2 + |u_y|^2 + u^3/3
Conserved conserved_quantities(const RealField2D& u, const DispersionParams& p);
Conserved conserved_quantities(const SpectralField2D& u, const DispersionParams& p);

// (sum |u|^p dx dy)^{1/p}; p = infinity gives the max
double lp_norm(const RealField2D& u, double pexp);

// Outer L^q over samples (trapezoid weights in t, a single sample has weight 1),
// inner spatial L^p. Uniform spacing dt is assumed.
double mixed_norm(const std::vector<RealField2D>& traj, double dt, double q, double pexp);
// same, from precomputed spatial norms
double mixed_norm_from_spatial(const std::vector<double>& spatial, double dt, double q);

// dyadic shells with some lattice point in their support, H = 1, 2, 4, ...
std::vector<Dyadic> resolved_shells(const Grid2D& g, const DispersionParams& p);

// sqrt(||P_1 f(0)||^2 + sum_{H>=2} H^{2s} max_t ||P_H f(t)||^2)
double bs_norm_trajectory(const std::vector<SpectralField2D>& traj, double s, const DispersionParams& p);

}  // namespace dlab
