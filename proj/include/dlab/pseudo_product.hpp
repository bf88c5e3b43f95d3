#pragma once

#include "dlab/grid.hpp"
#include "dlab/littlewood_paley.hpp"
#include "dlab/params.hpp"
#include "dlab/spectral.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace dlab {

enum class SymbolTag {
    identity,
    zero,
    adjoint_first,
    adjoint_second,
    shell_transition,   // -2 int_0^1 varphi'((|t xi1 + xi2|^a + (t mu1 + mu2)^2)/H) dt
    dispersion_commutator,
    energy,
    custom
};

struct BilinearSymbol {
    std::function<cplx(Zeta, Zeta)> eval;
    double bound = 0.0;
    SymbolTag tag = SymbolTag::custom;
    std::string label;
    // optional fast rejection: returns true when eval is known to vanish
    std::function<bool(Zeta, Zeta)> vanishes;

    cplx operator()(Zeta a, Zeta b) const { return eval(a, b); }
};

BilinearSymbol identity_symbol();
BilinearSymbol zero_symbol();
BilinearSymbol custom_symbol(std::function<cplx(Zeta, Zeta)> f, double bound, std::string label);

// eta_1(z1,z2) = conj eta(z1+z2, -z2),  eta_2(z1,z2) = conj eta(z1+z2, -z1).
// For real f, g, h and eta(-a,-b) = conj eta(a,b):
//   int Pi_eta(f,g) h = int f Pi_eta1(h,g) = int f Pi_eta2(g,h)
std::pair<BilinearSymbol, BilinearSymbol> adjoint_symbols(const BilinearSymbol& eta);

// number of Gauss nodes used for the theta integrals
inline constexpr int kThetaNodes = 32;

double shell_transition_value(Zeta z1, Zeta z2, double H, const DispersionParams& p);
BilinearSymbol shell_transition_symbol(Dyadic H, const DispersionParams& p);

// -i alpha H^{1/alpha - 1} int_0^1 |t xi1 + xi2|^{alpha-1} sgn(t xi1 + xi2) dt
cplx dispersion_commutator_value(Zeta z1, Zeta z2, double H, const DispersionParams& p);
BilinearSymbol dispersion_commutator_symbol(Dyadic H, const DispersionParams& p);

// Correction symbol for the shell energy: -shell_transition/(2 c1) when the two
// inputs are the same solution, -shell_transition/c1 otherwise; c1 = 1/2.
inline constexpr double kNonlinearityConstant = 0.5;
BilinearSymbol energy_symbol(Dyadic H, const DispersionParams& p, bool same_solution = true);

// F(Pi(f,g))(z) = (1/2pi) sum_{z1+z2=z} eta(z1,z2) F f(z1) F g(z2) dxi dmu,
// a linear (non-wrapping) convolution restricted to the lattice.
SpectralField2D pi_eta_apply(const SpectralField2D& f, const SpectralField2D& g, const BilinearSymbol& eta);
SpectralField2D pi_eta_apply_serial(const SpectralField2D& f, const SpectralField2D& g, const BilinearSymbol& eta);

// int Pi_eta(f,g) h dx dy for real h, evaluated only where F h is nonzero
cplx trilinear_form(const SpectralField2D& f, const SpectralField2D& g, const SpectralField2D& h,
                    const BilinearSymbol& eta);
cplx trilinear_form_serial(const SpectralField2D& f, const SpectralField2D& g, const SpectralField2D& h,
                           const BilinearSymbol& eta);

// int a b dx dy for real fields, from coefficients
double real_pairing(const SpectralField2D& a, const SpectralField2D& b);

struct ShellEnergy {
    double shell_l2sq = 0.0;   // ||P_H v||^2
    double correction = 0.0;   // H^{-1} int Pi(P_{<<H} u, v) P_H v
    double value() const { return shell_l2sq + correction; }
};

ShellEnergy modified_energy(const SpectralField2D& u, const SpectralField2D& v, Dyadic H,
                            const BilinearSymbol& eta, const DispersionParams& p);

// right-hand side shape H^{-1} H^{1/(2a)+1/4} ||P_{<<H}u|| ||P_{~H}v|| ||P_H v||
double correction_bound_shape(const SpectralField2D& u, const SpectralField2D& v, Dyadic H,
                              const DispersionParams& p);

struct ShellRatio {
    int log2H = 0;
    std::size_t time_index = 0;
    double shell_l2sq = 0.0;
    double correction = 0.0;
    double ratio = 0.0;
};

struct CoercivityReport {
    double bs_norm_v = 0.0;     // ||v||_{B^s}
    double b0_norm_u = 0.0;     // ||u||_{B^0}
    double energy_sum = 0.0;    // E^s_T(v)
    double inferred_constant = 0.0;
    double min_ratio = 0.0, max_ratio = 0.0;
    std::vector<ShellRatio> shells;
};

// Shells whose energy falls below floor * ||v(t)||^2 are reported but left out of
// the min/max ratio (they carry no resolved content).
CoercivityReport coercivity_report(const std::vector<SpectralField2D>& u_traj,
                                   const std::vector<SpectralField2D>& v_traj, double s,
                                   const DispersionParams& p, bool same_solution = true,
                                   double floor = 1e-20);

}  // namespace dlab
