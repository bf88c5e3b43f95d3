#pragma once

#include "dlab/params.hpp"

#include <cstdint>

namespace dlab {

// Closed-form constants of the resonance-geometry inequality
//   h(z1+z2) <= |h(z1) - h(z2)| + f(delta) max(h(z1), h(z2))
// for z1, z2 in the band (B-delta)|xi|^alpha <= mu^2 <= (B+delta)|xi|^alpha with
// opposite signs in both coordinates.
struct LemmaConstants {
    double g = 0.0;   // (alpha+1+B+delta) / (alpha+1+B-delta)
    double f1 = 0.0;  // B + delta - (B-delta) / sqrt(g)
    double f2 = 0.0;  // (g^{1/alpha} - 1)^alpha
    double f3 = 0.0;  // g - 1
    double f() const { return f1 + f2 + f3; }
};

LemmaConstants lemma_constants(double delta, const DispersionParams& p);

enum class LemmaSampling {
    independent,  // |xi1|, |xi2| log-uniform on [1e-2, 1e4] independently
    paired        // |xi2| = |xi1| e^u with u uniform on [-1/2, 1/2]
};

struct LemmaReport {
    double alpha = 0.0, delta = 0.0;
    LemmaConstants c;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    std::uint64_t mirror_mismatches = 0;  // (z1,z2) -> (-z1,-z2) changed a side
    double max_slack = 0.0;               // max of lhs / rhs
};

// A violation means lhs > rhs (1 + 1e-12); the margin absorbs rounding only.
LemmaReport lemma_tech_check(double delta, const DispersionParams& p, std::uint64_t samples, std::uint64_t seed,
                             LemmaSampling mode = LemmaSampling::independent);

}  // namespace dlab
