#pragma once

#include <vector>

namespace dlab {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a,b]
QuadRule gauss_legendre(int n, double a = -1.0, double b = 1.0);
// `panels` equal sub-intervals of [a,b], each carrying an n-point rule
QuadRule composite_gauss(int n, int panels, double a, double b);

}  // namespace dlab
