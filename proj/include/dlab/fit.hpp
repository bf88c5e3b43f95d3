#pragma once

#include <vector>

namespace dlab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// least squares y = a + b x
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
// least squares in log-log coordinates; inputs must be positive
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dlab
