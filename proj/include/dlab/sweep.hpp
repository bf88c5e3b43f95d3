#pragma once

#include "dlab/fit.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dlab {

struct SweepPoint {
    std::vector<std::pair<std::string, double>> params;
    double measured = 0.0;
    double bound = 0.0;
    double ratio = 0.0;  // measured / bound
};

struct SweepResult {
    std::string name;
    std::string abscissa;  // parameter name used for the log-log fit
    std::vector<SweepPoint> points;
    LineFit fit;           // slope of log(measured) against log(abscissa) unless noted
    std::vector<std::string> flags;

    double param(std::size_t i, const std::string& key) const;
    // refit log(value) against log(abscissa); value is "measured" or "ratio"
    LineFit refit(const std::string& value) const;
};

}  // namespace dlab
