#include "dlab/sweep.hpp"

#include <stdexcept>

namespace dlab {

double SweepResult::param(std::size_t i, const std::string& key) const
{
    for (const auto& [k, v] : points.at(i).params)
        if (k == key) return v;
    throw std::out_of_range("sweep point has no parameter " + key);
}

LineFit SweepResult::refit(const std::string& value) const
{
    std::vector<double> x, y;
    for (std::size_t i = 0; i < points.size(); ++i) {
        x.push_back(param(i, abscissa));
        if (value == "measured") y.push_back(points[i].measured);
        else if (value == "ratio") y.push_back(points[i].ratio);
        else throw std::invalid_argument("refit value must be measured or ratio");
    }
    return fit_loglog(x, y);
}

}  // namespace dlab
