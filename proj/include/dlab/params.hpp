#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dlab {

// alpha is the only free parameter; everything else is derived from it.
class DispersionParams {
public:
    explicit DispersionParams(double alpha = 2.0) : alpha_(alpha)
    {
        if (!(alpha >= 1.0 && alpha <= 2.0))
            throw std::invalid_argument("alpha must lie in [1,2], got " + std::to_string(alpha));
    }

    double alpha() const { return alpha_; }
    double B() const { return alpha_ * (alpha_ + 1.0) / 2.0; }
    double beta() const { return 2.0 / alpha_ - 1.0; }
    double s_alpha() const { return 2.0 / alpha_ - 0.75; }

private:
    double alpha_;
};

}  // namespace dlab
