#include "dlab/cutoffs.hpp"

#include <algorithm>
#include <cmath>

namespace dlab {

namespace {
double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double bump_deriv(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }
}  // namespace

double smooth_step_down(double t)
{
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    double a = bump(1.0 - t), b = bump(t);
    return a / (a + b);
}

double smooth_step_down_deriv(double t)
{
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double a = bump(1.0 - t), b = bump(t);
    double da = -bump_deriv(1.0 - t), db = bump_deriv(t);
    double s = a + b;
    return (da * b - a * db) / (s * s);
}

double chi(double x)
{
    double a = std::abs(x);
    if (a <= 4.0 / 3.0) return 1.0;
    if (a >= 5.0 / 3.0) return 0.0;
    return smooth_step_down(3.0 * (a - 4.0 / 3.0));
}

double chi_deriv(double x)
{
    double a = std::abs(x);
    if (a <= 4.0 / 3.0 || a >= 5.0 / 3.0) return 0.0;
    double d = 3.0 * smooth_step_down_deriv(3.0 * (a - 4.0 / 3.0));
    return x < 0.0 ? -d : d;
}

double varphi(double x) { return chi(x) - chi(2.0 * x); }
double varphi_deriv(double x) { return chi_deriv(x) - 2.0 * chi_deriv(2.0 * x); }

double varphi_N(double x, double N) { return N <= 1.0 ? chi(x) : varphi(x / N); }

double rho(double x)
{
    double a = std::abs(x);
    if (a <= 0.5) return 0.0;
    if (a >= 1.0) return 1.0;
    return 1.0 - smooth_step_down(2.0 * (a - 0.5));
}

double rho_delta(double x, double delta) { return rho(x / delta); }

double varphi_deriv_max()
{
    static const double m = [] {
        double best = 0.0;
        const int n = 200000;
        for (int i = 0; i <= n; ++i) {
            double x = 0.5 + 1.25 * double(i) / n;
            best = std::max(best, std::abs(varphi_deriv(x)));
        }
        return best;
    }();
    return m;
}

}  // namespace dlab
