#include "dlab/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <map>
#include <mutex>
#include <stdexcept>

namespace dlab {

namespace {

const QuadRule& reference_rule(int n)
{
    static std::mutex m;
    static std::map<int, QuadRule> rules;
    std::lock_guard<std::mutex> lock(m);
    auto it = rules.find(n);
    if (it != rules.end()) return it->second;
    // boost returns the nonnegative zeros; mirror them
    std::vector<double> z = boost::math::legendre_p_zeros<double>(n);
    QuadRule r;
    auto weight = [n](double x) {
        double d = boost::math::legendre_p_prime<double>(n, x);
        return 2.0 / ((1.0 - x * x) * d * d);
    };
    for (auto zi = z.rbegin(); zi != z.rend(); ++zi) {
        if (*zi == 0.0) continue;
        r.nodes.push_back(-*zi);
        r.weights.push_back(weight(*zi));
    }
    for (double x : z) {
        r.nodes.push_back(x);
        r.weights.push_back(weight(x));
    }
    return rules.emplace(n, std::move(r)).first->second;
}

}  // namespace

QuadRule gauss_legendre(int n, double a, double b)
{
    if (n < 1) throw std::invalid_argument("Gauss rule needs at least one node");
    const QuadRule& ref = reference_rule(n);
    QuadRule r;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        r.nodes.push_back(c + h * ref.nodes[i]);
        r.weights.push_back(h * ref.weights[i]);
    }
    return r;
}

QuadRule composite_gauss(int n, int panels, double a, double b)
{
    if (panels < 1) throw std::invalid_argument("need at least one panel");
    QuadRule r;
    double w = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        QuadRule p = gauss_legendre(n, a + k * w, a + (k + 1) * w);
        r.nodes.insert(r.nodes.end(), p.nodes.begin(), p.nodes.end());
        r.weights.insert(r.weights.end(), p.weights.begin(), p.weights.end());
    }
    return r;
}

}  // namespace dlab
