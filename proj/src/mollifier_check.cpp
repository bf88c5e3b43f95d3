#include "dlab/mollifier_check.hpp"

#include "dlab/littlewood_paley.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dlab {

namespace {

// the mollifier symbol vanishes once lambda^{1/alpha}|xi| or lambda^{1/2}|mu| exceeds 5/3
Grid2D mollifier_grid(const DispersionParams& p, double lambda_min, std::size_t n)
{
    const double half = double(n / 2 - 1);
    const double xi_max = 1.25 * (5.0 / 3.0) * std::pow(lambda_min, -1.0 / p.alpha());
    const double mu_max = 1.25 * (5.0 / 3.0) * std::pow(lambda_min, -0.5);
    return Grid2D(n, n, 2.0 * std::numbers::pi * half / xi_max, 2.0 * std::numbers::pi * half / mu_max);
}

SpectralField2D shaped_data(const Grid2D& g, const DispersionParams& p, double s, double decay,
                            std::uint64_t seed, std::uint64_t stream)
{
    CounterRng rng(seed, stream);
    const SpectralField2D f = random_bandlimited(g, 1.0, rng);
    // a shell of size H holds ~H^{1/alpha+1/2} points
    const double e = 1.0 / p.alpha() + 0.5 + decay;
    return apply_real_multiplier(f, [&](double xi, double mu) {
        const double w = shell_symbol(xi, mu, p);
        return std::pow(1.0 + w * w, -s / 2.0) * std::pow(1.0 + w, -e / 2.0);
    });
}

}  // namespace

MollifierReport mollifier_check(const DispersionParams& p, const MollifierOptions& o)
{
    if (o.lambdas.size() < 2) throw std::invalid_argument("mollifier check needs >= 2 lambdas");
    if (!(o.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (o.trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::vector<double> lambdas = o.lambdas;
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    if (!(lambdas.back() > 0.0)) throw std::invalid_argument("lambdas must be positive");
    const Grid2D g = mollifier_grid(p, lambdas.back(), o.n);

    std::vector<double> gain(lambdas.size(), 0.0), defect(lambdas.size(), 0.0);
    for (int tr = 0; tr < o.trials; ++tr) {
        const SpectralField2D phi = shaped_data(g, p, o.s, o.decay, o.seed, std::uint64_t(tr));
        const double base = es_norm(phi, o.s, p);
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            const SpectralField2D m = mollify(phi, lambdas[i], p);
            SpectralField2D d = m;
            for (std::size_t j = 0; j < d.coeffs.size(); ++j) d.coeffs[j] -= phi.coeffs[j];
            gain[i] = std::max(gain[i], es_norm(m, o.s + o.delta, p) / base);
            defect[i] = std::max(defect[i], es_norm(d, o.s - o.delta, p) / base);
        }
    }

    MollifierReport r;
    r.gain.name = "mollifier_gain";
    r.defect.name = "mollifier_defect";
    r.gain.abscissa = r.defect.abscissa = "lambda";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double l = lambdas[i];
        std::vector<std::pair<std::string, double>> params{{"alpha", p.alpha()}, {"s", o.s},
                                                           {"delta", o.delta},   {"lambda", l},
                                                           {"trials", double(o.trials)}, {"n", double(o.n)}};
        r.gain.points.push_back({params, gain[i], std::pow(l, -o.delta), gain[i] * std::pow(l, o.delta)});
        r.defect.points.push_back({params, defect[i], std::pow(l, o.delta), defect[i] / std::pow(l, o.delta)});
    }
    r.gain.fit = r.gain.refit("measured");
    r.defect.fit = r.defect.refit("measured");
    r.defect_ratio_decreasing = true;
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(r.defect.points[i].ratio < r.defect.points[i - 1].ratio)) r.defect_ratio_decreasing = false;
    return r;
}

}  // namespace dlab
