#include "dlab/inflation.hpp"

#include "dlab/quadrature.hpp"
#include "dlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dlab {

FrequencyBox FrequencyBox::make(double xi_lo, double xi_hi, double mu_lo, double mu_hi)
{
    if (!(std::isfinite(xi_lo) && std::isfinite(xi_hi) && std::isfinite(mu_lo) && std::isfinite(mu_hi)))
        throw std::invalid_argument("frequency box ends must be finite");
    if (!(xi_lo < xi_hi && mu_lo < mu_hi)) throw std::invalid_argument("frequency box is empty");
    return {xi_lo, xi_hi, mu_lo, mu_hi};
}

IllposedParams::IllposedParams(double N, double epsilon, double delta, double s, const DispersionParams& p)
    : N_(N), epsilon_(epsilon), delta_(delta), s_(s), p_(p)
{
    if (!(N >= 2.0)) throw std::invalid_argument("N must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (!std::isfinite(s)) throw std::invalid_argument("s must be finite");
    gamma_ = std::pow(N, -(p.alpha() + delta));
}

double IllposedParams::phase_scale() const { return gamma_ * std::pow(N_, p_.alpha()); }

BoxSpectrum illposed_data(const IllposedParams& ip)
{
    const double g = ip.gamma(), ge = std::pow(g, ip.epsilon()), N = ip.N();
    BoxSpectrum b;
    const FrequencyBox q1 = FrequencyBox::make(g / 2.0, g, ge, 2.0 * ge);
    const FrequencyBox q2 = FrequencyBox::make(N, N + g, -ge, -ge / 2.0);
    b.boxes = {q1, q1.reflected(), q2, q2.reflected()};
    const double a1 = std::pow(g, -(1.0 + ip.epsilon()) / 2.0);
    const double a2 = a1 * std::pow(N, -ip.p().alpha() * ip.s());
    b.amplitude = {a1, a1, a2, a2};
    return b;
}

double BoxSpectrum::es_norm_sq(double sigma, const DispersionParams& p, int panels) const
{
    double total = 0.0;
    for (std::size_t j = 0; j < boxes.size(); ++j) {
        const auto& q = boxes[j];
        const QuadRule rx = composite_gauss(8, panels, q.xi_lo, q.xi_hi);
        const QuadRule rm = composite_gauss(8, panels, q.mu_lo, q.mu_hi);
        double acc = 0.0;
        for (std::size_t a = 0; a < rx.nodes.size(); ++a)
            for (std::size_t c = 0; c < rm.nodes.size(); ++c) {
                const double w = shell_symbol(rx.nodes[a], rm.nodes[c], p);
                acc += rx.weights[a] * rm.weights[c] * std::pow(1.0 + w * w, sigma);
            }
        total += amplitude[j] * amplitude[j] * acc;
    }
    return total;
}

double illposed_l2_sq_closed_form(const IllposedParams& ip)
{
    const double g = ip.gamma(), ge = std::pow(g, ip.epsilon());
    const double q1 = (g / 2.0) * ge, q2 = g * (ge / 2.0);
    return 2.0 * std::pow(g, -(1.0 + ip.epsilon())) * (q1 + std::pow(ip.N(), -2.0 * ip.p().alpha() * ip.s()) * q2);
}

SpectralField2D illposed_data_on_grid(const IllposedParams& ip, const Grid2D& g)
{
    const BoxSpectrum b = illposed_data(ip);
    const double gam = ip.gamma(), ge = std::pow(gam, ip.epsilon());
    if (g.dxi() > gam / 8.0 || g.dmu() > ge / 8.0)
        throw std::invalid_argument("lattice too coarse for the data boxes: need dxi <= gamma/8 and dmu <= gamma^eps/8");
    const double xi_max = g.dxi() * double(g.nx / 2 - 1), mu_max = g.dmu() * double(g.ny / 2 - 1);
    for (const auto& q : b.boxes)
        if (std::max(std::abs(q.xi_lo), std::abs(q.xi_hi)) > xi_max ||
            std::max(std::abs(q.mu_lo), std::abs(q.mu_hi)) > mu_max)
            throw std::invalid_argument("data boxes exceed the lattice frequency range");
    SpectralField2D f(g);
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t k = 0; k < g.ny; ++k)
            for (std::size_t j = 0; j < b.boxes.size(); ++j)
                if (b.boxes[j].contains(g.xi(i), g.mu(k))) f(i, k) += b.amplitude[j];
    return f;
}

namespace {

double max_abs_xi(const FrequencyBox& q) { return std::max(std::abs(q.xi_lo), std::abs(q.xi_hi)); }
double max_abs_mu(const FrequencyBox& q) { return std::max(std::abs(q.mu_lo), std::abs(q.mu_hi)); }
double max_h(const FrequencyBox& q, double alpha)
{
    return (alpha + 1.0) * std::pow(max_abs_xi(q), alpha) + max_abs_mu(q) * max_abs_mu(q);
}

FrequencyBox minkowski_sum(const FrequencyBox& a, const FrequencyBox& b)
{
    return {a.xi_lo + b.xi_lo, a.xi_hi + b.xi_hi, a.mu_lo + b.mu_lo, a.mu_hi + b.mu_hi};
}

bool overlap(const FrequencyBox& a, const FrequencyBox& b)
{
    return a.xi_lo < b.xi_hi && b.xi_lo < a.xi_hi && a.mu_lo < b.mu_hi && b.mu_lo < a.mu_hi;
}

struct Pair {
    std::size_t a, b;
    double amp;
    FrequencyBox out;
    double dens_xi, dens_mu;  // phase change per unit length of the inner variables
};

// (e^{ix} - 1)/Omega with x = t Omega, written without cancellation
cplx kernel(double t, double om)
{
    if (std::abs(om) < 1e-12) return {0.0, t};
    const double x = t * om, s = std::sin(0.5 * x);
    return cplx(-2.0 * s * s, std::sin(x)) / om;
}

int panel_count(double density, double length, const PicardOptions& opt, int refine)
{
    const double n = std::ceil(density * length / opt.phase_per_panel);
    return refine * std::max(1, int(std::min(n, 1e6)));
}

// Panels cut at the given breakpoints and subdivided by the phase density.
QuadRule broken_rule(std::vector<double> cuts, double density, const PicardOptions& opt, int refine)
{
    std::sort(cuts.begin(), cuts.end());
    const double scale = std::max(std::abs(cuts.front()), std::abs(cuts.back()));
    std::vector<double> u;
    for (double c : cuts)
        if (u.empty() || c - u.back() > 1e-14 * scale) u.push_back(c);
    QuadRule r;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const QuadRule q = composite_gauss(opt.nodes, panel_count(density, u[i + 1] - u[i], opt, refine), u[i], u[i + 1]);
        r.nodes.insert(r.nodes.end(), q.nodes.begin(), q.nodes.end());
        r.weights.insert(r.weights.end(), q.weights.begin(), q.weights.end());
    }
    return r;
}

struct Evaluation {
    std::vector<OutputNode> field;
    double norm_sq = 0.0;
    double om_min = std::numeric_limits<double>::infinity(), om_max = 0.0;
};

Evaluation evaluate(const IllposedParams& ip, double t, bool restrict_lowhigh, const PicardOptions& opt, int refine)
{
    const DispersionParams& p = ip.p();
    const double alpha = p.alpha();
    const BoxSpectrum data = illposed_data(ip);

    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            if (restrict_lowhigh && !(a == 0 && b == 2)) continue;
            const auto &qa = data.boxes[a], &qb = data.boxes[b];
            Pair pr{a, b, data.amplitude[a] * data.amplitude[b], minkowski_sum(qa, qb), 0.0, 0.0};
            // d Omega / d xi1 = h(zeta - zeta1) - h(zeta1), d Omega / d mu1 = 2 xi2 mu2 - 2 xi1 mu1
            pr.dens_xi = std::abs(t) * (max_h(qa, alpha) + max_h(qb, alpha));
            pr.dens_mu = 2.0 * std::abs(t) * (max_abs_xi(qa) * max_abs_mu(qa) + max_abs_xi(qb) * max_abs_mu(qb));
            pairs.push_back(pr);
        }

    // group pairs whose output boxes overlap, so that their contributions add before squaring
    std::vector<std::size_t> root(pairs.size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t i) {
        while (root[i] != i) i = root[i];
        return i;
    };
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (overlap(pairs[i].out, pairs[j].out)) root[find(j)] = find(i);

    Evaluation ev;
    for (std::size_t c = 0; c < pairs.size(); ++c) {
        if (find(c) != c) continue;
        std::vector<const Pair*> members;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (find(i) == c) members.push_back(&pairs[i]);

        std::vector<double> cx, cm;
        double dens_x = 0.0, dens_m = 0.0;
        for (const Pair* pr : members) {
            const auto &qa = data.boxes[pr->a], &qb = data.boxes[pr->b];
            for (double u : {qa.xi_lo, qa.xi_hi})
                for (double v : {qb.xi_lo, qb.xi_hi}) cx.push_back(u + v);
            for (double u : {qa.mu_lo, qa.mu_hi})
                for (double v : {qb.mu_lo, qb.mu_hi}) cm.push_back(u + v);
            // d Omega / d xi = h(zeta) - h(zeta2), d Omega / d mu = 2 xi mu - 2 xi2 mu2 at fixed zeta1
            dens_x = std::max(dens_x, std::abs(t) * (max_h(pr->out, alpha) + max_h(qb, alpha)));
            dens_m = std::max(dens_m, 2.0 * std::abs(t) *
                                          (max_abs_xi(pr->out) * max_abs_mu(pr->out) + max_abs_xi(qb) * max_abs_mu(qb)));
        }
        const auto [xlo, xhi] = std::minmax_element(cx.begin(), cx.end());
        if (*xlo < 0.0 && *xhi > 0.0) cx.push_back(0.0);  // |xi|^alpha kink
        const QuadRule rx = broken_rule(cx, dens_x, opt, refine);
        const QuadRule rm = broken_rule(cm, dens_m, opt, refine);

        const std::size_t base = ev.field.size();
        for (std::size_t i = 0; i < rx.nodes.size(); ++i)
            for (std::size_t k = 0; k < rm.nodes.size(); ++k)
                ev.field.push_back({rx.nodes[i], rm.nodes[k], rx.weights[i] * rm.weights[k], cplx()});

        const long n_out = long(ev.field.size() - base);
        double om_min = std::numeric_limits<double>::infinity(), om_max = 0.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : om_min) reduction(max : om_max)
        for (long n = 0; n < n_out; ++n) {
            OutputNode& node = ev.field[base + std::size_t(n)];
            const double xi = node.xi, mu = node.mu;
            cplx acc(0.0, 0.0);
            for (const Pair* pr : members) {
                const auto &qa = data.boxes[pr->a], &qb = data.boxes[pr->b];
                const double x0 = std::max(qa.xi_lo, xi - qb.xi_hi), x1 = std::min(qa.xi_hi, xi - qb.xi_lo);
                const double m0 = std::max(qa.mu_lo, mu - qb.mu_hi), m1 = std::min(qa.mu_hi, mu - qb.mu_lo);
                if (!(x0 < x1 && m0 < m1)) continue;
                const QuadRule ix = composite_gauss(opt.nodes, panel_count(pr->dens_xi, x1 - x0, opt, refine), x0, x1);
                const QuadRule im = composite_gauss(opt.nodes, panel_count(pr->dens_mu, m1 - m0, opt, refine), m0, m1);
                const bool band = pr->a == 0 && pr->b == 2;
                cplx part(0.0, 0.0);
                for (std::size_t a = 0; a < ix.nodes.size(); ++a) {
                    cplx row(0.0, 0.0);
                    for (std::size_t b = 0; b < im.nodes.size(); ++b) {
                        const double x1n = ix.nodes[a], m1n = im.nodes[b];
                        const double om = eval_resonance({x1n, m1n}, {xi - x1n, mu - m1n}, p);
                        if (band) {
                            om_min = std::min(om_min, std::abs(om));
                            om_max = std::max(om_max, std::abs(om));
                        }
                        row += im.weights[b] * kernel(t, om);
                    }
                    part += ix.weights[a] * row;
                }
                acc += pr->amp * part;
            }
            node.value = std::polar(1.0, t * eval_omega(xi, mu, p)) * xi * acc;
        }
        ev.om_min = std::min(ev.om_min, om_min);
        ev.om_max = std::max(ev.om_max, om_max);
    }

    for (const auto& node : ev.field) {
        const double w = shell_symbol(node.xi, node.mu, p);
        ev.norm_sq += node.weight * std::pow(1.0 + w * w, ip.s()) * std::norm(node.value);
    }
    return ev;
}

}  // namespace

PicardResult picard_second_iterate(const IllposedParams& ip, double t, bool restrict_lowhigh, const PicardOptions& opt)
{
    if (t == 0.0 || !std::isfinite(t)) throw std::invalid_argument("t must be finite and nonzero");
    if (opt.nodes < 1 || opt.refine < 1 || !(opt.phase_per_panel > 0.0))
        throw std::invalid_argument("invalid quadrature options");
    Evaluation ev = evaluate(ip, t, restrict_lowhigh, opt, opt.refine);
    PicardResult r;
    r.es_norm = std::sqrt(ev.norm_sq);
    const double scale = ip.phase_scale();
    r.omega_min_rel = ev.om_min / scale;
    r.omega_max_rel = ev.om_max / scale;
    if (opt.doubling_check) {
        const Evaluation fine = evaluate(ip, t, restrict_lowhigh, opt, 2 * opt.refine);
        r.es_norm_refined = std::sqrt(fine.norm_sq);
        r.converged = std::abs(r.es_norm_refined - r.es_norm) <= opt.tolerance * r.es_norm_refined;
    }
    r.field = std::move(ev.field);
    return r;
}

double inflation_exponent(double alpha, double epsilon, double delta)
{
    return 2.0 - alpha - epsilon * (alpha + delta) - delta;
}

SweepResult inflation_sweep(double alpha, double s, double epsilon, double delta, const std::vector<double>& Ns,
                            double t, const PicardOptions& opt)
{
    if (!(alpha >= 1.0 && alpha < 2.0)) throw std::invalid_argument("inflation needs alpha in [1,2)");
    const DispersionParams p(alpha);
    const double e = inflation_exponent(alpha, epsilon, delta);
    SweepResult res;
    res.name = "inflation";
    res.abscissa = "N";
    for (double N : Ns) {
        const IllposedParams ip(N, epsilon, delta, s, p);
        const PicardResult r = picard_second_iterate(ip, t, true, opt);
        SweepPoint pt;
        pt.measured = r.es_norm * r.es_norm;
        pt.bound = std::abs(t) * std::pow(N, e);
        pt.ratio = pt.measured / pt.bound;
        const double change = opt.doubling_check ? std::abs(r.es_norm_refined - r.es_norm) / r.es_norm_refined : 0.0;
        pt.params = {{"alpha", alpha},
                     {"epsilon", epsilon},
                     {"delta", delta},
                     {"s", s},
                     {"t", t},
                     {"N", N},
                     {"gamma", ip.gamma()},
                     {"omega_min_rel", r.omega_min_rel},
                     {"omega_max_rel", r.omega_max_rel},
                     {"doubling_change", change},
                     {"output_nodes", double(r.field.size())}};
        if (!r.converged) {
            std::ostringstream os;
            os << "quadrature not converged at N=" << N << " (doubling change " << change << ")";
            res.flags.push_back(os.str());
        }
        res.points.push_back(pt);
    }
    res.fit = res.refit("measured");
    return res;
}

SweepResult inflation_time_sweep(const IllposedParams& ip, const std::vector<double>& ts, const PicardOptions& opt)
{
    SweepResult res;
    res.name = "inflation_time";
    res.abscissa = "t";
    for (double t : ts) {
        const PicardResult r = picard_second_iterate(ip, t, true, opt);
        SweepPoint pt;
        pt.measured = r.es_norm;
        pt.bound = std::abs(t);
        pt.ratio = pt.measured / pt.bound;
        const double change = opt.doubling_check ? std::abs(r.es_norm_refined - r.es_norm) / r.es_norm_refined : 0.0;
        pt.params = {{"alpha", ip.p().alpha()}, {"N", ip.N()},       {"t", std::abs(t)},
                     {"t_phase", std::abs(t) * ip.phase_scale()},   {"doubling_change", change}};
        if (!r.converged) {
            std::ostringstream os;
            os << "quadrature not converged at t=" << t;
            res.flags.push_back(os.str());
        }
        res.points.push_back(pt);
    }
    res.fit = res.refit("measured");
    return res;
}

}  // namespace dlab
