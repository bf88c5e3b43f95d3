#include "dlab/solver.hpp"

#include "dlab/fft.hpp"
#include "dlab/littlewood_paley.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dlab {

bool in_dealiased_box(const Grid2D& g, long j, long k)
{
    // 3|j| <= nx is |j| <= nx/3 without rounding
    return 3 * std::abs(j) <= long(g.nx) && 3 * std::abs(k) <= long(g.ny);
}

SpectralField2D dealias(const SpectralField2D& f)
{
    const Grid2D& g = f.grid;
    SpectralField2D r = f;
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t k = 0; k < g.ny; ++k)
            if (!in_dealiased_box(g, g.jx(i), g.jy(k))) r(i, k) = 0.0;
    return r;
}

double max_retained_omega(const Grid2D& g, const DispersionParams& p, bool dealiased)
{
    double m = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t k = 0; k < g.ny; ++k) {
            if (dealiased && !in_dealiased_box(g, g.jx(i), g.jy(k))) continue;
            m = std::max(m, std::abs(eval_omega(g.xi(i), g.mu(k), p)));
        }
    return m;
}

void validate(const SimConfig& cfg)
{
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(cfg.t_end >= cfg.dt)) throw std::invalid_argument("t_end must be >= dt");
    if (cfg.monitor_stride < 1) throw std::invalid_argument("monitor_stride must be >= 1");
    if (cfg.direction != 1 && cfg.direction != -1) throw std::invalid_argument("direction must be +1 or -1");
    require_same_grid(cfg.grid, cfg.initial.grid, "simulate: initial data");
    if (!all_finite(cfg.initial)) throw std::invalid_argument("initial data not finite");
    double w = max_retained_omega(cfg.grid, cfg.p, cfg.dealias);
    if (cfg.dt * w > 2.0 * std::numbers::pi)
        throw std::invalid_argument("dt * max|omega| over the retained lattice exceeds 2 pi (" +
                                    std::to_string(cfg.dt * w) + ")");
}

namespace {

class Stepper {
public:
    Stepper(const SimConfig& cfg) : g_(cfg.grid), p_(cfg.p), cfg_(cfg)
    {
        const std::size_t n = g_.size();
        const double h = cfg.direction * cfg.dt;
        half_.resize(n);
        full_.resize(n);
        dx_.resize(n);
        keep_.resize(n);
        for (std::size_t i = 0; i < g_.nx; ++i)
            for (std::size_t k = 0; k < g_.ny; ++k) {
                std::size_t m = g_.idx(i, k);
                double w = eval_omega(g_.xi(i), g_.mu(k), p_);
                half_[m] = std::polar(1.0, 0.5 * h * w);
                full_[m] = std::polar(1.0, h * w);
                keep_[m] = !cfg.dealias || in_dealiased_box(g_, g_.jx(i), g_.jy(k));
                // (1/2) d/dx, with the Nyquist column dropped
                dx_[m] = i == g_.nx / 2 ? cplx(0.0) : cplx(0.0, 0.5 * g_.xi(i));
            }
        buf_.resize(n);
        k1_.resize(n);
        k2_.resize(n);
        k3_.resize(n);
        k4_.resize(n);
        tmp_.resize(n);
        to_phys_ = g_.dxi() * g_.dmu() / (2.0 * std::numbers::pi);
        to_spec_ = g_.dx() * g_.dy() / (2.0 * std::numbers::pi);
    }

    // out = (1/2) d/dx (u^2) in coefficient space, dealiased
    void nonlinear(const std::vector<cplx>& u, std::vector<cplx>& out)
    {
        const std::size_t n = u.size();
        for (std::size_t m = 0; m < n; ++m) buf_[m] = keep_[m] ? u[m] : cplx(0.0);
        dft_2d(buf_, g_.nx, g_.ny, +1);
        for (std::size_t m = 0; m < n; ++m) {
            double v = buf_[m].real() * to_phys_;
            buf_[m] = cplx(v * v, 0.0);
        }
        dft_2d(buf_, g_.nx, g_.ny, -1);
        for (std::size_t m = 0; m < n; ++m) out[m] = keep_[m] ? dx_[m] * buf_[m] * to_spec_ : cplx(0.0);
    }

    void step(std::vector<cplx>& u)
    {
        const std::size_t n = u.size();
        const double h = cfg_.direction * cfg_.dt;
        if (!cfg_.nonlinear) {
            for (std::size_t m = 0; m < n; ++m) u[m] *= full_[m];
            return;
        }
        nonlinear(u, k1_);
        for (std::size_t m = 0; m < n; ++m) tmp_[m] = half_[m] * (u[m] + 0.5 * h * k1_[m]);
        nonlinear(tmp_, k2_);
        for (std::size_t m = 0; m < n; ++m) tmp_[m] = half_[m] * u[m] + 0.5 * h * k2_[m];
        nonlinear(tmp_, k3_);
        for (std::size_t m = 0; m < n; ++m) tmp_[m] = full_[m] * u[m] + h * half_[m] * k3_[m];
        nonlinear(tmp_, k4_);
        for (std::size_t m = 0; m < n; ++m)
            u[m] = full_[m] * u[m] +
                   (h / 6.0) * (full_[m] * k1_[m] + 2.0 * half_[m] * (k2_[m] + k3_[m]) + k4_[m]);
    }

private:
    Grid2D g_;
    DispersionParams p_;
    const SimConfig& cfg_;
    std::vector<cplx> half_, full_, dx_;
    std::vector<bool> keep_;
    std::vector<cplx> buf_, k1_, k2_, k3_, k4_, tmp_;
    double to_phys_ = 1.0, to_spec_ = 1.0;
};

double sup_norm(const SpectralField2D& f)
{
    return lp_norm(inverse_transform(f), INFINITY);
}

MonitorRow monitor(double t, const SpectralField2D& f, const std::vector<double>& svals, const DispersionParams& p)
{
    MonitorRow r;
    r.t = t;
    Conserved c = conserved_quantities(f, p);
    r.M = c.M;
    r.H = c.H;
    for (double s : svals) r.es.push_back(es_norm(f, s, p));
    return r;
}

}  // namespace

Trajectory simulate(const SimConfig& cfg)
{
    validate(cfg);
    Trajectory tr;
    tr.monitor_s = cfg.monitor_s;
    if (tr.monitor_s.empty()) tr.monitor_s = {0.0, 0.5, cfg.p.s_alpha() + 0.05};

    const long nsteps = std::max(1L, std::lround(cfg.t_end / cfg.dt));
    Stepper st(cfg);
    SpectralField2D state = cfg.initial;
    const double sup0 = sup_norm(state);
    const double guard = sup0 > 0.0 ? 1e6 * sup0 : INFINITY;

    auto record = [&](long n) {
        double t = cfg.direction * double(n) * cfg.dt;
        tr.times.push_back(t);
        tr.monitors.push_back(monitor(t, state, tr.monitor_s, cfg.p));
        if (cfg.store_states) tr.states.push_back(state);
    };
    record(0);
    double last_valid = 0.0;
    for (long n = 1; n <= nsteps; ++n) {
        st.step(state.coeffs);
        const bool at_monitor = n % cfg.monitor_stride == 0 || n == nsteps;
        if (at_monitor || n % 64 == 0) {
            if (!all_finite(state)) throw SimulationAborted("non-finite state during stepping", last_valid);
            if (sup_norm(state) > guard) throw SimulationAborted("sup norm exceeded 1e6 x its initial value", last_valid);
            last_valid = cfg.direction * double(n) * cfg.dt;
        }
        if (at_monitor) record(n);
    }
    return tr;
}

SpectralField2D make_initial(const std::string& preset, const Grid2D& g, double amplitude, double width,
                             std::uint64_t seed)
{
    if (preset == "zero") return SpectralField2D(g, true);
    if (preset == "gaussian") {
        if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be > 0");
        RealField2D u(g);
        for (std::size_t i = 0; i < g.nx; ++i)
            for (std::size_t k = 0; k < g.ny; ++k) {
                double x = g.x(i) - 0.5 * g.lx, y = g.y(k) - 0.5 * g.ly;
                u(i, k) = amplitude * std::exp(-(x * x + y * y) / (width * width));
            }
        return transform(u);
    }
    if (preset == "random") {
        if (!(width > 0.0)) throw std::invalid_argument("spectral width must be > 0");
        CounterRng rng(seed, 0x696e6974ULL);
        SpectralField2D f = random_bandlimited(g, 2.0 / 3.0, rng);
        f = apply_real_multiplier(f, [&](double xi, double mu) {
            return std::exp(-(xi * xi + mu * mu) / (2.0 * width * width));
        });
        double s = sup_norm(f);
        if (s > 0.0) f = (amplitude / s) * f;
        return f;
    }
    throw std::invalid_argument("unknown initial-data preset '" + preset + "' (valid: zero, gaussian, random)");
}

ScalingReport scaled_solution_check(const SimConfig& cfg, double lambda, const std::vector<double>& s_values)
{
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    const double a = cfg.p.alpha();
    SimConfig sc = cfg;
    sc.grid = Grid2D(cfg.grid.nx, cfg.grid.ny, cfg.grid.lx * std::pow(lambda, -1.0 / a),
                     cfg.grid.ly * std::pow(lambda, -0.5));
    const double tscale = std::pow(lambda, -(1.0 + 1.0 / a));
    sc.dt = cfg.dt * tscale;
    sc.t_end = cfg.t_end * tscale;
    // lambda u0 sampled at the same lattice indices; the transform weight picks up
    // the cell-area ratio of the two grids
    const double cell = std::pow(lambda, -1.0 / a - 0.5);
    sc.initial = SpectralField2D(sc.grid, cfg.initial.hermitian);
    for (std::size_t n = 0; n < cfg.initial.coeffs.size(); ++n)
        sc.initial.coeffs[n] = (lambda * cell) * cfg.initial.coeffs[n];
    sc.store_states = true;
    SimConfig base = cfg;
    base.store_states = true;
    validate(base);
    try {
        validate(sc);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("rescaled configuration is not resolvable: ") + e.what());
    }

    Trajectory tb = simulate(base);
    Trajectory ts = simulate(sc);
    RealField2D ub = inverse_transform(tb.states.back());
    RealField2D us = inverse_transform(ts.states.back());
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < ub.values.size(); ++n) {
        double ref = lambda * ub.values[n];
        num += (us.values[n] - ref) * (us.values[n] - ref);
        den += ref * ref;
    }
    ScalingReport r;
    r.lambda = lambda;
    r.discrepancy = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    r.scaling_factor = std::pow(lambda, 0.75 - 0.5 / a);
    r.s_values = s_values;
    for (double s : s_values) {
        double n0 = es_norm(cfg.initial, s, cfg.p);
        double n1 = es_norm(sc.initial, s, cfg.p);
        r.norm_ratio.push_back(n0 > 0.0 ? n1 / n0 : 0.0);
        r.bound.push_back(r.scaling_factor * (1.0 + std::pow(lambda, s)));
    }
    return r;
}

}  // namespace dlab
