#include "dlab/kernel_decay.hpp"

#include "dlab/cutoffs.hpp"
#include "dlab/fft.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dlab {

namespace {

constexpr double kXiLo = 2.0 / 3.0;
constexpr double kXiHi = 5.0 / 3.0;
constexpr double kPad = 16.0;

std::size_t pow2_at_least(double n)
{
    std::size_t m = 8;
    while (double(m) < n) m *= 2;
    return m;
}

struct Layout {
    double alpha, B, delta, tau;
    double M;             // truncation scale, chi(mu/M)
    double x_lo, x_hi;    // searched x window
    double y_hi;          // searched y window is [0, y_hi]
    double dxi, dmu, dx, dy;
    long k0, nxi, K;
    std::size_t n_mu_fft, n_x_fft, ny;
};

Layout make_layout(double tau, const DispersionParams& p, double delta, const KernelQuadrature& q)
{
    if (!(tau > 0.0)) throw std::invalid_argument("kernel decay needs t > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("kernel decay needs delta in (0,1)");
    if (!(q.refine >= 1.0) || !(q.m_scale >= 1.0)) throw std::invalid_argument("quadrature refinement must be >= 1");
    Layout L;
    L.alpha = p.alpha();
    L.B = p.B();
    L.delta = delta;
    L.tau = tau;
    const double a = L.alpha;
    if (L.B - delta <= 0.0) throw std::invalid_argument("kernel decay needs delta < B");

    // the resonant band ends at |mu| = edge; the search covers 1.2 edge
    const double edge = std::sqrt(L.B + delta) * std::pow(kXiHi, a / 2.0);
    const double mus = 1.2 * edge;
    // stationary points with |y| <= y_hi come from |mu| <= 2.5 mus, far inside the plateau
    L.M = std::max(2.5 * edge, 4.0 / std::sqrt(tau)) * q.m_scale;
    L.y_hi = 2.0 * tau * kXiHi * mus + kPad;
    const double y_total = 2.0 * tau * kXiHi * (5.0 * L.M / 3.0) + kPad;
    const double Py = 1.05 * (y_total + L.y_hi);
    L.x_lo = -(tau * ((a + 1.0) * std::pow(kXiHi, a) + std::pow(2.5 * mus, 2)) + kPad);
    L.x_hi = kPad;
    const double Px = 1.2 * (L.x_hi - L.x_lo);

    // steps also resolve the transitions of rho_delta, varphi and chi(mu/M)
    const double xi_rho = 0.5 * kXiLo * delta / (a * (L.B + delta));
    const double mu_rho = 0.25 * delta * std::pow(kXiLo, a / 2.0) / std::sqrt(L.B + delta);
    L.dxi = std::min({2.0 * std::numbers::pi / Px, xi_rho / 12.0, 1.0 / 72.0}) / q.refine;
    L.dmu = std::min({2.0 * std::numbers::pi / Py, mu_rho / 12.0, L.M / 36.0}) / q.refine;

    L.k0 = long(std::ceil(kXiLo / L.dxi));
    L.nxi = long(std::floor(kXiHi / L.dxi)) - L.k0 + 1;
    L.K = long(std::ceil(5.0 * L.M / 3.0 / L.dmu));

    // output sampling stays fixed under refinement, which only tests the quadrature
    const double dy_target = 0.5 / std::max(2.5 * mus, 1.0 / std::sqrt(tau));
    L.n_mu_fft = pow2_at_least(std::max(double(2 * L.K + 1), 2.0 * std::numbers::pi / (L.dmu * dy_target)));
    L.dy = 2.0 * std::numbers::pi / (double(L.n_mu_fft) * L.dmu);
    L.ny = std::size_t(std::floor(L.y_hi / L.dy)) + 1;

    const double dx_target = 0.3;
    L.n_x_fft = pow2_at_least(std::max(double(L.k0 + L.nxi + 1), 2.0 * std::numbers::pi / (L.dxi * dx_target)));
    L.dx = 2.0 * std::numbers::pi / (double(L.n_x_fft) * L.dxi);
    if (double(L.n_x_fft) * L.dx < L.x_hi - L.x_lo) throw std::logic_error("kernel x period shorter than window");
    return L;
}

double multiplier(const Layout& L, double xi, double mu)
{
    return varphi(xi) * rho_delta(L.B - mu * mu / std::pow(xi, L.alpha), L.delta) * chi(mu / L.M);
}

cplx integrand(const Layout& L, double xi, double mu)
{
    double m = multiplier(L, xi, mu);
    if (m == 0.0) return cplx(0.0, 0.0);
    return std::polar(m, L.tau * (std::pow(xi, L.alpha + 1.0) + xi * mu * mu));
}

// wrapped sample index to signed x
double x_of(const Layout& L, std::size_t l)
{
    double x = double(l) * L.dx;
    if (l >= L.n_x_fft / 2) x -= double(L.n_x_fft) * L.dx;
    return x;
}

// 2 Re of the positive-band sum for one y row
void row_values(const Layout& L, const std::vector<cplx>& G, std::size_t j, std::vector<cplx>& buf,
                std::vector<double>& out)
{
    std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
    for (long i = 0; i < L.nxi; ++i) buf[std::size_t(L.k0 + i)] = G[std::size_t(i) * L.ny + j];
    dft_1d(buf.data(), buf.size(), +1);
    out.resize(buf.size());
    for (std::size_t l = 0; l < buf.size(); ++l) out[l] = 2.0 * L.dxi * buf[l].real();
}

// peak of the parabola through (-1,a), (0,b), (1,c), as a gain over b
double parabola_gain(double a, double b, double c)
{
    double curv = a - 2.0 * b + c;
    if (curv >= 0.0) return 0.0;
    return -(a - c) * (a - c) / (8.0 * curv);
}

}  // namespace

KernelSup kernel_sup_normalized(double tau, const DispersionParams& p, double delta, const KernelQuadrature& q)
{
    const Layout L = make_layout(tau, p, delta, q);

    // mu -> y for every xi node, rows kept for y in [0, y_hi]
    std::vector<cplx> G(std::size_t(L.nxi) * L.ny);
    double area = 0.0;
#pragma omp parallel reduction(+ : area)
    {
        std::vector<cplx> buf(L.n_mu_fft);
#pragma omp for schedule(static)
        for (long i = 0; i < L.nxi; ++i) {
            const double xi = double(L.k0 + i) * L.dxi;
            std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
            for (long k = -L.K; k <= L.K; ++k) {
                const double mu = double(k) * L.dmu;
                double m = multiplier(L, xi, mu);
                if (m == 0.0) continue;
                area += m;
                std::size_t idx = k >= 0 ? std::size_t(k) : std::size_t(long(L.n_mu_fft) + k);
                buf[idx] = std::polar(m, L.tau * (std::pow(xi, L.alpha + 1.0) + xi * mu * mu));
            }
            dft_1d(buf.data(), buf.size(), +1);
            for (std::size_t j = 0; j < L.ny; ++j) G[std::size_t(i) * L.ny + j] = L.dmu * buf[j];
        }
    }

    // xi -> x for every kept y row; track the largest |I| in the x window
    std::vector<double> row_best(L.ny, -1.0);
    std::vector<std::size_t> row_arg(L.ny, 0);
#pragma omp parallel
    {
        std::vector<cplx> buf(L.n_x_fft);
        std::vector<double> vals;
#pragma omp for schedule(static)
        for (long jj = 0; jj < long(L.ny); ++jj) {
            const std::size_t j = std::size_t(jj);
            row_values(L, G, j, buf, vals);
            for (std::size_t l = 0; l < vals.size(); ++l) {
                double x = x_of(L, l);
                if (x < L.x_lo || x > L.x_hi) continue;
                if (std::abs(vals[l]) > row_best[j]) {
                    row_best[j] = std::abs(vals[l]);
                    row_arg[j] = l;
                }
            }
        }
    }
    // first maximal row wins, so the result does not depend on the schedule
    std::size_t jb = 0;
    for (std::size_t j = 1; j < L.ny; ++j)
        if (row_best[j] > row_best[jb]) jb = j;
    const std::size_t lb = row_arg[jb];

    std::vector<cplx> buf(L.n_x_fft);
    std::vector<double> r0, rm, rp;
    row_values(L, G, jb, buf, r0);
    // I is even in y, so row -1 mirrors row 1
    std::size_t jm = jb == 0 ? 1 : jb - 1;
    std::size_t jp = jb + 1 < L.ny ? jb + 1 : jb;
    row_values(L, G, jm, buf, rm);
    row_values(L, G, jp, buf, rp);
    const std::size_t n = L.n_x_fft;
    const double f0 = std::abs(r0[lb]);
    double gx = parabola_gain(std::abs(r0[(lb + n - 1) % n]), f0, std::abs(r0[(lb + 1) % n]));
    double gy = jp == jb ? 0.0 : parabola_gain(std::abs(rm[lb]), f0, std::abs(rp[lb]));

    KernelSup s;
    s.tau = tau;
    s.sup = f0 + gx + gy;
    s.x = x_of(L, lb);
    s.y = double(jb) * L.dy;
    s.area = 2.0 * area * L.dxi * L.dmu;
    s.n_xi = std::size_t(L.nxi);
    s.n_mu = std::size_t(2 * L.K + 1);
    return s;
}

double kernel_value_normalized(double tau, double x, double y, const DispersionParams& p, double delta,
                               const KernelQuadrature& q)
{
    const Layout L = make_layout(tau, p, delta, q);
    cplx acc(0.0, 0.0);
    for (long i = 0; i < L.nxi; ++i) {
        const double xi = double(L.k0 + i) * L.dxi;
        cplx row(0.0, 0.0);
        for (long k = -L.K; k <= L.K; ++k) {
            const double mu = double(k) * L.dmu;
            row += integrand(L, xi, mu) * std::polar(1.0, y * mu);
        }
        acc += row * std::polar(1.0, x * xi);
    }
    return 2.0 * (acc * (L.dxi * L.dmu)).real();
}

double kernel_sup(double N, double t, const DispersionParams& p, double delta, const KernelQuadrature& q)
{
    const double a = p.alpha();
    return std::pow(N, 1.0 + a / 2.0) * kernel_sup_normalized(std::pow(N, a + 1.0) * t, p, delta, q).sup;
}

KernelSup kernel_sup_cached(double tau, const DispersionParams& p, double delta, const KernelQuadrature& q)
{
    using Key = std::array<double, 5>;
    static std::mutex m;
    static std::map<Key, KernelSup> cache;
    const Key key{tau, p.alpha(), delta, q.refine, q.m_scale};
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    KernelSup s = kernel_sup_normalized(tau, p, delta, q);
    std::lock_guard<std::mutex> lock(m);
    return cache.emplace(key, s).first->second;
}

double kernel_doubling_change(double tau, const DispersionParams& p, double delta)
{
    double s1 = kernel_sup_cached(tau, p, delta, {}).sup;
    double s2 = kernel_sup_cached(tau, p, delta, {2.0, 1.25}).sup;
    return std::abs(s2 - s1) / s1;
}

namespace {

SweepPoint kernel_point(double N, double t, const DispersionParams& p, double delta, double bound)
{
    const double a = p.alpha();
    const double scale = std::pow(N, 1.0 + a / 2.0);
    KernelSup s = kernel_sup_cached(std::pow(N, a + 1.0) * t, p, delta);
    SweepPoint pt;
    pt.measured = scale * s.sup;
    pt.bound = bound;
    pt.ratio = pt.measured / bound;
    pt.params = {{"alpha", a}, {"delta", delta}, {"N", N}, {"t", t}, {"tau", s.tau},
                 {"x", s.x / N}, {"y", s.y / std::pow(N, a / 2.0)}, {"support_area", scale * s.area},
                 {"n_xi", double(s.n_xi)}, {"n_mu", double(s.n_mu)}};
    return pt;
}

void check_point(SweepResult& r, const SweepPoint& pt, std::size_t i)
{
    double area = r.param(i, "support_area");
    if (!(pt.measured <= area)) r.flags.push_back("trivial bound violated at point " + std::to_string(i));
}

void doubling_checks(SweepResult& r, const DispersionParams& p, const KernelSweepOptions& o)
{
    std::size_t last = 0;
    for (std::size_t i = 0; i < r.points.size(); ++i)
        if (r.param(i, "tau") <= o.doubling_tau_limit) last = i;
    for (std::size_t i : {std::size_t(0), last}) {
        double change = kernel_doubling_change(r.param(i, "tau"), p, o.delta);
        r.points[i].params.push_back({"doubling_change", change});
        if (change > o.doubling_tolerance)
            r.flags.push_back("panel doubling changed the maximum by " + std::to_string(change) + " at point " +
                              std::to_string(i));
        if (last == 0) break;
    }
}

}  // namespace

SweepResult kernel_decay_t_sweep(double N, const std::vector<double>& times, const DispersionParams& p,
                                 const KernelSweepOptions& o)
{
    if (times.size() < 2) throw std::invalid_argument("t sweep needs >= 2 times");
    SweepResult r;
    r.name = "kernel_decay_t";
    r.abscissa = "t";
    const double a = p.alpha();
    for (double t : times) {
        r.points.push_back(kernel_point(N, t, p, o.delta, std::pow(N, -a / 2.0) / t));
        check_point(r, r.points.back(), r.points.size() - 1);
    }
    doubling_checks(r, p, o);
    r.fit = r.refit("measured");
    return r;
}

SweepResult kernel_decay_n_sweep(const std::vector<double>& Ns, double t, const DispersionParams& p,
                                 const KernelSweepOptions& o)
{
    if (Ns.size() < 2) throw std::invalid_argument("N sweep needs >= 2 values");
    SweepResult r;
    r.name = "kernel_decay_N";
    r.abscissa = "N";
    const double a = p.alpha();
    for (double N : Ns) {
        r.points.push_back(kernel_point(N, t, p, o.delta, std::pow(N, -a / 2.0) / t));
        check_point(r, r.points.back(), r.points.size() - 1);
    }
    doubling_checks(r, p, o);
    r.fit = r.refit("measured");
    return r;
}

SweepResult kernel_small_time_sweep(double N, const std::vector<double>& times, const DispersionParams& p,
                                    const KernelSweepOptions& o)
{
    if (times.empty()) throw std::invalid_argument("small-time sweep needs times");
    SweepResult r;
    r.name = "kernel_decay_small_time";
    r.abscissa = "t";
    const double a = p.alpha();
    for (double t : times) {
        if (!(std::pow(N, a + 1.0) * t < 1.0)) throw std::invalid_argument("small-time sweep needs t < N^{-(alpha+1)}");
        r.points.push_back(kernel_point(N, t, p, o.delta, std::sqrt(N / t)));
        check_point(r, r.points.back(), r.points.size() - 1);
    }
    if (r.points.size() >= 2) r.fit = r.refit("measured");
    return r;
}

}  // namespace dlab
