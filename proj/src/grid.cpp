#include "dlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dlab {

namespace {
bool pow2(std::size_t n) { return n >= 8 && (n & (n - 1)) == 0; }
}

Grid2D::Grid2D(std::size_t nx_, std::size_t ny_, double lx_, double ly_)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_)
{
    if (!pow2(nx) || !pow2(ny))
        throw std::invalid_argument("grid sizes must be powers of two >= 8, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
        throw std::invalid_argument("box lengths must be positive and finite");
}

double Grid2D::dxi() const { return 2.0 * std::numbers::pi / lx; }
double Grid2D::dmu() const { return 2.0 * std::numbers::pi / ly; }

std::size_t Grid2D::index_of(long j, long k) const
{
    long n1 = long(nx), n2 = long(ny);
    long a = ((j % n1) + n1) % n1;
    long b = ((k % n2) + n2) % n2;
    return idx(std::size_t(a), std::size_t(b));
}

bool Grid2D::in_range(long j, long k) const
{
    return j >= -long(nx / 2) && j < long(nx / 2) && k >= -long(ny / 2) && k < long(ny / 2);
}

std::vector<double> Grid2D::xi_lattice() const
{
    std::vector<double> v(nx);
    for (std::size_t i = 0; i < nx; ++i) v[i] = dxi() * (double(i) - double(nx / 2));
    return v;
}

std::vector<double> Grid2D::mu_lattice() const
{
    std::vector<double> v(ny);
    for (std::size_t k = 0; k < ny; ++k) v[k] = dmu() * (double(k) - double(ny / 2));
    return v;
}

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where)
{
    if (a != b) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

double hermitian_defect(const SpectralField2D& f)
{
    const Grid2D& g = f.grid;
    double amax = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < g.nx; ++i)
        for (std::size_t k = 0; k < g.ny; ++k) {
            amax = std::max(amax, std::abs(f(i, k)));
            if (i == g.nx / 2 || k == g.ny / 2) continue;
            const cplx& partner = f.coeffs[g.index_of(-g.jx(i), -g.jy(k))];
            dmax = std::max(dmax, std::abs(partner - std::conj(f(i, k))));
        }
    return amax > 0.0 ? dmax / amax : 0.0;
}

bool all_finite(const SpectralField2D& f)
{
    return std::all_of(f.coeffs.begin(), f.coeffs.end(),
                       [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

bool all_finite(const RealField2D& f)
{
    return std::all_of(f.values.begin(), f.values.end(), [](double v) { return std::isfinite(v); });
}

SpectralField2D operator+(const SpectralField2D& a, const SpectralField2D& b)
{
    require_same_grid(a.grid, b.grid, "operator+");
    SpectralField2D r(a.grid, a.hermitian && b.hermitian);
    for (std::size_t n = 0; n < r.coeffs.size(); ++n) r.coeffs[n] = a.coeffs[n] + b.coeffs[n];
    return r;
}

SpectralField2D operator-(const SpectralField2D& a, const SpectralField2D& b)
{
    require_same_grid(a.grid, b.grid, "operator-");
    SpectralField2D r(a.grid, a.hermitian && b.hermitian);
    for (std::size_t n = 0; n < r.coeffs.size(); ++n) r.coeffs[n] = a.coeffs[n] - b.coeffs[n];
    return r;
}

SpectralField2D operator*(double s, const SpectralField2D& a)
{
    SpectralField2D r(a.grid, a.hermitian);
    for (std::size_t n = 0; n < r.coeffs.size(); ++n) r.coeffs[n] = s * a.coeffs[n];
    return r;
}

double l2_norm(const SpectralField2D& f)
{
    double s = 0.0;
    for (const auto& c : f.coeffs) s += std::norm(c);
    return std::sqrt(s * f.grid.dxi() * f.grid.dmu());
}

double l2_norm(const RealField2D& f)
{
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * f.grid.dx() * f.grid.dy());
}

cplx inner(const SpectralField2D& a, const SpectralField2D& b)
{
    require_same_grid(a.grid, b.grid, "inner");
    cplx s = 0.0;
    for (std::size_t n = 0; n < a.coeffs.size(); ++n) s += std::conj(a.coeffs[n]) * b.coeffs[n];
    return s * (a.grid.dxi() * a.grid.dmu());
}

}  // namespace dlab
