#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dlab {

using cplx = std::complex<double>;

// Periodic box [0,lx) x [0,ly). Storage is row-major with x as the slow index;
// frequency index i maps to the signed wavenumber j = i for i < nx/2 and
// j = i - nx otherwise (the usual FFT ordering).
struct Grid2D {
    std::size_t nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;

    Grid2D() = default;
    Grid2D(std::size_t nx, std::size_t ny, double lx, double ly);

    std::size_t size() const { return nx * ny; }
    std::size_t idx(std::size_t i, std::size_t k) const { return i * ny + k; }

    double dx() const { return lx / double(nx); }
    double dy() const { return ly / double(ny); }
    double dxi() const;
    double dmu() const;

    long jx(std::size_t i) const { return i < nx / 2 ? long(i) : long(i) - long(nx); }
    long jy(std::size_t k) const { return k < ny / 2 ? long(k) : long(k) - long(ny); }
    double xi(std::size_t i) const { return dxi() * double(jx(i)); }
    double mu(std::size_t k) const { return dmu() * double(jy(k)); }
    double x(std::size_t i) const { return dx() * double(i); }
    double y(std::size_t k) const { return dy() * double(k); }

    // storage index of a signed wavenumber pair, wrapped onto the lattice
    std::size_t index_of(long j, long k) const;
    // true if the signed wavenumber lies in {-n/2, ..., n/2-1}
    bool in_range(long j, long k) const;

    // sorted lattices, for reporting
    std::vector<double> xi_lattice() const;
    std::vector<double> mu_lattice() const;

    bool operator==(const Grid2D& o) const
    {
        return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly;
    }
    bool operator!=(const Grid2D& o) const { return !(*this == o); }
};

struct RealField2D {
    Grid2D grid;
    std::vector<double> values;

    RealField2D() = default;
    explicit RealField2D(const Grid2D& g) : grid(g), values(g.size(), 0.0) {}
    double& operator()(std::size_t i, std::size_t k) { return values[grid.idx(i, k)]; }
    double operator()(std::size_t i, std::size_t k) const { return values[grid.idx(i, k)]; }
};

struct SpectralField2D {
    Grid2D grid;
    std::vector<cplx> coeffs;
    bool hermitian = true;

    SpectralField2D() = default;
    explicit SpectralField2D(const Grid2D& g, bool herm = true)
        : grid(g), coeffs(g.size(), cplx(0.0, 0.0)), hermitian(herm) {}
    cplx& operator()(std::size_t i, std::size_t k) { return coeffs[grid.idx(i, k)]; }
    const cplx& operator()(std::size_t i, std::size_t k) const { return coeffs[grid.idx(i, k)]; }
};

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* where);

// max |c(-z) - conj c(z)| / max |c|, skipping Nyquist lines which have no partner
double hermitian_defect(const SpectralField2D& f);

bool all_finite(const SpectralField2D& f);
bool all_finite(const RealField2D& f);

// linear algebra helpers on coefficient arrays
SpectralField2D operator+(const SpectralField2D& a, const SpectralField2D& b);
SpectralField2D operator-(const SpectralField2D& a, const SpectralField2D& b);
SpectralField2D operator*(double s, const SpectralField2D& a);

// sqrt(sum |c|^2 dxi dmu)
double l2_norm(const SpectralField2D& f);
double l2_norm(const RealField2D& f);
// sum over the lattice of conj(a) b dxi dmu
cplx inner(const SpectralField2D& a, const SpectralField2D& b);

}  // namespace dlab
