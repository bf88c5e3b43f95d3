#include "dlab/coeff_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dlab {

namespace {

static_assert(std::endian::native == std::endian::little, "coefficient files assume a little-endian host");

void put_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::uint64_t get_u64(std::istream& is)
{
    std::uint64_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), 8)) throw std::runtime_error("truncated coefficient file");
    return v;
}

double get_f64(std::istream& is)
{
    double v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), 8)) throw std::runtime_error("truncated coefficient file");
    return v;
}

}  // namespace

void write_coefficients(std::ostream& os, const SpectralField2D& f, const DispersionParams& p)
{
    put_u64(os, f.grid.nx);
    put_u64(os, f.grid.ny);
    put_f64(os, f.grid.lx);
    put_f64(os, f.grid.ly);
    put_f64(os, p.alpha());
    for (const cplx& c : f.coeffs) {
        put_f64(os, c.real());
        put_f64(os, c.imag());
    }
}

void write_coefficients(const std::string& path, const SpectralField2D& f, const DispersionParams& p)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_coefficients(os, f, p);
}

CoefficientFile read_coefficients(std::istream& is)
{
    std::uint64_t nx = get_u64(is), ny = get_u64(is);
    double lx = get_f64(is), ly = get_f64(is), alpha = get_f64(is);
    if (nx > (1u << 16) || ny > (1u << 16)) throw std::runtime_error("coefficient file header: implausible grid size");
    CoefficientFile cf;
    cf.field = SpectralField2D(Grid2D(nx, ny, lx, ly), true);
    cf.alpha = alpha;
    for (auto& c : cf.field.coeffs) {
        double re = get_f64(is), im = get_f64(is);
        c = cplx(re, im);
    }
    return cf;
}

CoefficientFile read_coefficients(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open coefficient file " + path);
    return read_coefficients(is);
}

void write_trajectory(const std::string& path, const std::vector<SpectralField2D>& frames,
                      const DispersionParams& p)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& f : frames) write_coefficients(os, f, p);
}

}  // namespace dlab
