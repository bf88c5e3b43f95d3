#pragma once

#include "dlab/grid.hpp"
#include "dlab/params.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dlab {

// Binary layout, all little-endian:
//   u64 nx, u64 ny, f64 lx, f64 ly, f64 alpha,
//   then nx*ny pairs (f64 re, f64 im) in storage order (x index slow,
//   wavenumbers in FFT order 0..n/2-1, -n/2..-1).
void write_coefficients(std::ostream& os, const SpectralField2D& f, const DispersionParams& p);
void write_coefficients(const std::string& path, const SpectralField2D& f, const DispersionParams& p);

struct CoefficientFile {
    SpectralField2D field;
    double alpha = 2.0;
};
CoefficientFile read_coefficients(std::istream& is);
CoefficientFile read_coefficients(const std::string& path);

// every frame with its own header, back to back
void write_trajectory(const std::string& path, const std::vector<SpectralField2D>& frames,
                      const DispersionParams& p);

}  // namespace dlab
