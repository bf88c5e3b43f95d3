#pragma once

#include "dlab/grid.hpp"

#include <vector>

namespace dlab {

// Continuum-consistent normalization:
//   F(xi,mu) = (1/2pi) sum_x f(x) e^{-i(xi x + mu y)} dx dy
//   f(x,y)   = (1/2pi) sum_xi F(xi) e^{ i(xi x + mu y)} dxi dmu
// so that sum |f|^2 dx dy = sum |F|^2 dxi dmu and products of fields
// correspond to (1/2pi)-weighted convolutions of their coefficients.
SpectralField2D transform(const RealField2D& f);
RealField2D inverse_transform(const SpectralField2D& F);

// complex-valued physical samples, same normalization
SpectralField2D transform_complex(const Grid2D& g, const std::vector<cplx>& f);
std::vector<cplx> inverse_transform_complex(const SpectralField2D& F);

// Raw unnormalized in-place DFTs. sign = -1 is the forward (e^{-i}) direction.
void dft_2d(std::vector<cplx>& data, std::size_t n0, std::size_t n1, int sign);
void dft_1d(std::vector<cplx>& data, int sign);
void dft_1d(cplx* data, std::size_t n, int sign);

}  // namespace dlab
