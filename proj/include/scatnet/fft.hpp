#pragma once

#include "scatnet/grid.hpp"

// Transforms scaled so that spectral samples approximate the continuous
// Fourier integral: spectral = dx^d * DFT(spatial), spatial = dw^d * IDFT
// (unnormalized DFTs; dx * dw * n = 1 makes the pair inverse to each other
// and the measure-weighted Parseval identity exact).  Plans are cached per
// (dim, n, direction) behind a mutex; execution is thread-safe on disjoint
// arrays and bitwise reproducible (FFTW_ESTIMATE).

namespace scatnet::fft {

void forward(const FrequencyGrid& grid, const cplx* spatial, cplx* spectral);
void backward(const FrequencyGrid& grid, const cplx* spectral, cplx* spatial);

}  // namespace scatnet::fft
