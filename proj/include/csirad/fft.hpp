#pragma once

#include "csirad/grid.hpp"

#include <span>

namespace csirad::fft {

/// Unnormalized in-place transforms backed by cached FFTW plans.
/// Safe to call concurrently from OpenMP threads.
void forward(std::span<cplx> data);   // sum_k x[k] e^{-j2πkn/L}
void backward(std::span<cplx> data);  // sum_k x[k] e^{+j2πkn/L}

}  // namespace csirad::fft
