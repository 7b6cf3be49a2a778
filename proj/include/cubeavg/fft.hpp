// Power-of-two FFT and the linear convolution used by the fast cubic kernels.
#pragma once

#include <span>
#include <vector>

#include "cubeavg/numeric.hpp"

namespace cubeavg {

// In-place radix-2 FFT; size of a must be a power of two.
void fft_pow2(std::vector<cplx>& a, bool inverse);

// w[m] = sum_{i+j=m} u[i] v[j], m = 0 .. |u|+|v|-2, via zero-padded FFT.
// Rejects empty inputs.
std::vector<cplx> linear_convolution(std::span<const cplx> u, std::span<const cplx> v);

}  // namespace cubeavg
