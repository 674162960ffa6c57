#pragma once
#include <complex>

namespace kdvg::detail {

// Unnormalized real <-> half-complex transforms of length n (FFTW, estimate plans).
// out_half / in_half hold n/2 + 1 entries.
void r2c(int n, const double* in, std::complex<double>* out_half);
void c2r(int n, const std::complex<double>* in_half, double* out);

}  // namespace kdvg::detail
