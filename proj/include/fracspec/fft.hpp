#pragma once

#include <complex>
#include <span>

namespace fracspec {

// Thin wrappers over FFTW, in-place and unnormalized.
//   fft_forward:  X[v] = sum_j x[j] exp(-2 pi i j v / n)
//   fft_backward: X[v] = sum_j x[j] exp(+2 pi i j v / n)
// Plans are cached per length with FFTW_ESTIMATE so results are
// reproducible run to run; execution is thread-safe.
void fft_forward(std::span<std::complex<double>> data);
void fft_backward(std::span<std::complex<double>> data);

}  // namespace fracspec
