#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fracspec {

// Relative spectrum-cleaning policy: modes below
// relative_factor * max_k |u_hat(k)| are rounded to zero.
struct CleanPolicy {
  double relative_factor = 2.2204e-16;
};

// Truncated Fourier representation u(s) ~ sum_{k=-N}^{N-1} u_hat(k) e^{iks}
// on the shifted nodes s_j = pi(2j+1)/(2N). Coefficients are stored by
// k + N, so index 0 holds k = -N.
//
// Real fields keep the Hermitian pairing u_hat(-k) = conj(u_hat(k)),
// u_hat(0) real, and u_hat(-N) = 0; the unpaired -N bin is projected out
// so differentiation stays reality-preserving.
struct FourierField {
  int n = 0;  // N
  bool is_real = false;
  std::vector<std::complex<double>> coeffs;  // size 2N

  std::complex<double> at(int k) const {
    return coeffs[static_cast<std::size_t>(k + n)];
  }
  std::complex<double>& at(int k) {
    return coeffs[static_cast<std::size_t>(k + n)];
  }
  double max_abs() const;
};

FourierField operator+(const FourierField& a, const FourierField& b);
FourierField operator-(const FourierField& a, const FourierField& b);
FourierField operator*(double scale, const FourierField& f);

// Analysis on the shifted grid, including the per-mode phase factor
// e^{-ik pi/(2N)}; O(N log N). The real-sample overload builds a real
// field (Hermitian symmetry imposed, Nyquist bin zeroed); the complex
// overload is a full bijection. Both apply the cleaning policy.
FourierField forward_transform(std::span<const double> samples,
                               CleanPolicy policy = {});
FourierField forward_transform(std::span<const std::complex<double>> samples,
                               CleanPolicy policy = {});

// Synthesis at the 2N nodes; O(N log N).
std::vector<std::complex<double>> inverse_transform(const FourierField& field);
// Same, discarding the rounding-level imaginary residue. Requires is_real.
std::vector<double> inverse_transform_real(const FourierField& field);

// Direct summation of the series at an arbitrary angle.
std::complex<double> evaluate_at(const FourierField& field, double s);

FourierField clean_spectrum(FourierField field, CleanPolicy policy = {});

// Projects a field onto the real-valued subspace (Hermitian pairing plus
// zero Nyquist bin). No-op content-wise for fields that already satisfy it.
void enforce_real_symmetry(FourierField& field);

// Spectral differentiation d/dx of order 1, 2 or 3 under x = L cot(s).
// Mode k couples only to k + even offsets within +/- 2*order; couplings
// falling outside [-N, N-1] are dropped (truncated-series projection).
struct DiffOperator {
  int order = 1;
  double map_scale = 1.0;

  struct Coupling {
    int offset;
    std::complex<double> weight;
  };
  // Weights feeding output mode k+offset for a unit input at mode k.
  std::vector<Coupling> couplings(int k) const;
};

FourierField apply_diff(const FourierField& field, int order,
                        double map_scale);

}  // namespace fracspec
