#include "fracspec/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracspec/errors.hpp"
#include "fracspec/fft.hpp"

namespace fracspec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_shape(const FourierField& a, const FourierField& b) {
  if (a.n != b.n) throw NumericError("field size mismatch");
}

int half_count(std::size_t samples) {
  if (samples < 4 || samples % 2 != 0) {
    throw NumericError("transform: sample count must be even and at least 4, got " +
                       std::to_string(samples));
  }
  return static_cast<int>(samples / 2);
}

}  // namespace

double FourierField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

FourierField operator+(const FourierField& a, const FourierField& b) {
  require_same_shape(a, b);
  FourierField out = a;
  out.is_real = a.is_real && b.is_real;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

FourierField operator-(const FourierField& a, const FourierField& b) {
  require_same_shape(a, b);
  FourierField out = a;
  out.is_real = a.is_real && b.is_real;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

FourierField operator*(double scale, const FourierField& f) {
  FourierField out = f;
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

void enforce_real_symmetry(FourierField& field) {
  const int n = field.n;
  field.at(-n) = 0.0;
  field.at(0) = std::complex<double>(field.at(0).real(), 0.0);
  for (int k = 1; k < n; ++k) field.at(-k) = std::conj(field.at(k));
  field.is_real = true;
}

FourierField clean_spectrum(FourierField field, CleanPolicy policy) {
  const double threshold = policy.relative_factor * field.max_abs();
  for (auto& c : field.coeffs) {
    if (std::abs(c) < threshold) c = 0.0;
  }
  return field;
}

namespace {

FourierField transform_bins(std::span<const std::complex<double>> samples) {
  const int n = half_count(samples.size());
  const std::size_t n2 = samples.size();
  std::vector<std::complex<double>> bins(samples.begin(), samples.end());
  fft_forward(bins);
  FourierField out;
  out.n = n;
  out.coeffs.resize(n2);
  for (int k = -n; k < n; ++k) {
    const std::size_t bin = static_cast<std::size_t>((k + static_cast<int>(n2)) % static_cast<int>(n2));
    // Phase factor uses the true k, not the aliased bin index.
    const std::complex<double> phase = std::polar(1.0, -k * kPi / (2.0 * n));
    out.at(k) = bins[bin] * phase / static_cast<double>(n2);
  }
  return out;
}

}  // namespace

FourierField forward_transform(std::span<const double> samples,
                               CleanPolicy policy) {
  std::vector<std::complex<double>> complex_samples(samples.begin(), samples.end());
  FourierField out = transform_bins(complex_samples);
  enforce_real_symmetry(out);
  return clean_spectrum(std::move(out), policy);
}

FourierField forward_transform(std::span<const std::complex<double>> samples,
                               CleanPolicy policy) {
  FourierField out = transform_bins(samples);
  out.is_real = false;
  return clean_spectrum(std::move(out), policy);
}

std::vector<std::complex<double>> inverse_transform(const FourierField& field) {
  const int n = field.n;
  const std::size_t n2 = field.coeffs.size();
  std::vector<std::complex<double>> bins(n2, 0.0);
  for (int k = -n; k < n; ++k) {
    const std::size_t bin = static_cast<std::size_t>((k + static_cast<int>(n2)) % static_cast<int>(n2));
    bins[bin] = field.at(k) * std::polar(1.0, k * kPi / (2.0 * n));
  }
  fft_backward(bins);
  return bins;
}

std::vector<double> inverse_transform_real(const FourierField& field) {
  if (!field.is_real) throw NumericError("inverse_transform_real: field is not real");
  const auto values = inverse_transform(field);
  std::vector<double> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) out[j] = values[j].real();
  return out;
}

std::complex<double> evaluate_at(const FourierField& field, double s) {
  std::complex<double> sum = 0.0;
  for (int k = -field.n; k < field.n; ++k) {
    sum += field.at(k) * std::polar(1.0, k * s);
  }
  return sum;
}

std::vector<DiffOperator::Coupling> DiffOperator::couplings(int k) const {
  const double L = map_scale;
  const double kd = static_cast<double>(k);
  const double k2 = kd * kd;
  const double k3 = k2 * kd;
  const std::complex<double> i(0.0, 1.0);
  switch (order) {
    case 1: {
      const double L1 = L;
      return {{+2, i * kd / (4.0 * L1)},
              {0, -i * kd / (2.0 * L1)},
              {-2, i * kd / (4.0 * L1)}};
    }
    case 2: {
      const double L2 = L * L;
      return {{+4, std::complex<double>(-(k2 + 2.0 * kd) / (16.0 * L2), 0.0)},
              {+2, std::complex<double>((k2 + kd) / (4.0 * L2), 0.0)},
              {0, std::complex<double>(-3.0 * k2 / (8.0 * L2), 0.0)},
              {-2, std::complex<double>((k2 - kd) / (4.0 * L2), 0.0)},
              {-4, std::complex<double>(-(k2 - 2.0 * kd) / (16.0 * L2), 0.0)}};
    }
    case 3: {
      const double L3 = L * L * L;
      return {{+6, -i * (k3 + 6.0 * k2 + 8.0 * kd) / (64.0 * L3)},
              {+4, i * (3.0 * k3 + 12.0 * k2 + 12.0 * kd) / (32.0 * L3)},
              {+2, -i * (15.0 * k3 + 30.0 * k2 + 24.0 * kd) / (64.0 * L3)},
              {0, i * (5.0 * k3 + 4.0 * kd) / (16.0 * L3)},
              {-2, -i * (15.0 * k3 - 30.0 * k2 + 24.0 * kd) / (64.0 * L3)},
              {-4, i * (3.0 * k3 - 12.0 * k2 + 12.0 * kd) / (32.0 * L3)},
              {-6, -i * (k3 - 6.0 * k2 + 8.0 * kd) / (64.0 * L3)}};
    }
    default:
      throw NumericError("apply_diff: order must be 1, 2 or 3");
  }
}

FourierField apply_diff(const FourierField& field, int order,
                        double map_scale) {
  const DiffOperator op{order, map_scale};
  FourierField out;
  out.n = field.n;
  out.is_real = field.is_real;
  out.coeffs.assign(field.coeffs.size(), 0.0);
  for (int k = -field.n; k < field.n; ++k) {
    const std::complex<double> c = field.at(k);
    if (c == std::complex<double>(0.0, 0.0)) continue;
    for (const auto& [offset, weight] : op.couplings(k)) {
      const int target = k + offset;
      if (target < -field.n || target >= field.n) continue;  // projection
      out.at(target) += weight * c;
    }
  }
  if (field.is_real) enforce_real_symmetry(out);
  return out;
}

}  // namespace fracspec
