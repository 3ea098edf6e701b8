#include "fracspec/special.hpp"

#include <cmath>
#include <numbers>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace {

constexpr double kPi = std::numbers::pi;

double lanczos_core(double x) {
  // g = 7, n = 9 coefficient set; valid for x >= 0.5.
  static constexpr double kCoeff[] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  const double z = x - 1.0;
  double acc = kCoeff[0];
  for (int i = 1; i < 9; ++i) acc += kCoeff[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

double series_1f1(double a, double b, double z, double stop_rel, long cap) {
  double term = 1.0;
  double sum = 1.0;
  for (long n = 0; n < cap; ++n) {
    term *= (a + n) * z / ((b + n) * (n + 1));
    sum += term;
    if (std::abs(term) < stop_rel * std::abs(sum)) return sum;
  }
  throw NumericError("hyp1f1: series did not converge within term cap");
}

// DLMF 13.7.2, second (algebraic) branch, valid for z -> -inf:
//   1F1(a, b, -y) ~ Gamma(b)/Gamma(b-a) * y^{-a} * sum_s (a)_s (a-b+1)_s / (s! y^s)
double asymptotic_1f1_neg(double a, double b, double y) {
  double term = 1.0;
  double sum = 1.0;
  double prev = std::abs(term);
  for (int s = 0; s < 40; ++s) {
    term *= (a + s) * (a - b + 1.0 + s) / ((s + 1.0) * y);
    if (std::abs(term) >= prev) break;  // asymptotic series: stop at min term
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return gamma_lanczos(b) / gamma_lanczos(b - a) * std::pow(y, -a) * sum;
}

}  // namespace

double gamma_lanczos(double x) {
  if (x < 0.5) {
    // Reflection; poles at non-positive integers surface as division by ~0.
    return kPi / (std::sin(kPi * x) * lanczos_core(1.0 - x));
  }
  return lanczos_core(x);
}

double hyp1f1(double a, double b, double z) {
  constexpr double kStopRel = 1e-17;
  constexpr long kTermCap = 100000;
  if (z >= 0.0) return series_1f1(a, b, z, kStopRel, kTermCap);
  const double y = -z;
  if (y <= 600.0) {
    return std::exp(z) * series_1f1(b - a, b, y, kStopRel, kTermCap);
  }
  return asymptotic_1f1_neg(a, b, y);
}

}  // namespace fracspec
