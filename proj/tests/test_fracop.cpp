#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fracspec/errors.hpp"
#include "fracspec/fracop.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/testfunctions.hpp"

using namespace fracspec;

namespace {

constexpr double kPi = std::numbers::pi;

// Five-term exponential expansion of w_k straight from its mode algebra;
// written independently of the library's trig-combination form.
std::complex<double> w_expanded(int k, double s) {
  const double kd = k;
  const double k2 = kd * kd;
  const double k3 = k2 * kd;
  const std::complex<double> i(0.0, 1.0);
  return i * (k3 + 6.0 * k2 + 8.0 * kd) / 16.0 * std::polar(1.0, (kd + 4.0) * s) -
         i * (k3 + 3.0 * k2 + 2.0 * kd) / 4.0 * std::polar(1.0, (kd + 2.0) * s) +
         i * 3.0 * k3 / 8.0 * std::polar(1.0, kd * s) -
         i * (k3 - 3.0 * k2 + 2.0 * kd) / 4.0 * std::polar(1.0, (kd - 2.0) * s) +
         i * (k3 - 6.0 * k2 + 8.0 * kd) / 16.0 * std::polar(1.0, (kd - 4.0) * s);
}

double matrix_max_abs(const FracOpMatrix& m) {
  double worst = 0.0;
  for (const auto& e : m.entries) worst = std::max(worst, std::abs(e));
  return worst;
}

double matrix_max_diff(const FracOpMatrix& a, const FracOpMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
  }
  return worst;
}

FourierField field_of(const char* id, int n, double map_scale) {
  const SpectralGrid g = SpectralGrid::make(n, map_scale);
  return forward_transform(sample_even_extension(test_function(id).v, g));
}

double operator_error(const FracOpMatrix& op, const char* id, double map_scale,
                      double alpha) {
  const TestFunction& f = test_function(id);
  const SpectralGrid g = SpectralGrid::make(op.n, map_scale);
  const FourierField coeffs = forward_transform(sample_even_extension(f.v, g));
  const auto values = apply_operator(op, coeffs, map_scale);
  double worst = 0.0;
  for (int j = 0; j < op.n; ++j) {
    const double exact = f.exact_frac(g.x_nodes[static_cast<std::size_t>(j)], alpha);
    worst = std::max(worst, std::abs(values[static_cast<std::size_t>(j)] - exact));
  }
  return worst;
}

}  // namespace

TEST_CASE("w kernel basics") {
  for (double s : {0.3, 1.2, 2.9}) CHECK(std::abs(eval_w(0, s)) == 0.0);

  // k = 1 mode content: {e^{5is}: 15i/16, e^{3is}: -3i/2, e^{is}: 3i/8,
  // e^{-is}: 0, e^{-3is}: 3i/16}.
  const std::complex<double> i(0.0, 1.0);
  for (double s : {0.37, 1.1, 2.6}) {
    const std::complex<double> expected =
        i * 15.0 / 16.0 * std::polar(1.0, 5.0 * s) -
        i * 1.5 * std::polar(1.0, 3.0 * s) + i * 3.0 / 8.0 * std::polar(1.0, s) +
        i * 3.0 / 16.0 * std::polar(1.0, -3.0 * s);
    CHECK(std::abs(eval_w(1, s) - expected) <= 1e-14);
  }

  // Trig-combination form against the exponential form.
  CHECK(std::abs(eval_w(3, 0.7) - w_expanded(3, 0.7)) <= 1e-14);
  for (int k : {-5, 2, 7}) {
    for (double s : {0.2, 1.7}) {
      CHECK(std::abs(eval_w(k, s) - w_expanded(k, s)) <= 1e-13 * std::abs(w_expanded(k, s)));
    }
  }

  // Conjugate and half-period symmetries.
  for (int k : {1, 4}) {
    CHECK(std::abs(eval_w(-k, 0.9) - std::conj(eval_w(k, 0.9))) <= 1e-14);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(eval_w(k, 0.9 + kPi) - sign * eval_w(k, 0.9)) <= 1e-13);
  }
}

TEST_CASE("quadrature_apply single entries") {
  for (int j : {0, 3, 7}) {
    CHECK(std::abs(quadrature_apply(0, 0.5, 4, 2, j)) == 0.0);
  }

  // Independent summation for k=2, alpha=0.5, N=4, m=2, j=1 over the
  // 16-node refinement (summation range l = 6..15), including the
  // 1/Gamma(2-alpha) carried by the integration by parts.
  {
    const int n = 4, m = 2, j = 1, k = 2;
    const double alpha = 0.5;
    const double sj = kPi * (2.0 * j + 1.0) / (2.0 * n);
    std::complex<double> expected = 0.0;
    for (int l = 6; l <= 15; ++l) {
      const double sl = kPi * (2.0 * l + 1.0) / (2.0 * (1 << m) * n);
      const double base = std::cos(sj) / std::sin(sj) - std::cos(sl) / std::sin(sl);
      expected += w_expanded(k, sl) * std::pow(base, 1.0 - alpha);
    }
    expected *= kPi / ((1 << m) * n) / std::tgamma(2.0 - alpha);
    CHECK(std::abs(quadrature_apply(k, alpha, n, m, j) - expected) <= 1e-13);
  }

  // Half-period rows carry the (-1)^k sign.
  const std::complex<double> upper = quadrature_apply(3, 0.3, 4, 2, 1);
  const std::complex<double> lower = quadrature_apply(3, 0.3, 4, 2, 5);
  CHECK(std::abs(upper + lower) <= 1e-15 * std::abs(upper));
}

TEST_CASE("fast assembly agrees with the reference loop") {
  for (int n : {2, 4, 8}) {
    for (int m : {1, 2, 3}) {
      for (double alpha : {0.0, 0.37, 1.0}) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(alpha);
        const FracOpMatrix fast = assemble_matrix(alpha, n, m);
        const FracOpMatrix slow = assemble_matrix_reference(alpha, n, m);
        const double scale = std::max(1.0, matrix_max_abs(slow));
        CHECK(matrix_max_diff(fast, slow) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("assembled matrix structure") {
  const FracOpMatrix m = assemble_matrix(0.37, 8, 2);
  for (int j = 0; j < 16; ++j) {
    CHECK(std::abs(m.at(j, 0)) == 0.0);
    for (int k = 1; k < 8; ++k) {
      CHECK(m.at(j, -k) == std::conj(m.at(j, k)));  // exact by construction
    }
  }
}

TEST_CASE("level-1 matrix reproduces the base-table bound for v1") {
  // Table value 5.0137e-3 is the max over the full alpha grid; any single
  // alpha must stay below it (with headroom for the grid difference).
  const FracOpMatrix m = assemble_matrix(0.0, 64, 1);
  CHECK(operator_error(m, "v1", 1.6, 0.0) <= 5.0137e-3 * 1.1);
}

TEST_CASE("errors shrink as the refinement level grows") {
  const double e1 = operator_error(assemble_matrix(0.0, 64, 1), "v1", 1.6, 0.0);
  const double e3 = operator_error(assemble_matrix(0.0, 64, 3), "v1", 1.6, 0.0);
  const double e5 = operator_error(assemble_matrix(0.0, 64, 5), "v1", 1.6, 0.0);
  CHECK(e3 < e1);
  CHECK(e5 < e3);
}

TEST_CASE("ladder weights") {
  const auto single = ladder_weights(0.4, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 1.0);
  for (int count : {2, 4, 6}) {
    const auto w = ladder_weights(0.31, count);
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("extrapolate") {
  const FracOpMatrix m1 = assemble_matrix(0.5, 4, 1);
  const FracOpMatrix m2 = assemble_matrix(0.5, 4, 2);

  // Equal inputs pass through unchanged (the update form adds exactly 0).
  FracOpMatrix m1_copy = m1;
  m1_copy.levels = {2};
  const FracOpMatrix same =
      extrapolate(std::vector<FracOpMatrix>{m1, m1_copy}, 0.5);
  CHECK(same.entries == m1.entries);

  const FracOpMatrix pair = extrapolate(std::vector<FracOpMatrix>{m1, m2}, 0.5);
  REQUIRE(pair.levels == std::vector<int>{1, 2});
  // Matches the explicit weight (2^{2-a} M2 - M1)/(2^{2-a} - 1).
  const double w = std::pow(2.0, 1.5);
  for (std::size_t i = 0; i < pair.entries.size(); ++i) {
    const std::complex<double> direct =
        (w * m2.entries[i] - m1.entries[i]) / (w - 1.0);
    CHECK(std::abs(pair.entries[i] - direct) <= 1e-14 * std::max(1.0, std::abs(direct)));
  }

  // Streamed ladder assembly is the same linear combination.
  std::vector<FracOpMatrix> bases;
  for (int m = 1; m <= 4; ++m) bases.push_back(assemble_matrix(0.31, 8, m));
  const FracOpMatrix nested = extrapolate(bases, 0.31);
  const std::vector<int> m_set{1, 2, 3, 4};
  const FracOpMatrix streamed = assemble_ladder(0.31, 8, m_set);
  const double scale = std::max(1.0, matrix_max_abs(nested));
  CHECK(matrix_max_diff(nested, streamed) <= 1e-12 * scale);

  // Bad input shapes are rejected.
  const FracOpMatrix other_alpha = assemble_matrix(0.25, 4, 2);
  CHECK_THROWS_AS((void)extrapolate(std::vector<FracOpMatrix>{m1, other_alpha}, 0.5),
                  ConfigError);
  const FracOpMatrix m3 = assemble_matrix(0.5, 4, 3);
  CHECK_THROWS_AS((void)extrapolate(std::vector<FracOpMatrix>{m1, m3}, 0.5),
                  ConfigError);
}

TEST_CASE("first extrapolation beats both base levels") {
  const double alpha = 0.5;
  const FracOpMatrix m1 = assemble_matrix(alpha, 64, 1);
  const FracOpMatrix m2 = assemble_matrix(alpha, 64, 2);
  const FracOpMatrix pair = extrapolate(std::vector<FracOpMatrix>{m1, m2}, alpha);
  const double e1 = operator_error(m1, "v1", 1.6, alpha);
  const double e2 = operator_error(m2, "v1", 1.6, alpha);
  const double e12 = operator_error(pair, "v1", 1.6, alpha);
  CHECK(e12 < e2);
  CHECK(e2 < e1);
}

TEST_CASE("apply_operator basics") {
  const FracOpMatrix op = assemble_matrix(0.4, 8, 2);

  FourierField zero;
  zero.n = 8;
  zero.is_real = true;
  zero.coeffs.assign(16, 0.0);
  for (double v : apply_operator(op, zero, 1.0)) CHECK(v == 0.0);

  FourierField constant = zero;
  constant.at(0) = 2.5;
  for (double v : apply_operator(op, constant, 1.0)) CHECK(v == 0.0);

  // Exact homogeneity under power-of-two scaling.
  const FourierField u = field_of("v1", 8, 1.0);
  const auto doubled = apply_operator(op, 2.0 * u, 1.3);
  const auto scaled = apply_operator(op, u, 1.3);
  for (std::size_t j = 0; j < doubled.size(); ++j) {
    CHECK(doubled[j] == 2.0 * scaled[j]);
  }

  // Imaginary residue of a real field stays at rounding level.
  const auto raw = apply_operator_raw(op, u, 1.3);
  double imag_max = 0.0;
  double scale = 0.0;
  for (const auto& v : raw) {
    imag_max = std::max(imag_max, std::abs(v.imag()));
    scale = std::max(scale, std::abs(v));
  }
  CHECK(imag_max <= 1e-10 * std::max(1.0, scale));

  CHECK_THROWS_AS((void)apply_operator(op, field_of("v1", 4, 1.0), 1.0),
                  NumericError);
}

TEST_CASE("operator entries vary continuously in alpha") {
  const FracOpMatrix a = assemble_matrix(0.4, 8, 2);
  const FracOpMatrix b = assemble_matrix(0.401, 8, 2);
  CHECK(matrix_max_diff(a, b) <= 1e-2 * matrix_max_abs(a));
}

TEST_CASE("assembly budget guard") {
  AssemblyOptions opts;
  opts.budget = 64;
  CHECK_THROWS_AS((void)assemble_matrix(0.5, 64, 6, opts), BudgetError);
  const std::vector<int> m_set{1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS((void)assemble_ladder(0.5, 64, m_set, opts), BudgetError);
}

TEST_CASE("assembly counter advances") {
  const std::uint64_t before = assembly_count();
  (void)assemble_matrix(0.5, 4, 1);
  CHECK(assembly_count() == before + 1);
}
