#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracspec/special.hpp"
#include "fracspec/testfunctions.hpp"

using namespace fracspec;

namespace {

double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("lanczos gamma against reference values") {
  CHECK(gamma_lanczos(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_lanczos(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(gamma_lanczos(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(gamma_lanczos(4.7) == doctest::Approx(std::tgamma(4.7)).epsilon(1e-13));
  CHECK(gamma_lanczos(0.001) == doctest::Approx(std::tgamma(0.001)).epsilon(1e-13));
  // Reflection branch, negative non-integer argument.
  CHECK(gamma_lanczos(-0.25) == doctest::Approx(std::tgamma(-0.25)).epsilon(1e-13));
}

TEST_CASE("hyp1f1 identities and branch agreement") {
  // 1F1(a, a, z) = e^z.
  CHECK(hyp1f1(1.5, 1.5, -2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  // 1F1(1, 2, z) = (e^z - 1)/z.
  CHECK(hyp1f1(1.0, 2.0, 0.7) ==
        doctest::Approx((std::exp(0.7) - 1.0) / 0.7).epsilon(1e-14));
  // Kummer vs large-argument asymptotic across the internal switch point.
  for (double a : {1.65, 1.2, 2.35}) {
    const double left = hyp1f1(a, 1.5, -599.0);
    const double right = hyp1f1(a, 1.5, -601.0);
    CHECK(left == doctest::Approx(right).epsilon(5e-3));
    const double kummer = std::exp(-599.0) * hyp1f1(1.5 - a, 1.5, 599.0);
    CHECK(left == doctest::Approx(kummer).epsilon(1e-12));
  }
}

TEST_CASE("bundle derivatives agree with finite differences") {
  for (const char* id :
       {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "sech", "tanh_step"}) {
    const TestFunction& f = test_function(id);
    for (double x : {-2.3, -0.7, 0.5, 1.9}) {
      CAPTURE(id);
      CAPTURE(x);
      const double dv_fd = central_diff(f.v, x, 1e-5);
      CHECK(f.dv(x) == doctest::Approx(dv_fd).epsilon(1e-6));
      const double d2v_fd = central_diff(f.dv, x, 1e-5);
      CHECK(f.d2v(x) == doctest::Approx(d2v_fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("decay conditions at the far left") {
  // |v'(x)| |x|^{1-alpha} and |v''(x)| |x|^{1-alpha} must vanish as
  // x -> -inf; checked as a strict decrease between -1e3 and -1e4, plus
  // absolute smallness for everything that decays faster than v8's log.
  for (const char* id : {"v1", "v2", "v3", "v8"}) {
    const TestFunction& f = test_function(id);
    for (double alpha : {0.1, 0.9}) {
      CAPTURE(std::string(id));
      CAPTURE(alpha);
      const auto weighted = [&](const std::function<double(double)>& g, double x) {
        return std::abs(g(x)) * std::pow(std::abs(x), 1.0 - alpha);
      };
      CHECK(weighted(f.dv, -1e4) <= weighted(f.dv, -1e3));
      CHECK(weighted(f.d2v, -1e4) <= weighted(f.d2v, -1e3));
      if (std::string(id) != "v8") {
        CHECK(weighted(f.dv, -1e3) < 1e-2);
        CHECK(weighted(f.d2v, -1e3) < 1e-2);
      }
    }
  }
}

TEST_CASE("endpoint dispatch of exact fractional derivatives") {
  CHECK(test_function("v1").exact_frac(0.0, 0.0) == doctest::Approx(0.0));
  CHECK(test_function("v1").exact_frac(0.0, 1.0) == doctest::Approx(-2.0));
  CHECK(test_function("v2").exact_frac(0.0, 0.0) == doctest::Approx(0.0));
  CHECK(test_function("v2").exact_frac(0.0, 1.0) == doctest::Approx(-4.0));
  CHECK(test_function("v3").exact_frac(0.0, 0.0) == doctest::Approx(0.0));
  CHECK(test_function("v3").exact_frac(0.0, 1.0) == doctest::Approx(-2.0));
  CHECK(test_function("v8").exact_frac(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(test_function("v8").exact_frac(1.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("regularity suite values") {
  const auto suite = regularity_suite();
  REQUIRE(suite.size() == 4);
  CHECK(suite[0]->regularity == 1);
  CHECK(suite[1]->regularity == 2);
  CHECK(suite[2]->regularity == 3);
  CHECK(suite[3]->regularity == 4);
  CHECK(suite[0]->recommended_map_scale == doctest::Approx(0.1));
  CHECK(suite[1]->recommended_map_scale == doctest::Approx(0.14));
  CHECK(suite[2]->recommended_map_scale == doctest::Approx(0.2));
  CHECK(suite[3]->recommended_map_scale == doctest::Approx(0.28));
  // v4'(1) = -(2-2)/(1+1)^2 = 0; v5''(0) = 0.
  CHECK(suite[0]->dv(1.0) == doctest::Approx(0.0));
  CHECK(suite[1]->d2v(0.0) == doctest::Approx(0.0));
}

TEST_CASE("brute force oracle basics") {
  const TestFunction& v1 = test_function("v1");
  // Constant input: zero for any (x, alpha).
  const auto zero = [](double) { return 0.0; };
  CHECK(brute_force_frac(zero, 0.7, 0.4, 1e-9, TailBound{1.0, 4.0}) ==
        doctest::Approx(0.0));
  // alpha = 0 reduces to v'(x) by the fundamental theorem.
  CHECK(brute_force_frac(v1.d2v, 1.0, 0.0, 1e-9, v1.tail) ==
        doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("closed forms and quadrature oracle agree on a spot grid") {
  for (const char* id : {"v1", "v2", "v3", "v8"}) {
    const TestFunction& f = test_function(id);
    for (double alpha : {0.2, 0.5, 0.8}) {
      for (double x : {-2.0, 0.3, 3.0}) {
        CAPTURE(std::string(id));
        CAPTURE(alpha);
        CAPTURE(x);
        const double closed = f.exact_frac(x, alpha);
        const double brute = brute_force_frac(f.d2v, x, alpha, 1e-9, f.tail);
        CHECK(std::abs(closed - brute) <= 1e-8);
      }
    }
  }
}

TEST_CASE("exact fractional derivatives are continuous at the endpoints") {
  for (const char* id : {"v1", "v2", "v3", "v8"}) {
    const TestFunction& f = test_function(id);
    for (double x : {-1.5, 0.4, 2.0}) {
      CAPTURE(id);
      CAPTURE(x);
      CHECK(f.exact_frac(x, 1e-3) == doctest::Approx(f.dv(x)).epsilon(1e-2).scale(1.0));
      CHECK(f.exact_frac(x, 1.0 - 1e-3) ==
            doctest::Approx(f.d2v(x)).epsilon(1e-2).scale(1.0));
    }
  }
}
