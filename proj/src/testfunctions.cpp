#include "fracspec/testfunctions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "fracspec/errors.hpp"
#include "fracspec/special.hpp"

namespace fracspec {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

TestFunction make_function(std::string id, std::function<double(double)> v,
                           std::function<double(double)> dv,
                           std::function<double(double)> d2v,
                           double (*interior)(double, double), double map_scale,
                           int regularity, TailBound tail) {
  TestFunction f;
  f.id = std::move(id);
  f.v = std::move(v);
  f.dv = std::move(dv);
  f.d2v = std::move(d2v);
  f.has_interior_exact = interior != nullptr;
  f.recommended_map_scale = map_scale;
  f.regularity = regularity;
  f.tail = tail;
  // Capture by value; the bundle outlives any caller.
  f.exact_frac = [interior, fv = f.dv, fvv = f.d2v, fid = f.id](
                     double x, double alpha) -> double {
    if (alpha <= 0.0) return fv(x);
    if (alpha >= 1.0) return fvv(x);
    if (interior == nullptr) {
      throw NumericError("test function " + fid +
                         " has no closed-form fractional derivative for interior alpha");
    }
    return interior(x, alpha);
  };
  return f;
}

}  // namespace

double exact_frac_v1(double x, double alpha) {
  const double phase = alpha * kPi / 2.0 + (1.0 + alpha) * std::atan(x);
  const double pre = -kPi * alpha * (1.0 + alpha) / (std::sin(alpha * kPi) * gamma_lanczos(1.0 - alpha));
  return pre * std::pow(1.0 + x * x, -(3.0 + alpha) / 2.0) *
         (std::sin(phase) + x * std::cos(phase));
}

double exact_frac_v2(double x, double alpha) {
  const double x2 = x * x;
  const double atanx = std::atan(x);
  const double pre = kPi * alpha * (1.0 + alpha) / (4.0 * gamma_lanczos(1.0 - alpha));
  const double sec_part =
      (1.0 / std::cos(alpha * kPi / 2.0)) *
      (((3.0 * alpha + 8.0) * x - alpha * x2 * x) * std::sin(alpha * atanx) +
       (-3.0 - alpha + (6.0 + 3.0 * alpha) * x2 + x2 * x2) * std::cos(alpha * atanx));
  const double csc_part =
      (1.0 / std::sin(alpha * kPi / 2.0)) * std::sqrt(1.0 + x2) *
      ((-3.0 - alpha + (1.0 + alpha) * x2) * std::sin((1.0 + alpha) * atanx) -
       (5.0 * x + 2.0 * alpha * x + x2 * x) * std::cos((1.0 + alpha) * atanx));
  return pre * std::pow(1.0 + x2, -3.0 - alpha / 2.0) * (sec_part + csc_part);
}

double exact_frac_v3(double x, double alpha) {
  const double x2 = x * x;
  const double t1 = -6.0 * (1.0 + alpha) * gamma_lanczos(1.0 - alpha / 2.0) * x *
                    hyp1f1((3.0 + alpha) / 2.0, 1.5, -x2);
  const double t2 = -3.0 * alpha * gamma_lanczos((1.0 - alpha) / 2.0) *
                    hyp1f1(1.0 + alpha / 2.0, 1.5, -x2);
  const double t3 = (4.0 * alpha + 2.0 * alpha * alpha) *
                    gamma_lanczos((1.0 - alpha) / 2.0) * x2 *
                    hyp1f1(2.0 + alpha / 2.0, 2.5, -x2);
  return (t1 + t2 + t3) / (3.0 * gamma_lanczos(1.0 - alpha));
}

double exact_frac_v8(double x, double alpha) {
  const double phase = alpha * kPi / 2.0 + alpha * std::atan(x);
  const double pre = 2.0 * kPi * alpha / (std::sin(alpha * kPi) * gamma_lanczos(1.0 - alpha));
  return pre * std::pow(1.0 + x * x, -1.0 - alpha / 2.0) *
         (std::sin(phase) + x * std::cos(phase));
}

namespace {

const TestFunction& bundle(const std::string& id) {
  static const std::vector<TestFunction> kFunctions = [] {
    std::vector<TestFunction> fs;
    fs.push_back(make_function(
        "v1", [](double x) { return 1.0 / (1.0 + x * x); },
        [](double x) { return -2.0 * x / sq(1.0 + x * x); },
        [](double x) { return (6.0 * x * x - 2.0) / (sq(1.0 + x * x) * (1.0 + x * x)); },
        &exact_frac_v1, 1.6, -1, TailBound{8.0, 4.0}));
    fs.push_back(make_function(
        "v2", [](double x) { return 1.0 / sq(1.0 + x * x); },
        [](double x) { return -4.0 * x / (sq(1.0 + x * x) * (1.0 + x * x)); },
        [](double x) { return (20.0 * x * x - 4.0) / sq(sq(1.0 + x * x)); },
        &exact_frac_v2, 1.1, -1, TailBound{25.0, 6.0}));
    fs.push_back(make_function(
        "v3", [](double x) { return std::exp(-x * x); },
        [](double x) { return -2.0 * x * std::exp(-x * x); },
        [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); },
        &exact_frac_v3, 4.0, -1, TailBound{1.0, 8.0}));
    fs.push_back(make_function(
        "v4", [](double x) { return x * std::abs(x) / (1.0 + std::pow(x, 4)); },
        [](double x) {
          const double a = std::abs(x);
          return -(2.0 * std::pow(a, 5) - 2.0 * a) / sq(1.0 + std::pow(x, 4));
        },
        [](double x) {
          const double d = 1.0 + std::pow(x, 4);
          const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
          return (6.0 * std::pow(x, 8) - 24.0 * std::pow(x, 4) + 2.0) / (d * d * d) * s;
        },
        nullptr, 0.1, 1, TailBound{8.0, 4.0}));
    fs.push_back(make_function(
        "v5",
        [](double x) {
          const double a = std::abs(x);
          return a * a * a / (1.0 + std::pow(a, 5));
        },
        [](double x) {
          const double a = std::abs(x);
          return -(2.0 * std::pow(x, 7) - 3.0 * x * a) / sq(1.0 + std::pow(a, 5));
        },
        [](double x) {
          const double a = std::abs(x);
          const double d = 1.0 + std::pow(a, 5);
          return (6.0 * std::pow(a, 11) - 38.0 * std::pow(x, 6) + 6.0 * a) / (d * d * d);
        },
        nullptr, 0.14, 2, TailBound{8.0, 4.0}));
    fs.push_back(make_function(
        "v6",
        [](double x) { return x * x * x * std::abs(x) / (1.0 + std::pow(x, 6)); },
        [](double x) {
          const double a = std::abs(x);
          return -(2.0 * std::pow(a, 9) - 4.0 * a * a * a) / sq(1.0 + std::pow(x, 6));
        },
        [](double x) {
          const double d = 1.0 + std::pow(x, 6);
          return (6.0 * std::pow(x, 13) - 54.0 * std::pow(x, 7) + 12.0 * x) /
                 (d * d * d) * std::abs(x);
        },
        nullptr, 0.2, 3, TailBound{8.0, 4.0}));
    fs.push_back(make_function(
        "v7",
        [](double x) {
          const double a = std::abs(x);
          return std::pow(a, 5) / (1.0 + std::pow(a, 7));
        },
        [](double x) {
          const double a = std::abs(x);
          return -(2.0 * std::pow(x, 11) - 5.0 * x * x * x * a) / sq(1.0 + std::pow(a, 7));
        },
        [](double x) {
          const double a = std::abs(x);
          const double d = 1.0 + std::pow(a, 7);
          return (6.0 * std::pow(a, 17) - 72.0 * std::pow(x, 10) + 20.0 * a * a * a) /
                 (d * d * d);
        },
        nullptr, 0.28, 4, TailBound{8.0, 4.0}));
    fs.push_back(make_function(
        "v8", [](double x) { return std::log1p(x * x); },
        [](double x) { return 2.0 * x / (1.0 + x * x); },
        [](double x) { return (2.0 - 2.0 * x * x) / sq(1.0 + x * x); },
        &exact_frac_v8, 30.4, -1, TailBound{3.0, 2.0}));
    fs.push_back(make_function(
        "sech", [](double x) { return 1.0 / std::cosh(x); },
        [](double x) { return -std::tanh(x) / std::cosh(x); },
        [](double x) {
          const double t = std::tanh(x);
          return (2.0 * t * t - 1.0) / std::cosh(x);
        },
        // No power law decays as slowly as sech beyond |y| = 10, so a
        // generous constant makes the |y|^-8 envelope valid there.
        nullptr, 3.9, -1, TailBound{1.0e4, 8.0}));
    fs.push_back(make_function(
        "tanh_step", [](double x) { return 0.5 * (1.0 - std::tanh(x)); },
        [](double x) { return -0.5 * sq(1.0 / std::cosh(x)); },
        [](double x) { return sq(1.0 / std::cosh(x)) * std::tanh(x); },
        nullptr, 20.0, -1, TailBound{1.0e4, 8.0}));
    return fs;
  }();
  for (const auto& f : kFunctions) {
    if (f.id == id) return f;
  }
  throw ConfigError("unknown test function id: " + id);
}

}  // namespace

const TestFunction& test_function(const std::string& id) { return bundle(id); }

std::vector<const TestFunction*> regularity_suite() {
  return {&test_function("v4"), &test_function("v5"), &test_function("v6"),
          &test_function("v7")};
}

double brute_force_frac(const std::function<double(double)>& d2v, double x,
                        double alpha, double tol, const TailBound& tail) {
  if (alpha < 0.0 || alpha >= 1.0) {
    throw NumericError("brute_force_frac: requires 0 <= alpha < 1");
  }
  using boost::math::quadrature::gauss_kronrod;
  // The flattening substitution leaves weak endpoint singularities in the
  // integrand's higher derivatives; the near piece needs deep subdivision
  // before its error estimate settles.
  constexpr unsigned kNearDepth = 20;
  constexpr unsigned kMidDepth = 12;

  // I = (1/Gamma(1-alpha)) int_0^inf v''(x-u) u^{-alpha} du, split at u = delta.
  const double delta = 1.0;
  const double inv_exp = 1.0 / (1.0 - alpha);

  double total_error = 0.0;

  // Near piece: u = r^{1/(1-alpha)} removes the u^{-alpha} singularity.
  const auto near_integrand = [&](double r) {
    return d2v(x - std::pow(r, inv_exp));
  };
  // Ask for a couple of digits beyond tol but stay above the roundoff
  // floor; pushing the relative target below it makes the accumulated
  // error estimate grow instead of shrink.
  const double near_tol = std::max(tol * 1e-2, 5e-12);
  double err = 0.0;
  double near = gauss_kronrod<double, 15>::integrate(
      near_integrand, 0.0, std::pow(delta, 1.0 - alpha), kNearDepth, near_tol, &err);
  near *= inv_exp;
  total_error += err * inv_exp;

  // Far cutoff: beyond Y the envelope bound keeps the tail below tol/10.
  const double p = tail.decay;
  const double envelope = tail.constant * std::pow(2.0, p) / (p + alpha - 1.0);
  double cutoff = std::pow(10.0 * envelope / tol, 1.0 / (p + alpha - 1.0));
  cutoff = std::max({1e3, 2.0 * std::abs(x) + 2.0 * tail.beyond, cutoff});

  // Mid piece over geometric segments; each is smooth and short in log u.
  const auto mid_integrand = [&](double u) {
    return d2v(x - u) * std::pow(u, -alpha);
  };
  double mid = 0.0;
  double lo = delta;
  while (lo < cutoff) {
    const double hi = std::min(lo * 2.0, cutoff);
    err = 0.0;
    mid += gauss_kronrod<double, 15>::integrate(mid_integrand, lo, hi, kMidDepth,
                                                1e-13, &err);
    total_error += err;
    lo = hi;
  }

  const double gamma_factor = gamma_lanczos(1.0 - alpha);
  total_error = total_error / gamma_factor + tol / 10.0;
  if (!(total_error <= tol)) {
    throw NumericError("brute_force_frac: requested tolerance not reached");
  }
  return (near + mid) / gamma_factor;
}

}  // namespace fracspec
