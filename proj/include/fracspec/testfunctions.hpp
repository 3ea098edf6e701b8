#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fracspec {

// Far-field envelope |v''(y)| <= constant * |y|^-decay for |y| >= beyond;
// used by the quadrature oracle to place its cutoff.
struct TailBound {
  double constant = 1.0;
  double decay = 4.0;
  double beyond = 10.0;
};

// Reference function bundle: closed forms for v, v', v'' and, where the
// literature provides one, the exact fractional derivative d/dx D^alpha v.
// The exact_frac callable dispatches alpha = 0 to v' and alpha = 1 to v'';
// interior alpha uses the closed form when has_interior_exact is set and
// throws otherwise.
struct TestFunction {
  std::string id;
  std::function<double(double)> v;
  std::function<double(double)> dv;
  std::function<double(double)> d2v;
  std::function<double(double, double)> exact_frac;  // (x, alpha)
  bool has_interior_exact = false;
  double recommended_map_scale = 1.0;
  int regularity = -1;  // max k with v in C^k; -1 means C-infinity
  TailBound tail;
};

// Lookup by id: v1..v8, sech, tanh_step. Throws ConfigError on unknown ids.
const TestFunction& test_function(const std::string& id);

// The quartet v4..v7 of quadratically decaying functions with regularity
// classes C^1..C^4.
std::vector<const TestFunction*> regularity_suite();

// Closed-form fractional derivatives, interior alpha only (0 < alpha < 1).
double exact_frac_v1(double x, double alpha);
double exact_frac_v2(double x, double alpha);
double exact_frac_v3(double x, double alpha);
double exact_frac_v8(double x, double alpha);

// Independent route to d/dx D^alpha v: adaptive quadrature of
// (1/Gamma(1-alpha)) \int_{-inf}^x v''(y) (x-y)^{-alpha} dy with the
// endpoint singularity removed by the substitution y = x - r^{1/(1-alpha)}
// and the far field cut at a point where the tail bound drops below
// tol/10. Valid for 0 <= alpha < 1. Throws NumericError when the
// subdivision budget cannot reach tol.
double brute_force_frac(const std::function<double(double)>& d2v, double x,
                        double alpha, double tol, const TailBound& tail);

}  // namespace fracspec
