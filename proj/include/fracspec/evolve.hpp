#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "fracspec/fourier.hpp"
#include "fracspec/fracop.hpp"

namespace fracspec {

struct EvolutionParams {
  double dt = 0.01;
  double tau = 1.0;
  double alpha = 1.0 / 3.0;
  double map_scale = 20.0;
  CleanPolicy clean{};
  bool dealias = false;
};

// Factorization of (lead - dt*tau*d^3/dx^3) in coefficient space. The
// third-derivative couplings move modes by even offsets only, so even and
// odd modes decouple into two banded systems of half size (bandwidth 3 in
// the packed index); each factors once and is reused every step.
class ImplicitSolver {
 public:
  static ImplicitSolver make(double lead, double dt, double tau,
                             double map_scale, int n);

  std::vector<std::complex<double>> solve(
      std::span<const std::complex<double>> rhs) const;

  int n() const { return n_; }

 private:
  struct ParityBand {
    int size = 0;
    int k_min = 0;
    std::vector<std::complex<double>> factors;  // LAPACK band storage
    std::vector<int> pivots;
  };

  static ParityBand factor_parity(double lead, double dt_tau, double map_scale,
                                  int n, int parity);
  void solve_parity(const ParityBand& band,
                    std::span<const std::complex<double>> rhs,
                    std::span<std::complex<double>> out) const;

  int n_ = 0;
  ParityBand even_;
  ParityBand odd_;
};

// Two-level state of the SBDF2 recurrence. rhs_previous caches the
// explicit right-hand side of `previous` so each step evaluates it once.
struct EvolutionState {
  FourierField current;
  FourierField previous;
  double t = 0.0;
  long step = 0;
  EvolutionParams params;
  const FracOpMatrix* op = nullptr;
  std::optional<FourierField> rhs_previous;
};

// Coefficients of d/dx D^alpha v - d/dx(v^2): fractional term through the
// operator matrix, nonlinear term squared pointwise at the nodes. No
// dealiasing unless the params flag asks for the 2/3 rule.
FourierField rhs_explicit(const FourierField& field, const FracOpMatrix& op,
                          const EvolutionParams& params);

// Builds (v0, v1): v1 integrates to dt with the first-order semi-implicit
// Euler scheme at 1, 2, 4 and 8 substeps, combined by the first-order
// Richardson table (fourth-order accurate).
EvolutionState init_first_step(const FourierField& v0,
                               const EvolutionParams& params,
                               const FracOpMatrix& op);

ImplicitSolver make_sbdf2_solver(const EvolutionParams& params, int n);

void sbdf2_step(EvolutionState& state, const ImplicitSolver& solver);

struct WaveDiagnostics {
  double position = 0.0;
  double speed_estimate = 0.0;  // NaN until a previous fix is supplied
  double overshoot = 0.0;       // max(max v - 1, -min v)
};

// x where the profile crosses `level`, located by nodal scan plus
// bisection on the spectral evaluation. Throws NumericError when the
// profile never crosses.
double front_position(const FourierField& field, double map_scale,
                      double level);

WaveDiagnostics wave_diagnostics(
    const EvolutionState& state, double level,
    std::optional<std::pair<double, double>> previous_fix);  // (t, position)

// max over |k| > fraction*N of |u_hat| relative to the overall maximum.
double spectral_tail_ratio(const FourierField& field, double fraction);

// Richardson table for a first-order base method under step halving;
// levels ordered coarse to fine (1, 2, 4, ... substeps). Works for any V
// with +, - and double* (fields, plain doubles).
template <class V>
V richardson_first_order(std::vector<V> levels) {
  for (std::size_t depth = 1; depth < levels.size(); ++depth) {
    const double denom = std::pow(2.0, static_cast<double>(depth)) - 1.0;
    for (std::size_t i = levels.size() - 1; i >= depth; --i) {
      levels[i] = levels[i] + (1.0 / denom) * (levels[i] - levels[i - 1]);
    }
  }
  return levels.back();
}

}  // namespace fracspec
