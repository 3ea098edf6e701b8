#include "fracspec/evolve.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBandwidth = 3;  // offsets +/-2, +/-4, +/-6 pack to +/-1..3

int parity_of(int k) { return ((k % 2) + 2) % 2; }

void dealias_top_third(FourierField& field) {
  const int cutoff = (2 * field.n) / 3;
  for (int k = -field.n; k < field.n; ++k) {
    if (std::abs(k) >= cutoff) field.at(k) = 0.0;
  }
}

}  // namespace

ImplicitSolver::ParityBand ImplicitSolver::factor_parity(double lead,
                                                         double dt_tau,
                                                         double map_scale,
                                                         int n, int parity) {
  ParityBand band;
  band.k_min = (parity_of(-n) == parity) ? -n : -n + 1;
  band.size = n;
  const int kl = kBandwidth;
  const int ku = kBandwidth;
  const int ldab = 2 * kl + ku + 1;
  band.factors.assign(static_cast<std::size_t>(ldab) * band.size, 0.0);
  const DiffOperator d3{3, map_scale};
  for (int p_in = 0; p_in < band.size; ++p_in) {
    const int k = band.k_min + 2 * p_in;
    for (const auto& [offset, weight] : d3.couplings(k)) {
      const int mode = k + offset;
      if (mode < -n || mode >= n) continue;  // projection at the mode boundary
      const int p_out = (mode - band.k_min) / 2;
      const std::size_t slot =
          static_cast<std::size_t>(p_in) * ldab + (kl + ku + p_out - p_in);
      band.factors[slot] -= dt_tau * weight;
    }
    const std::size_t diag = static_cast<std::size_t>(p_in) * ldab + (kl + ku);
    band.factors[diag] += lead;
  }
  band.pivots.assign(band.size, 0);
  const int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, band.size, band.size, kl, ku,
                                  band.factors.data(), ldab, band.pivots.data());
  if (info != 0) {
    throw NumericError("implicit solver: banded factorization failed (info=" +
                       std::to_string(info) + ")");
  }
  return band;
}

ImplicitSolver ImplicitSolver::make(double lead, double dt, double tau,
                                    double map_scale, int n) {
  if (!(tau > 0.0) || !(dt > 0.0)) {
    throw ConfigError("implicit solver: dt and tau must be positive");
  }
  ImplicitSolver s;
  s.n_ = n;
  s.even_ = factor_parity(lead, dt * tau, map_scale, n, 0);
  s.odd_ = factor_parity(lead, dt * tau, map_scale, n, 1);
  return s;
}

void ImplicitSolver::solve_parity(const ParityBand& band,
                                  std::span<const std::complex<double>> rhs,
                                  std::span<std::complex<double>> out) const {
  std::vector<std::complex<double>> b(static_cast<std::size_t>(band.size));
  for (int p = 0; p < band.size; ++p) {
    b[static_cast<std::size_t>(p)] =
        rhs[static_cast<std::size_t>(band.k_min + 2 * p + n_)];
  }
  const int kl = kBandwidth;
  const int ku = kBandwidth;
  const int ldab = 2 * kl + ku + 1;
  const int info = LAPACKE_zgbtrs(
      LAPACK_COL_MAJOR, 'N', band.size, kl, ku, 1,
      const_cast<std::complex<double>*>(band.factors.data()), ldab,
      const_cast<int*>(band.pivots.data()), b.data(), band.size);
  if (info != 0) throw NumericError("implicit solver: banded solve failed");
  for (int p = 0; p < band.size; ++p) {
    out[static_cast<std::size_t>(band.k_min + 2 * p + n_)] =
        b[static_cast<std::size_t>(p)];
  }
}

std::vector<std::complex<double>> ImplicitSolver::solve(
    std::span<const std::complex<double>> rhs) const {
  if (rhs.size() != 2 * static_cast<std::size_t>(n_)) {
    throw NumericError("implicit solver: rhs size mismatch");
  }
  std::vector<std::complex<double>> out(rhs.size());
  solve_parity(even_, rhs, out);
  solve_parity(odd_, rhs, out);
  return out;
}

FourierField rhs_explicit(const FourierField& field, const FracOpMatrix& op,
                          const EvolutionParams& params) {
  const std::vector<double> frac_nodal =
      apply_operator(op, field, params.map_scale);
  const FourierField frac = forward_transform(frac_nodal, params.clean);

  FourierField base = field;
  if (params.dealias) dealias_top_third(base);
  std::vector<double> values = inverse_transform_real(base);
  for (double& v : values) v *= v;
  FourierField squared = forward_transform(values, params.clean);
  if (params.dealias) dealias_top_third(squared);

  return frac - apply_diff(squared, 1, params.map_scale);
}

ImplicitSolver make_sbdf2_solver(const EvolutionParams& params, int n) {
  return ImplicitSolver::make(1.5, params.dt, params.tau, params.map_scale, n);
}

EvolutionState init_first_step(const FourierField& v0,
                               const EvolutionParams& params,
                               const FracOpMatrix& op) {
  if (v0.n != op.n) throw NumericError("init_first_step: operator/field size mismatch");
  const std::size_t dim = v0.coeffs.size();
  std::vector<FourierField> levels;
  for (int substeps : {1, 2, 4, 8}) {
    const double h = params.dt / substeps;
    const ImplicitSolver euler =
        ImplicitSolver::make(1.0, h, params.tau, params.map_scale, v0.n);
    FourierField v = v0;
    for (int i = 0; i < substeps; ++i) {
      const FourierField f = rhs_explicit(v, op, params);
      std::vector<std::complex<double>> rhs(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        rhs[c] = v.coeffs[c] + h * f.coeffs[c];
      }
      v.coeffs = euler.solve(rhs);
      // No spectrum cleaning inside the ladder; the threshold cut would
      // perturb the smooth step-size expansion the table relies on.
      enforce_real_symmetry(v);
    }
    levels.push_back(std::move(v));
  }
  FourierField v1 = richardson_first_order(std::move(levels));
  enforce_real_symmetry(v1);
  v1 = clean_spectrum(std::move(v1), params.clean);

  EvolutionState state;
  state.params = params;
  state.op = &op;
  state.rhs_previous = rhs_explicit(v0, op, params);
  state.previous = v0;
  state.current = std::move(v1);
  state.step = 1;
  state.t = params.dt;
  return state;
}

void sbdf2_step(EvolutionState& state, const ImplicitSolver& solver) {
  const EvolutionParams& p = state.params;
  FourierField f_curr = rhs_explicit(state.current, *state.op, p);
  if (!state.rhs_previous.has_value()) {
    state.rhs_previous = rhs_explicit(state.previous, *state.op, p);
  }
  const FourierField& f_prev = *state.rhs_previous;

  const std::size_t dim = state.current.coeffs.size();
  std::vector<std::complex<double>> rhs(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    rhs[c] = 2.0 * state.current.coeffs[c] - 0.5 * state.previous.coeffs[c] +
             2.0 * p.dt * f_curr.coeffs[c] - p.dt * f_prev.coeffs[c];
  }

  FourierField next;
  next.n = state.current.n;
  next.coeffs = solver.solve(rhs);
  enforce_real_symmetry(next);
  next = clean_spectrum(std::move(next), p.clean);

  state.previous = std::move(state.current);
  state.current = std::move(next);
  state.rhs_previous = std::move(f_curr);
  state.step += 1;
  state.t = static_cast<double>(state.step) * p.dt;
}

double front_position(const FourierField& field, double map_scale,
                      double level) {
  const std::vector<double> values = inverse_transform_real(field);
  const int n = field.n;
  // x_j decreases with j, so walking j downward walks x upward; take the
  // first downward crossing of the level as x grows (the wave front).
  int bracket = -1;
  for (int j = n - 1; j >= 1; --j) {
    const double here = values[static_cast<std::size_t>(j)] - level;
    const double right = values[static_cast<std::size_t>(j - 1)] - level;
    if (here >= 0.0 && right < 0.0) {
      bracket = j;
      break;
    }
  }
  if (bracket < 0) {
    throw NumericError("front_position: profile never crosses level " +
                       std::to_string(level));
  }
  double s_pos = kPi * (2.0 * bracket + 1.0) / (2.0 * n);      // v >= level
  double s_neg = kPi * (2.0 * (bracket - 1) + 1.0) / (2.0 * n);  // v < level
  for (int it = 0; it < 200 && std::abs(s_pos - s_neg) > 1e-15; ++it) {
    const double mid = 0.5 * (s_pos + s_neg);
    const double value = evaluate_at(field, mid).real() - level;
    if (value >= 0.0) {
      s_pos = mid;
    } else {
      s_neg = mid;
    }
  }
  const double s_root = 0.5 * (s_pos + s_neg);
  return map_scale * std::cos(s_root) / std::sin(s_root);
}

WaveDiagnostics wave_diagnostics(
    const EvolutionState& state, double level,
    std::optional<std::pair<double, double>> previous_fix) {
  WaveDiagnostics d;
  d.position = front_position(state.current, state.params.map_scale, level);
  if (previous_fix.has_value() && state.t != previous_fix->first) {
    d.speed_estimate =
        (d.position - previous_fix->second) / (state.t - previous_fix->first);
  } else {
    d.speed_estimate = std::numeric_limits<double>::quiet_NaN();
  }
  const std::vector<double> values = inverse_transform_real(state.current);
  double vmax = values[0];
  double vmin = values[0];
  for (double v : values) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  d.overshoot = std::max(vmax - 1.0, -vmin);
  return d;
}

double spectral_tail_ratio(const FourierField& field, double fraction) {
  const double cutoff = fraction * field.n;
  double tail = 0.0;
  double peak = 0.0;
  for (int k = -field.n; k < field.n; ++k) {
    const double mag = std::abs(field.at(k));
    peak = std::max(peak, mag);
    if (std::abs(k) > cutoff) tail = std::max(tail, mag);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

}  // namespace fracspec
