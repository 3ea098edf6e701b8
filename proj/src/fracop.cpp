#include "fracspec/fracop.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "fracspec/errors.hpp"
#include "fracspec/fft.hpp"
#include "fracspec/special.hpp"
#include "fracspec/util.hpp"

namespace fracspec {

namespace {

constexpr double kPi = std::numbers::pi;

std::atomic<std::uint64_t> g_assembly_count{0};

double cotangent(double s) { return std::cos(s) / std::sin(s); }

// Integrating the Caputo integral once by parts leaves a 1/Gamma(2-alpha)
// in front of the (cot s - cot eta)^{1-alpha} quadrature; the kernel
// density w_k itself stays Gamma-free.
double quadrature_gamma(double alpha) {
  return 1.0 / gamma_lanczos(2.0 - alpha);
}

// (cot s_j - cot s_l)^{1-alpha}; the base is strictly positive on the
// summation range, anything else is a logic error upstream.
double singular_weight(double base, double one_minus_alpha) {
  assert(base > 0.0);
  return std::exp(one_minus_alpha * std::log(base));
}

// Five-term exponential expansion of w_k: w_k(s) = sum_q c_q(k) e^{i(k+q)s}
// with q in {-4,-2,0,2,4}, at L = 1.
struct WCoefficients {
  std::complex<double> c[5];  // q = -4, -2, 0, +2, +4
};

WCoefficients w_mode_coefficients(int k) {
  const double kd = static_cast<double>(k);
  const double k2 = kd * kd;
  const double k3 = k2 * kd;
  const std::complex<double> i(0.0, 1.0);
  WCoefficients w;
  w.c[0] = i * (k3 - 6.0 * k2 + 8.0 * kd) / 16.0;
  w.c[1] = -i * (k3 - 3.0 * k2 + 2.0 * kd) / 4.0;
  w.c[2] = i * 3.0 * k3 / 8.0;
  w.c[3] = -i * (k3 + 3.0 * k2 + 2.0 * kd) / 4.0;
  w.c[4] = i * (k3 + 6.0 * k2 + 8.0 * kd) / 16.0;
  return w;
}

void check_budget(int n, int level, const AssemblyOptions& opts) {
  const std::int64_t nodes = static_cast<std::int64_t>(n) << level;
  if (nodes > opts.budget) {
    throw BudgetError("assembly budget exceeded: N*2^m = " + std::to_string(nodes) +
                      " > " + std::to_string(opts.budget) +
                      " (raise the budget or use --full-scale)");
  }
}

FracOpMatrix blank_matrix(double alpha, int n, std::vector<int> levels) {
  if (n < 2) throw ConfigError("operator assembly: N must be at least 2");
  if (alpha < 0.0 || alpha > 1.0) {
    throw ConfigError("operator assembly: alpha must lie in [0, 1]");
  }
  FracOpMatrix m;
  m.alpha = alpha;
  m.n = n;
  m.levels = std::move(levels);
  m.entries.assign(4 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                   std::complex<double>(0.0, 0.0));
  return m;
}

// Assembles the level-m operator rows and accumulates `weight` times them
// into `out` (row-major (2N)x(2N)). Per physical row j the singular
// weights are packed into a zero-padded array of length P = 2^{m+1} N and
// transformed once; every column k then needs only the five taps of
// w_k's exponential expansion. Rows j+N reuse row j with the (-1)^k sign
// from w_k(s+pi) = (-1)^k w_k(s), and columns at -k are conjugates.
void assemble_level_accumulate(double alpha, int n, int level, double weight,
                               std::complex<double>* out, int threads) {
  const std::size_t quad_count = static_cast<std::size_t>(n) << level;  // 2^m N
  const std::size_t period = 2 * quad_count;                            // P
  const double one_minus_alpha = 1.0 - alpha;
  const std::size_t dim = 2 * static_cast<std::size_t>(n);

  std::vector<double> cot_nodes(quad_count);
  for (std::size_t l = 0; l < quad_count; ++l) {
    const double s = kPi * (2.0 * static_cast<double>(l) + 1.0) /
                     static_cast<double>(period);
    cot_nodes[l] = cotangent(s);
  }

  std::vector<WCoefficients> wc(static_cast<std::size_t>(2 * n));
  for (int k = -n; k < n; ++k) {
    wc[static_cast<std::size_t>(k + n)] = w_mode_coefficients(k);
  }

  const double prefactor =
      2.0 * kPi / static_cast<double>(period) * quadrature_gamma(alpha);

  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin,
                                                          std::size_t end) {
    std::vector<std::complex<double>> padded(period);
    std::vector<std::complex<double>> row(dim);
    for (std::size_t j = begin; j < end; ++j) {
      const double sj = kPi * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * n);
      const double cj = cotangent(sj);
      const std::size_t lmin = (static_cast<std::size_t>(2 * j + 1) << level) / 2;
      std::fill(padded.begin(), padded.end(), std::complex<double>(0.0, 0.0));
      for (std::size_t l = lmin; l < quad_count; ++l) {
        padded[l] = singular_weight(cj - cot_nodes[l], one_minus_alpha);
      }
      fft_backward(padded);  // hat D(v) = sum_l D_l e^{+2 pi i v l / P}

      auto column_value = [&](int k) {
        const WCoefficients& c = wc[static_cast<std::size_t>(k + n)];
        std::complex<double> acc(0.0, 0.0);
        for (int q = 0; q < 5; ++q) {
          const int mode = k + 2 * (q - 2);
          const std::size_t bin = static_cast<std::size_t>(
              ((mode % static_cast<int>(period)) + static_cast<int>(period)) %
              static_cast<int>(period));
          const std::complex<double> phase =
              std::polar(1.0, mode * kPi / static_cast<double>(period));
          acc += c.c[q] * phase * padded[bin];
        }
        return prefactor * acc;
      };

      row[static_cast<std::size_t>(n)] = 0.0;  // k = 0
      for (int k = 1; k < n; ++k) {
        const std::complex<double> value = column_value(k);
        row[static_cast<std::size_t>(k + n)] = value;
        row[static_cast<std::size_t>(n - k)] = std::conj(value);
      }
      row[0] = column_value(-n);

      std::complex<double>* upper = out + j * dim;
      std::complex<double>* lower = out + (j + static_cast<std::size_t>(n)) * dim;
      for (int k = -n; k < n; ++k) {
        const std::size_t c = static_cast<std::size_t>(k + n);
        const std::complex<double> value = weight * row[c];
        upper[c] += value;
        lower[c] += (k % 2 == 0) ? value : -value;
      }
    }
  });
  g_assembly_count.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

std::complex<double> eval_w(int k, double s) {
  const double kd = static_cast<double>(k);
  const double k2 = kd * kd;
  const double k3 = k2 * kd;
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> bracket =
      i * (k3 + 8.0 * kd) / 8.0 * std::cos(4.0 * s) -
      3.0 * k2 / 4.0 * std::sin(4.0 * s) -
      i * (k3 + 2.0 * kd) / 2.0 * std::cos(2.0 * s) +
      3.0 * k2 / 2.0 * std::sin(2.0 * s) + i * 3.0 * k3 / 8.0;
  return std::polar(1.0, kd * s) * bracket;
}

std::complex<double> quadrature_apply(int k, double alpha, int n, int level,
                                      int j) {
  if (level < 1) throw ConfigError("quadrature_apply: level m must be at least 1");
  if (j < 0 || j >= 2 * n) throw ConfigError("quadrature_apply: node index out of range");
  if (j >= n) {
    // s_{j} = s_{j-N} + pi and w_k(s + pi) = (-1)^k w_k(s).
    const std::complex<double> base = quadrature_apply(k, alpha, n, level, j - n);
    return (k % 2 == 0) ? base : -base;
  }
  const std::int64_t quad_count = static_cast<std::int64_t>(n) << level;
  const std::int64_t lmin =
      (static_cast<std::int64_t>(2 * j + 1) << level) / 2;  // 2^{m-1}(2j+1)
  if (lmin >= quad_count) return 0.0;  // empty summation range
  const double sj = kPi * (2.0 * j + 1.0) / (2.0 * n);
  const double cj = cotangent(sj);
  const double one_minus_alpha = 1.0 - alpha;
  std::complex<double> sum(0.0, 0.0);
  for (std::int64_t l = lmin; l < quad_count; ++l) {
    const double sl = kPi * (2.0 * static_cast<double>(l) + 1.0) /
                      (2.0 * static_cast<double>(quad_count));
    sum += eval_w(k, sl) * singular_weight(cj - cotangent(sl), one_minus_alpha);
  }
  return sum * (kPi / static_cast<double>(quad_count)) * quadrature_gamma(alpha);
}

FracOpMatrix assemble_matrix(double alpha, int n, int level,
                             const AssemblyOptions& opts) {
  if (level < 1) throw ConfigError("assemble_matrix: level m must be at least 1");
  check_budget(n, level, opts);
  FracOpMatrix m = blank_matrix(alpha, n, {level});
  assemble_level_accumulate(alpha, n, level, 1.0, m.entries.data(), opts.threads);
  return m;
}

FracOpMatrix assemble_matrix_reference(double alpha, int n, int level) {
  FracOpMatrix m = blank_matrix(alpha, n, {level});
  for (int j = 0; j < 2 * n; ++j) {
    for (int k = -n; k < n; ++k) {
      m.at(j, k) = quadrature_apply(k, alpha, n, level, j);
    }
  }
  return m;
}

std::vector<double> ladder_weights(double alpha, int count) {
  if (count < 1) throw ConfigError("ladder_weights: need at least one level");
  std::vector<std::vector<double>> cells(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    cells[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(count), 0.0);
    cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  }
  for (int depth = 1; depth < count; ++depth) {
    const double w = std::pow(2.0, depth + 1.0 - alpha);
    for (int i = 0; i + depth < count; ++i) {
      auto& lo = cells[static_cast<std::size_t>(i)];
      const auto& hi = cells[static_cast<std::size_t>(i + 1)];
      for (int c = 0; c < count; ++c) {
        const std::size_t ci = static_cast<std::size_t>(c);
        lo[ci] = (w * hi[ci] - lo[ci]) / (w - 1.0);
      }
    }
  }
  return cells[0];
}

FracOpMatrix assemble_ladder(double alpha, int n, std::span<const int> m_set,
                             const AssemblyOptions& opts) {
  if (m_set.empty()) throw ConfigError("assemble_ladder: empty m-set");
  for (std::size_t i = 0; i < m_set.size(); ++i) {
    if (m_set[i] < 1) throw ConfigError("assemble_ladder: levels must be >= 1");
    if (i > 0 && m_set[i] != m_set[i - 1] + 1) {
      throw ConfigError("assemble_ladder: m-set must be consecutive ascending");
    }
  }
  check_budget(n, m_set.back(), opts);
  FracOpMatrix m = blank_matrix(alpha, n, std::vector<int>(m_set.begin(), m_set.end()));
  const std::vector<double> weights =
      ladder_weights(alpha, static_cast<int>(m_set.size()));
  for (std::size_t i = 0; i < m_set.size(); ++i) {
    assemble_level_accumulate(alpha, n, m_set[i], weights[i], m.entries.data(),
                              opts.threads);
  }
  return m;
}

FracOpMatrix extrapolate(std::span<const FracOpMatrix> bases, double alpha) {
  if (bases.empty()) throw ConfigError("extrapolate: empty matrix list");
  std::vector<int> levels;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const auto& b = bases[i];
    if (b.alpha != alpha) throw ConfigError("extrapolate: alpha mismatch");
    if (b.n != bases[0].n) throw ConfigError("extrapolate: N mismatch");
    if (b.levels.size() != 1) {
      throw ConfigError("extrapolate: inputs must be single-level matrices");
    }
    if (i > 0 && b.levels[0] != bases[i - 1].levels[0] + 1) {
      throw ConfigError("extrapolate: levels must be consecutive ascending");
    }
    levels.push_back(b.levels[0]);
  }
  std::vector<FracOpMatrix> table(bases.begin(), bases.end());
  const std::size_t count = table.size();
  for (std::size_t depth = 1; depth < count; ++depth) {
    const double w = std::pow(2.0, static_cast<double>(depth) + 1.0 - alpha);
    for (std::size_t i = 0; i + depth < count; ++i) {
      auto& lo = table[i];
      const auto& hi = table[i + 1];
      // lo <- hi + (hi - lo)/(w - 1): equal inputs pass through unchanged.
      for (std::size_t e = 0; e < lo.entries.size(); ++e) {
        lo.entries[e] = hi.entries[e] + (hi.entries[e] - lo.entries[e]) / (w - 1.0);
      }
    }
  }
  FracOpMatrix result = std::move(table[0]);
  result.levels = std::move(levels);
  return result;
}

std::vector<std::complex<double>> apply_operator_raw(const FracOpMatrix& op,
                                                     const FourierField& field,
                                                     double map_scale) {
  if (op.n != field.n) throw NumericError("apply_operator: dimension mismatch");
  const std::size_t dim = 2 * static_cast<std::size_t>(op.n);
  const double scale = std::pow(map_scale, -1.0 - op.alpha);
  std::vector<std::complex<double>> out(dim);
  const std::complex<double>* m = op.entries.data();
  const std::complex<double>* u = field.coeffs.data();
  for (std::size_t j = 0; j < dim; ++j) {
    const std::complex<double>* row = m + j * dim;
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t c = 0; c < dim; ++c) acc += row[c] * u[c];
    out[j] = scale * acc;
  }
  return out;
}

std::vector<double> apply_operator(const FracOpMatrix& op,
                                   const FourierField& field,
                                   double map_scale) {
  if (!field.is_real) {
    throw NumericError("apply_operator: field must be real; use apply_operator_raw");
  }
  const auto raw = apply_operator_raw(op, field, map_scale);
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = raw[j].real();
  return out;
}

std::uint64_t assembly_count() {
  return g_assembly_count.load(std::memory_order_relaxed);
}

}  // namespace fracspec
