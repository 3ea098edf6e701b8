#include "fracspec/validate.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/errors.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/util.hpp"

namespace fracspec {

std::vector<double> ErrorCurves::max_over_alpha() const {
  std::vector<double> out(rows.size(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (double e : err[r]) out[r] = std::max(out[r], e);
  }
  return out;
}

int ErrorCurves::row_index(std::span<const int> m_set) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (std::equal(rows[r].begin(), rows[r].end(), m_set.begin(), m_set.end())) {
      return static_cast<int>(r);
    }
  }
  throw ConfigError("error curves: m-set not present");
}

double ErrorCurves::at(std::span<const int> m_set, double alpha) const {
  const int r = row_index(m_set);
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    if (alphas[a] == alpha) return err[static_cast<std::size_t>(r)][a];
  }
  throw ConfigError("error curves: alpha not on the grid");
}

std::vector<std::vector<int>> all_windows(int max_level) {
  std::vector<std::vector<int>> rows;
  for (int size = 1; size <= max_level; ++size) {
    for (int start = 1; start + size - 1 <= max_level; ++start) {
      std::vector<int> w(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) w[static_cast<std::size_t>(i)] = start + i;
      rows.push_back(std::move(w));
    }
  }
  return rows;
}

std::vector<std::vector<int>> prefix_ladders(int max_level) {
  std::vector<std::vector<int>> rows;
  for (int size = 1; size <= max_level; ++size) {
    std::vector<int> w(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) w[static_cast<std::size_t>(i)] = 1 + i;
    rows.push_back(std::move(w));
  }
  return rows;
}

std::vector<double> uniform_alphas(int points) {
  if (points < 2) throw ConfigError("alpha grid needs at least 2 points");
  std::vector<double> alphas(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) {
    alphas[static_cast<std::size_t>(j)] =
        static_cast<double>(j) / static_cast<double>(points - 1);
  }
  return alphas;
}

ErrorCurves error_curves(const TestFunction& f, int n, double map_scale,
                         std::span<const double> alphas,
                         std::span<const std::vector<int>> rows, int threads,
                         std::int64_t budget) {
  int max_level = 0;
  for (const auto& row : rows) {
    if (row.empty()) throw ConfigError("error curves: empty m-set row");
    max_level = std::max(max_level, row.back());
  }

  const SpectralGrid grid = SpectralGrid::make(n, map_scale);
  const FourierField coeffs =
      forward_transform(sample_even_extension(f.v, grid));

  ErrorCurves out;
  out.function_id = f.id;
  out.n = n;
  out.map_scale = map_scale;
  out.alphas.assign(alphas.begin(), alphas.end());
  out.rows.assign(rows.begin(), rows.end());
  out.err.assign(rows.size(), std::vector<double>(alphas.size(), 0.0));

  parallel_for(alphas.size(), threads, [&](std::size_t begin, std::size_t end) {
    AssemblyOptions opts;
    opts.budget = budget;
    for (std::size_t ai = begin; ai < end; ++ai) {
      const double alpha = alphas[ai];
      // One base level in memory at a time; only its action on the
      // coefficients is kept.
      std::vector<std::vector<double>> action(static_cast<std::size_t>(max_level));
      for (int m = 1; m <= max_level; ++m) {
        const FracOpMatrix base = assemble_matrix(alpha, n, m, opts);
        action[static_cast<std::size_t>(m - 1)] =
            apply_operator(base, coeffs, map_scale);
      }
      std::vector<double> exact(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        exact[static_cast<std::size_t>(j)] =
            f.exact_frac(grid.x_nodes[static_cast<std::size_t>(j)], alpha);
      }
      for (std::size_t r = 0; r < out.rows.size(); ++r) {
        const auto& window = out.rows[r];
        const std::vector<double> weights =
            ladder_weights(alpha, static_cast<int>(window.size()));
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
          double value = 0.0;
          for (std::size_t i = 0; i < window.size(); ++i) {
            value += weights[i] *
                     action[static_cast<std::size_t>(window[i] - 1)]
                           [static_cast<std::size_t>(j)];
          }
          worst = std::max(worst,
                           std::abs(value - exact[static_cast<std::size_t>(j)]));
        }
        out.err[r][ai] = worst;
      }
    }
  });
  return out;
}

std::vector<double> log2_ratio(std::span<const double> a,
                               std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("log2_ratio: size mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::log2(a[i] / b[i]);
  return out;
}

}  // namespace fracspec
