#include "fracspec/grid.hpp"

#include <numbers>
#include <string>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpectralGrid SpectralGrid::make(int n, double map_scale) {
  if (n < 2) throw ConfigError("grid: N must be at least 2, got " + std::to_string(n));
  if (!(map_scale > 0.0)) throw ConfigError("grid: map scale L must be positive");
  SpectralGrid g;
  g.n = n;
  g.map_scale = map_scale;
  g.s_nodes.resize(2 * static_cast<std::size_t>(n));
  g.x_nodes.resize(static_cast<std::size_t>(n));
  // Angles come straight from the integer index; no cumulative stepping.
  for (int j = 0; j < 2 * n; ++j) {
    g.s_nodes[static_cast<std::size_t>(j)] = kPi * (2.0 * j + 1.0) / (2.0 * n);
  }
  for (int j = 0; j < n; ++j) {
    g.x_nodes[static_cast<std::size_t>(j)] = g.x_from_s(g.s_nodes[static_cast<std::size_t>(j)]);
  }
  return g;
}

RefinedNodes refined_nodes(int n, int level) {
  if (n < 2) throw ConfigError("refined_nodes: N must be at least 2");
  if (level < 1) throw ConfigError("refined_nodes: level m must be at least 1");
  RefinedNodes r;
  r.level = level;
  const std::size_t count = (static_cast<std::size_t>(1) << level) * static_cast<std::size_t>(n);
  const double denom = static_cast<double>(count) * 2.0;
  r.nodes.resize(count);
  for (std::size_t l = 0; l < count; ++l) {
    r.nodes[l] = kPi * (2.0 * static_cast<double>(l) + 1.0) / denom;
  }
  return r;
}

std::vector<double> sample_even_extension(const std::function<double(double)>& f,
                                          const SpectralGrid& grid) {
  std::vector<double> physical(static_cast<std::size_t>(grid.n));
  for (int j = 0; j < grid.n; ++j) {
    const double x = grid.x_nodes[static_cast<std::size_t>(j)];
    const double value = f(x);
    if (!std::isfinite(value)) {
      throw NumericError("sample_even_extension: non-finite sample at node j=" +
                         std::to_string(j) + " (x=" + std::to_string(x) + ")");
    }
    physical[static_cast<std::size_t>(j)] = value;
  }
  return even_extend(physical);
}

std::vector<double> even_extend(std::span<const double> physical) {
  const std::size_t n = physical.size();
  std::vector<double> full(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    full[j] = physical[j];
    full[2 * n - 1 - j] = physical[j];
  }
  return full;
}

ScaleDiagnostic scale_diagnostic(std::span<const double> samples,
                                 double threshold) {
  ScaleDiagnostic d;
  d.threshold = threshold;
  if (samples.empty()) return d;
  // Physical nodes are the first half; x-extremes sit at both ends of it.
  const std::size_t n = samples.size() / 2;
  const double left = std::abs(samples[0]);
  const double right = std::abs(samples[n == 0 ? 0 : n - 1]);
  d.edge_abs_max = std::max(left, right);
  d.within = d.edge_abs_max <= threshold;
  return d;
}

}  // namespace fracspec
