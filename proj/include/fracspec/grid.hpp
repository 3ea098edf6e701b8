#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace fracspec {

// Collocation grid for the algebraic map x = L cot(s).  The 2N angles
// s_j = pi(2j+1)/(2N) are shifted off the map singularities at s = 0, pi,
// 2pi; only the first N angles carry physical x-images (cot is
// pi-periodic, so the second half duplicates the same x values).
struct SpectralGrid {
  int n = 0;                    // half mode count N
  double map_scale = 0.0;       // L
  std::vector<double> s_nodes;  // 2N angles in (0, 2pi)
  std::vector<double> x_nodes;  // N images, strictly decreasing

  static SpectralGrid make(int n, double map_scale);

  double s_from_x(double x) const { return std::atan2(map_scale, x); }
  double x_from_s(double s) const {
    return map_scale * std::cos(s) / std::sin(s);
  }
};

// Quadrature refinement family s_l^(m) = pi(2l+1)/(2^{m+1} N), interleaved
// with the primary angles so the kernel singularity is never sampled.
struct RefinedNodes {
  int level = 0;  // m
  std::vector<double> nodes;
};

RefinedNodes refined_nodes(int n, int level);

// Samples f at the N physical nodes and reflects about s = pi, producing
// 2N values of the even extension. Throws NumericError on non-finite
// samples, naming the offending node.
std::vector<double> sample_even_extension(const std::function<double(double)>& f,
                                          const SpectralGrid& grid);

// Even reflection of N physical samples into a full 2N-sample period.
std::vector<double> even_extend(std::span<const double> physical);

// Reports |u| at the extremal physical nodes against a threshold; a large
// value suggests the map scale L does not push the grid far enough into
// the function's tails.
struct ScaleDiagnostic {
  double edge_abs_max = 0.0;
  double threshold = 0.0;
  bool within = false;
};

ScaleDiagnostic scale_diagnostic(std::span<const double> samples,
                                 double threshold);

}  // namespace fracspec
