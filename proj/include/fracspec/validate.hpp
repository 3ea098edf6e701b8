#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracspec/fracop.hpp"
#include "fracspec/testfunctions.hpp"

namespace fracspec {

// Max-over-nodes errors E^{(m-set)}(alpha) of the discrete operator
// against the closed-form fractional derivative, for one test function.
// The max runs over the N physical nodes (s in (0, pi)).
struct ErrorCurves {
  std::string function_id;
  int n = 0;
  double map_scale = 0.0;
  std::vector<double> alphas;
  std::vector<std::vector<int>> rows;    // consecutive m-windows
  std::vector<std::vector<double>> err;  // [row][alpha]

  std::vector<double> max_over_alpha() const;
  int row_index(std::span<const int> m_set) const;
  double at(std::span<const int> m_set, double alpha) const;
};

// Every consecutive window inside [1, max_level], ordered by size then
// start: {1},...,{max},{1,2},{2,3},...
std::vector<std::vector<int>> all_windows(int max_level);

// Prefix ladders {1}, {1,2}, ..., {1,...,max_level}.
std::vector<std::vector<int>> prefix_ladders(int max_level);

// Equispaced alpha grid j/(points-1), j = 0..points-1.
std::vector<double> uniform_alphas(int points);

// Computes the error curves; the alpha sweep parallelizes over `threads`
// workers (results are identical for any thread count). Base matrices are
// applied to the coefficient vector one at a time, so memory stays at a
// single (2N)^2 matrix per worker.
ErrorCurves error_curves(const TestFunction& f, int n, double map_scale,
                         std::span<const double> alphas,
                         std::span<const std::vector<int>> rows, int threads,
                         std::int64_t budget);

// Pointwise log2(a/b) of two error curves, for empirical-rate plots.
std::vector<double> log2_ratio(std::span<const double> a,
                               std::span<const double> b);

}  // namespace fracspec
