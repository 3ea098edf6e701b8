#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fracspec/fourier.hpp"

namespace fracspec {

// Kernel density for a single Fourier mode: w_k(s) multiplied into the
// quadrature of d/dx D^alpha. This is the trig-combination form. The
// L^{-(1+alpha)} prefactor is deferred to the caller (matrices are built
// at L = 1 and rescaled at application time).
std::complex<double> eval_w(int k, double s);

// Dense spectral operator for d/dx D^alpha on the 2N shifted nodes.
// Column k holds the operator applied to e^{iks}; column 0 is zero and
// columns at -k are the conjugates of those at +k. Always built at L = 1.
struct FracOpMatrix {
  double alpha = 0.0;
  int n = 0;
  std::vector<int> levels;                    // m-set, consecutive ascending
  std::vector<std::complex<double>> entries;  // (2N)x(2N), row-major

  std::complex<double>& at(int row, int k) {
    return entries[static_cast<std::size_t>(row) * (2 * n) +
                   static_cast<std::size_t>(k + n)];
  }
  std::complex<double> at(int row, int k) const {
    return entries[static_cast<std::size_t>(row) * (2 * n) +
                   static_cast<std::size_t>(k + n)];
  }
};

struct AssemblyOptions {
  // Refuses assemblies with N * 2^m above this; the quadrature node count
  // is the memory/time driver.
  std::int64_t budget = 131072;
  int threads = 1;
};

// One entry of the level-m quadrature: the operator column for mode k
// evaluated at node j (0 <= j < 2N). Direct summation; this is the slow
// reference the fast assembly is checked against.
std::complex<double> quadrature_apply(int k, double alpha, int n, int level,
                                      int j);

// Level-m operator matrix via the factored row scheme: per row, one FFT
// of the zero-padded singular weights feeds all columns at once.
FracOpMatrix assemble_matrix(double alpha, int n, int level,
                             const AssemblyOptions& opts = {});

// Triple-loop reference assembly built on quadrature_apply.
FracOpMatrix assemble_matrix_reference(double alpha, int n, int level);

// Richardson combination of base matrices at consecutive levels
// m..m+n, recursively pairing windows with weights 2^{d+1-alpha}.
FracOpMatrix extrapolate(std::span<const FracOpMatrix> bases, double alpha);

// Scalar weights gamma_i such that the fully extrapolated operator over
// `count` consecutive levels equals sum_i gamma_i M^(m_i). The ladder is
// linear in its bases, so the fold can stream one base at a time.
std::vector<double> ladder_weights(double alpha, int count);

// Streaming construction of M^(m_set): assembles each base level and
// accumulates it with its ladder weight, keeping one matrix in memory.
FracOpMatrix assemble_ladder(double alpha, int n, std::span<const int> m_set,
                             const AssemblyOptions& opts = {});

// Nodal values of L^{-(1+alpha)} M * u_hat. The real overload requires a
// real field and discards the rounding-level imaginary residue.
std::vector<std::complex<double>> apply_operator_raw(const FracOpMatrix& op,
                                                     const FourierField& field,
                                                     double map_scale);
std::vector<double> apply_operator(const FracOpMatrix& op,
                                   const FourierField& field,
                                   double map_scale);

// Number of base-level assemblies performed so far in this process;
// lets callers observe that cache hits skip assembly.
std::uint64_t assembly_count();

}  // namespace fracspec
