#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ramanujan/projgroup.hpp"

namespace ramanujan {

/// Colored adjacency operator A_k: row i lists the color-k out-neighbors of
/// vertex i, with multiplicity.
struct HeckeOperator {
  unsigned k = 0;
  std::size_t n = 0;
  std::vector<std::uint32_t> row_ptr;
  std::vector<std::uint32_t> col;
  std::vector<std::uint32_t> val;

  std::uint64_t row_sum(std::size_t i) const;
  std::uint64_t trace() const;
  std::uint32_t at(std::size_t i, std::size_t j) const;
  std::size_t nnz() const { return col.size(); }

  template <typename T>
  void apply(const T* x, T* y) const {
    for (std::size_t i = 0; i < n; ++i) {
      T acc{};
      for (std::uint32_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) acc += static_cast<double>(val[p]) * x[col[p]];
      y[i] = acc;
    }
  }
  template <typename T>
  void apply_transpose(const T* x, T* y) const {
    for (std::size_t i = 0; i < n; ++i) y[i] = T{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint32_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) y[col[p]] += static_cast<double>(val[p]) * x[i];
  }
};

/// A_1, ..., A_{d-1} (index k - 1).
std::vector<HeckeOperator> assemble_hecke(const GroupClosure& closure, unsigned d);

HeckeOperator transpose(const HeckeOperator& a);
bool equal(const HeckeOperator& a, const HeckeOperator& b);
/// Exact integer comparison of AB and BA.
bool commute(const HeckeOperator& a, const HeckeOperator& b);

using Tuple = std::vector<std::complex<double>>;  // (lambda_1, ..., lambda_{d-1})

/// lambda_k = [d choose k]_q zeta^k for each r-th root of unity zeta, in the
/// order zeta = exp(2 pi i j / r), j = 0..r-1.
std::vector<Tuple> trivial_tuples(unsigned r, std::uint64_t q, unsigned d);

/// Checks A_k v_zeta = [d k]_q zeta^k v_zeta exactly for v_zeta(x) =
/// zeta^color(x), one result per root j. Each vertex's color-k out-neighbors
/// are counted by color class in Z[C_r]; the identity holds for every zeta
/// when all of them sit in class color(x) + k.
std::vector<bool> trivial_eigenpairs_exact(const std::vector<HeckeOperator>& ops,
                                           const std::vector<std::uint32_t>& colors, unsigned r, std::uint64_t q,
                                           unsigned d);

enum class SpectrumMode { Dense, Sparse };
enum class Verdict { Ramanujan, NotRamanujan, Partial, Undecided };

std::string_view to_string(SpectrumMode m);
std::string_view to_string(Verdict v);

struct SpectralTuple {
  Tuple lambda;
  std::size_t multiplicity = 0;
  bool trivial = false;
  bool coincides_with_trivial = false;  // nontrivial copies of a trivial value
  bool in_sd = false;
};

struct SpectrumOptions {
  std::size_t dense_cap = 20000;
  double cluster_tol = 1e-9;  // relative, eigenspace splitting
  double tol = 1e-6;          // tuple matching and membership
  double radius_tol = 1e-4;   // sparse bound comparison
  double power_rel_tol = 1e-10;
  std::size_t max_iterations = 200000;
  std::uint64_t seed = 0x5eed;
  // Dense: false skips dsyevd and uses Eigen directly.
  bool use_lapack = true;
  // Sparse deflation; when empty the all-ones vector alone is removed.
  std::vector<std::uint32_t> colors;
  unsigned r = 1;
};

struct SpectrumReport {
  SpectrumMode mode = SpectrumMode::Dense;
  std::size_t n = 0;
  unsigned d = 0;
  std::vector<std::uint64_t> degrees;  // row sum of A_k, when constant
  double tol = 0;
  std::vector<SpectralTuple> tuples;  // dense only
  std::string eigensolver;            // dense only

  // sparse only, index k - 1
  std::vector<double> deflated_radius;
  std::vector<std::size_t> iterations;
  std::vector<bool> converged;
  double radius_tol = 0;

  // filled by ramanujan_verdict
  std::vector<Tuple> trivial;
  std::vector<double> radius_bound;
  bool coincidence_flagged = false;
  Verdict verdict = Verdict::Undecided;
};

/// Dense: joint eigenspaces of the Hermitian parts A_k + A_k^T and
/// i(A_k - A_k^T), k <= d/2, starting from a full symmetric eigensolve of
/// A_1 + A_1^T; lambda_k is the trace of A_k on each joint eigenspace divided
/// by its dimension. Sparse: power iteration on A_k^T A_k orthogonal to the
/// color-class indicators. Throws DenseCapExceeded, NonCommutingOperators.
SpectrumReport simultaneous_spectrum(const std::vector<HeckeOperator>& ops, SpectrumMode mode,
                                     const SpectrumOptions& opts = {});

/// Roots of t^d + sum_k (-1)^k c_k t^(d-k), c_k = lambda_k / q^(k(d-k)/2),
/// c_d = 1, all within tol of the unit circle. Roots closer than 1e-3 form a
/// cluster of size m; its centroid must meet tol and each member tol^(1/m).
bool sd_membership(const Tuple& lambda, std::uint64_t q, unsigned d, double tol = 1e-6);

/// Polynomial roots through companion-matrix eigenvalues; coefficients in
/// ascending order, leading one last.
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs);

/// q^(k(d-k)/2) * binom(d, k): the largest |lambda_k| over S_d.
double sd_radius_bound(std::uint64_t q, unsigned d, unsigned k);

/// Marks trivial tuples (each trivial value claimed once), tests the rest for
/// S_d membership and sets the verdict. Sparse reports get Partial when every
/// deflated radius is within radius_tol of its bound, NotRamanujan otherwise.
void ramanujan_verdict(SpectrumReport& report, unsigned r, std::uint64_t q, unsigned d);

}  // namespace ramanujan
