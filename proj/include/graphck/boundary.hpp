#pragma once

#include <complex>
#include <string>
#include <vector>

#include "graphck/graph.hpp"
#include "graphck/tck.hpp"

namespace graphck {

enum class Family { boundary, toeplitz };

/// Ordered label set for a depth-D compression.
///   toeplitz: every path of length <= D (basis of the path space model).
///   boundary: paths of length D whose source certifiably continues to a
///     boundary path, plus shorter paths ending at terminal or emitter
///     vertices.  Each boundary label mu stands for the genuine boundary
///     path x(mu) = mu followed by the deterministic witness continuation,
///     phased by the branch count along mu so that bases nest as D grows.
struct TruncationBasis {
  Family family = Family::toeplitz;
  int depth = 0;
  std::vector<Path> labels;        // ordered by (length, lexicographic)
  std::vector<long> branch_phase;  // branch_count of each label (boundary)
  std::vector<std::string> warnings;

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const Path& p) const;  // -1 when absent
};

/// Hard cap on basis size; beyond this the dense model is refused.
inline constexpr int kMaxBasisSize = 20000;

TruncationBasis build_basis(const Graph& g, Family family, int depth);

/// Dense complex matrix over a truncation basis.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

  int dim() const { return dim_; }
  std::complex<double>& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const std::complex<double>& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }

  friend OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y);
  friend OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y);

  bool is_diagonal() const;

 private:
  int dim_ = 0;
  std::vector<std::complex<double>> a_;
};

OperatorMatrix multiply(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix adjoint(const OperatorMatrix& x);
double max_abs_entry(const OperatorMatrix& x);

/// Compression of the element to the basis subspace.  Toeplitz: the shift
/// action on path labels, cut at depth.  Boundary: genuine action on the
/// witness-extended boundary paths x(label), decided by prefix comparison
/// over a horizon long enough that the Thue-Morse selector separates
/// distinct boundary paths.  Throws PreconditionError when a term path
/// exceeds the basis depth.
OperatorMatrix represent(const Graph& g, const TckElement& x, const TruncationBasis& basis);

/// Convenience: represent the diagonal element via p_beta -> t_beta t_beta^*.
OperatorMatrix represent_diag(const Graph& g, const DiagElement& a,
                              const TruncationBasis& basis);

/// Largest singular value to ~1e-12 relative accuracy: exact scan for
/// diagonal matrices, deterministic power iteration on M^* M otherwise.
double op_norm(const OperatorMatrix& m);

/// Diagonal compression: zeroes every off-diagonal entry.
OperatorMatrix expectation_numeric(const OperatorMatrix& m);

}  // namespace graphck
