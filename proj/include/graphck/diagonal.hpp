#pragma once

#include <map>
#include <optional>
#include <vector>

#include "graphck/exhaustive.hpp"
#include "graphck/graph.hpp"
#include "graphck/rational.hpp"

namespace graphck {

/// Finite Gaussian-rational combination sum a_lambda p_lambda of path
/// projections.  Canonical form: zero coefficients are never stored, so
/// value equality is map equality.
class DiagElement {
 public:
  DiagElement() = default;

  static DiagElement zero() { return {}; }
  static DiagElement projection(const Path& p) {
    DiagElement d;
    d.terms_[p] = Scalar(1);
    return d;
  }

  const std::map<Path, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add_term(const Path& p, const Scalar& c);

  friend DiagElement operator+(const DiagElement& a, const DiagElement& b);
  friend DiagElement operator-(const DiagElement& a, const DiagElement& b);
  DiagElement scaled(const Scalar& c) const;

  friend bool operator==(const DiagElement& a, const DiagElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const DiagElement& a, const DiagElement& b) {
    return !(a == b);
  }

 private:
  std::map<Path, Scalar> terms_;
};

/// Bilinear extension of the boolean product rule
///   p_mu p_nu = p_nu  (mu prefix of nu),  p_mu  (nu prefix of mu),  0 else.
DiagElement diag_product(const DiagElement& a, const DiagElement& b);

/// One atom q_alpha^F = p_alpha prod (p_alpha - p_{alpha alpha'}) of the
/// orthogonalized family, with its fate in the aperiodic representation.
struct Atom {
  DiagElement projection;
  bool nonzero_in_ap = false;
  std::optional<PathWitness> ap_witness;  // tau with q p_{alpha tau} != 0
};

struct AtomDecomposition {
  PathSet base;
  std::map<Path, Atom> atoms;
};

/// Expands every q_mu^F and verifies the defining identities internally
/// (sum over extensions recovers p_mu; distinct atoms multiply to zero).
/// Throws InternalError if either check fails, PreconditionError on empty F.
AtomDecomposition orthogonalize(const Graph& g, const PathSet& F);

/// T_alpha^F = {alpha' : alpha alpha' in F, |alpha'| > 0} as a set at
/// s(alpha).  Throws PreconditionError when alpha is not a member of F.
PathSet relative_extensions(const Graph& g, const Path& alpha, const PathSet& F);

/// Q_alpha^F != 0 in the aperiodic boundary representation, decided by
/// non-exhaustiveness of T_alpha^F.
bool atom_nonzero_ap(const Graph& g, const Path& alpha, const PathSet& F);

/// Coefficient data for one atom of a diagonal element's support.
struct AtomValue {
  Path alpha;
  Scalar coeff_sum;        // sum of coefficients over prefixes of alpha
  bool nonzero_in_ap = false;
};

struct DiagNorm {
  Rational norm2;   // exact squared operator norm
  double norm = 0;  // sqrt of norm2
  std::vector<AtomValue> atoms;
};

/// Exact norm of a diagonal element in the aperiodic boundary
/// representation: the maximum of |coefficient-prefix-sum| over the atoms of
/// the support that survive there.  Requires Condition (L).
DiagNorm diag_norm_ap(const Graph& g, const DiagElement& a);

/// Norm in the free boolean representation, where every atom survives:
/// max over all support atoms of the squared coefficient-prefix-sum.
Rational free_atom_max2(const DiagElement& a);

/// prod_{mu in M} (p_lambda - p_{lambda mu}), expanded.  Zero in the
/// aperiodic representation iff M is exhaustive at s(lambda).
DiagElement ck4_product(const Graph& g, const Path& lambda, const PathSet& M);

}  // namespace graphck
