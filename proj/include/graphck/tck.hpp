#pragma once

#include <map>
#include <optional>
#include <vector>

#include "graphck/diagonal.hpp"
#include "graphck/exhaustive.hpp"
#include "graphck/graph.hpp"

namespace graphck {

/// Spanning term t_mu t_nu^*.  Representable only when s(mu) = s(nu).
struct TckTerm {
  Path mu;
  Path nu;

  static TckTerm of(const Graph& g, Path mu, Path nu);

  friend bool operator==(const TckTerm& a, const TckTerm& b) {
    return a.mu == b.mu && a.nu == b.nu;
  }
  friend bool operator<(const TckTerm& a, const TckTerm& b) {
    if (a.mu != b.mu) return a.mu < b.mu;
    return a.nu < b.nu;
  }
};

/// Element of the dense *-subalgebra span{t_mu t_nu^*} of the universal
/// Toeplitz algebra.  The spanning terms are linearly independent there, so
/// the canonical form (no zero coefficients) decides equality.
class TckElement {
 public:
  TckElement() = default;

  static TckElement zero() { return {}; }
  static TckElement from_term(const TckTerm& t, const Scalar& c = Scalar(1)) {
    TckElement x;
    x.add_term(t, c);
    return x;
  }
  /// Vertex projection q_v = t_{@v} t_{@v}^*.
  static TckElement vertex_projection(int v) {
    return from_term(TckTerm{Path::at_vertex(v), Path::at_vertex(v)});
  }
  /// Range projection t_lambda t_lambda^*.
  static TckElement range_projection(const Path& lambda) {
    return from_term(TckTerm{lambda, lambda});
  }

  const std::map<TckTerm, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const TckTerm& t, const Scalar& c);

  friend TckElement operator+(const TckElement& a, const TckElement& b);
  friend TckElement operator-(const TckElement& a, const TckElement& b);
  TckElement scaled(const Scalar& c) const;

  friend bool operator==(const TckElement& a, const TckElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const TckElement& a, const TckElement& b) {
    return !(a == b);
  }

  /// Longest path length appearing in any term.
  int max_path_length() const;

 private:
  std::map<TckTerm, Scalar> terms_;
};

/// (t_mu t_nu^*)(t_alpha t_beta^*) reduced through t_nu^* t_alpha, termwise:
///   alpha = nu alpha'  ->  t_{mu alpha'} t_beta^*
///   nu = alpha nu'     ->  t_mu t_{beta nu'}^*
///   incomparable       ->  0.
TckElement tck_product(const Graph& g, const TckElement& x, const TckElement& y);

/// Involution: (mu, nu) -> (nu, mu) with conjugated coefficients.
TckElement tck_adjoint(const TckElement& x);

/// Conditional expectation onto the diagonal: t_mu t_nu^* -> delta_{mu,nu} p_mu.
DiagElement expectation(const TckElement& x);

/// Embeds a diagonal element via p_beta -> t_beta t_beta^*.
TckElement embed_diagonal(const DiagElement& a);

/// Outcome of the sandwich computation
/// t_lambda t_lambda^*  t_mu t_nu^*  t_lambda t_lambda^*  for |lambda| >=
/// |nu| > |mu|: either zero, or certified equal to t_lambda t_{lambda rho}^*
/// for a cycle rho recovered from the factorizations lambda = nu nu' =
/// mu mu' nu'.
struct CycleLemmaResult {
  bool zero = true;
  TckElement sandwich;
  std::optional<Cycle> rho;
  std::optional<Path> mu_prime;
  std::optional<Path> nu_prime;
};

CycleLemmaResult cycle_lemma_check(const Graph& g, const Path& lambda,
                                   const Path& mu, const Path& nu);

/// The compressing projection phi_lambda^F used in the expectation bound:
/// p_{lambda alpha tau} when T_lambda^F is not exhaustive (alpha the first
/// explicit witness, tau an aperiodic tail), q_lambda^F expanded otherwise.
/// F must contain lambda and be closed under initial segments.  bound < 0
/// selects the default max{|m| : m in F, T_m^F not exhaustive}.
DiagElement phi_f(const Graph& g, const Path& lambda, const PathSet& F,
                  int bound = -1);

enum class TripleStatus {
  symbolically_verified,
  verified_numerically,
  failed,
};

struct CompressionReport {
  struct Entry {
    Path lambda, mu, nu;
    bool expected_identity = false;  // true when mu = nu and mu prefix of lambda
    TripleStatus status = TripleStatus::failed;
  };
  std::vector<Entry> entries;
  int depth_used = 0;
  bool all_verified = true;
};

/// Checks phi_lambda^F x_{mu,nu} phi_lambda^F = [mu = nu, lambda = mu
/// lambda'] phi_lambda^F for every lambda in F and every (mu, nu) in the
/// support of x, first symbolically and then (on symbolic mismatch) against
/// the boundary matrix model at the given depth.
CompressionReport compression_identity_check(const Graph& g, const PathSet& F,
                                             const TckElement& x, int bound = -1,
                                             int depth = -1);

}  // namespace graphck
