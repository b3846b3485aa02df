#include "graphck/tck.hpp"

#include <algorithm>

#include "graphck/boundary.hpp"

namespace graphck {

TckTerm TckTerm::of(const Graph& g, Path mu, Path nu) {
  mu.require_valid(g);
  nu.require_valid(g);
  if (mu.source(g) != nu.source(g))
    throw ValidationError("t_mu t_nu^*: source vertices of mu and nu differ");
  return TckTerm{std::move(mu), std::move(nu)};
}

void TckElement::add_term(const TckTerm& t, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TckElement operator+(const TckElement& a, const TckElement& b) {
  TckElement r = a;
  for (const auto& [t, c] : b.terms_) r.add_term(t, c);
  return r;
}

TckElement operator-(const TckElement& a, const TckElement& b) {
  TckElement r = a;
  for (const auto& [t, c] : b.terms_) r.add_term(t, -c);
  return r;
}

TckElement TckElement::scaled(const Scalar& c) const {
  TckElement r;
  for (const auto& [t, x] : terms_) r.add_term(t, x * c);
  return r;
}

int TckElement::max_path_length() const {
  int n = 0;
  for (const auto& [t, c] : terms_)
    n = std::max({n, t.mu.length(), t.nu.length()});
  return n;
}

namespace {

// t_nu^* t_alpha collapses to a single creation/annihilation factor or 0.
std::optional<TckTerm> term_product(const Graph& g, const TckTerm& a, const TckTerm& b) {
  if (a.nu.is_prefix_of(b.mu)) {
    Path mid = b.mu.segment(g, a.nu.length(), b.mu.length());
    return TckTerm{a.mu.concat(g, mid), b.nu};
  }
  if (b.mu.is_prefix_of(a.nu)) {
    Path mid = a.nu.segment(g, b.mu.length(), a.nu.length());
    return TckTerm{a.mu, b.nu.concat(g, mid)};
  }
  return std::nullopt;
}

}  // namespace

TckElement tck_product(const Graph& g, const TckElement& x, const TckElement& y) {
  TckElement r;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      if (auto t = term_product(g, a, b)) r.add_term(*t, ca * cb);
    }
  }
  return r;
}

TckElement tck_adjoint(const TckElement& x) {
  TckElement r;
  for (const auto& [t, c] : x.terms()) r.add_term(TckTerm{t.nu, t.mu}, c.conj());
  return r;
}

DiagElement expectation(const TckElement& x) {
  DiagElement d;
  for (const auto& [t, c] : x.terms())
    if (t.mu == t.nu) d.add_term(t.mu, c);
  return d;
}

TckElement embed_diagonal(const DiagElement& a) {
  TckElement r;
  for (const auto& [p, c] : a.terms()) r.add_term(TckTerm{p, p}, c);
  return r;
}

CycleLemmaResult cycle_lemma_check(const Graph& g, const Path& lambda,
                                   const Path& mu, const Path& nu) {
  lambda.require_valid(g);
  mu.require_valid(g);
  nu.require_valid(g);
  if (!(lambda.length() >= nu.length() && nu.length() > mu.length()))
    throw PreconditionError("cycle_lemma_check: need |lambda| >= |nu| > |mu|");
  if (mu.source(g) != nu.source(g)) {
    // t_mu t_nu^* is zero outright when the sources disagree.
    return CycleLemmaResult{};
  }

  TckElement proj = TckElement::range_projection(lambda);
  TckElement middle = TckElement::from_term(TckTerm::of(g, mu, nu));
  TckElement sandwich = tck_product(g, tck_product(g, proj, middle), proj);

  CycleLemmaResult res;
  res.sandwich = sandwich;
  if (sandwich.is_zero()) return res;
  res.zero = false;

  // Nonzero forces lambda = nu nu' and nu = mu mu'.
  if (!nu.is_prefix_of(lambda) || !mu.is_prefix_of(nu))
    throw InternalError("cycle_lemma_check: nonzero sandwich without factorization");
  Path nu_prime = lambda.segment(g, nu.length(), lambda.length());
  Path mu_prime = nu.segment(g, mu.length(), nu.length());

  // Solve mu' nu' = nu' rho: rho is the tail once nu' is peeled off the front.
  Path combined = mu_prime.concat(g, nu_prime);
  Path front = combined.segment(g, 0, nu_prime.length());
  if (front != nu_prime)
    throw InternalError("cycle_lemma_check: mu' nu' does not start with nu'");
  Path rho = combined.segment(g, nu_prime.length(), combined.length());
  Cycle cycle = Cycle::of(g, rho);  // throws if rho fails to close up

  TckElement expected =
      TckElement::from_term(TckTerm::of(g, lambda, lambda.concat(g, rho)));
  if (sandwich != expected)
    throw InternalError("cycle_lemma_check: sandwich differs from t_lambda t_{lambda rho}^*");

  res.rho = cycle;
  res.mu_prime = mu_prime;
  res.nu_prime = nu_prime;
  return res;
}

namespace {

void require_prefix_closed(const Graph& g, const PathSet& F) {
  for (const Path& m : F.members)
    for (int k = 0; k < m.length(); ++k)
      if (!F.contains(m.segment(g, 0, k)))
        throw PreconditionError("F is not closed under initial segments");
}

int default_bound(const Graph& g, const PathSet& F) {
  int bound = 0;
  for (const Path& m : F.members) {
    if (!is_exhaustive(g, relative_extensions(g, m, F)).exhaustive)
      bound = std::max(bound, m.length());
  }
  return bound;
}

}  // namespace

DiagElement phi_f(const Graph& g, const Path& lambda, const PathSet& F, int bound) {
  if (!F.contains(lambda)) throw PreconditionError("phi_f: lambda is not a member of F");
  require_prefix_closed(g, F);

  PathSet T = relative_extensions(g, lambda, F);
  auto verdict = is_exhaustive(g, T);
  if (verdict.exhaustive) {
    AtomDecomposition dec = orthogonalize(g, F);
    return dec.atoms.at(lambda).projection;
  }

  auto alpha = first_explicit_witness(g, T);
  if (!alpha)
    throw PreconditionError(
        "phi_f: T is non-exhaustive only through phantom edges at an "
        "infinite emitter; no explicit witness path exists");
  if (bound < 0) bound = default_bound(g, F);
  Path tau = aperiodic_tail(g, alpha->source(g), bound);
  return DiagElement::projection(lambda.concat(g, *alpha).concat(g, tau));
}

CompressionReport compression_identity_check(const Graph& g, const PathSet& F,
                                             const TckElement& x, int bound,
                                             int depth) {
  require_prefix_closed(g, F);
  for (const auto& [t, c] : x.terms()) {
    if (!F.contains(t.mu) || !F.contains(t.nu))
      throw PreconditionError("compression_identity_check: x has support outside F x F");
  }

  CompressionReport report;

  // Collect the (mu, nu) pairs once; coefficients are irrelevant to the
  // identity itself.
  std::vector<TckTerm> pairs;
  for (const auto& [t, c] : x.terms()) pairs.push_back(t);

  std::map<Path, TckElement> phi_embedded;
  std::map<Path, DiagElement> phi_diag;
  for (const Path& lam : F.members) {
    DiagElement p = phi_f(g, lam, F, bound);
    phi_diag[lam] = p;
    phi_embedded[lam] = embed_diagonal(p);
  }

  int max_len = 0;
  for (const auto& [lam, p] : phi_diag)
    for (const auto& [path, c] : p.terms()) max_len = std::max(max_len, path.length());
  for (const TckTerm& t : pairs)
    max_len = std::max({max_len, t.mu.length(), t.nu.length()});
  if (depth < 0) depth = max_len + 1;
  depth = std::max(depth, max_len);
  report.depth_used = depth;

  std::optional<TruncationBasis> basis;  // built lazily for numeric fallback

  for (const Path& lam : F.members) {
    const TckElement& phi = phi_embedded.at(lam);
    for (const TckTerm& t : pairs) {
      CompressionReport::Entry entry;
      entry.lambda = lam;
      entry.mu = t.mu;
      entry.nu = t.nu;
      entry.expected_identity = (t.mu == t.nu) && t.mu.is_prefix_of(lam);

      TckElement lhs =
          tck_product(g, tck_product(g, phi, TckElement::from_term(t)), phi);
      TckElement rhs = entry.expected_identity ? phi : TckElement::zero();

      if (lhs == rhs) {
        entry.status = TripleStatus::symbolically_verified;
      } else {
        if (!basis) basis = build_basis(g, Family::boundary, depth);
        OperatorMatrix ml = represent(g, lhs, *basis);
        OperatorMatrix mr = represent(g, rhs, *basis);
        double diff = max_abs_entry(ml - mr);
        if (diff <= 1e-12) {
          entry.status = TripleStatus::verified_numerically;
        } else {
          entry.status = TripleStatus::failed;
          report.all_verified = false;
        }
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace graphck
