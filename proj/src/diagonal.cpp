#include "graphck/diagonal.hpp"

#include <algorithm>
#include <cmath>

namespace graphck {

void DiagElement::add_term(const Path& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiagElement operator+(const DiagElement& a, const DiagElement& b) {
  DiagElement r = a;
  for (const auto& [p, c] : b.terms_) r.add_term(p, c);
  return r;
}

DiagElement operator-(const DiagElement& a, const DiagElement& b) {
  DiagElement r = a;
  for (const auto& [p, c] : b.terms_) r.add_term(p, -c);
  return r;
}

DiagElement DiagElement::scaled(const Scalar& c) const {
  DiagElement r;
  for (const auto& [p, x] : terms_) r.add_term(p, x * c);
  return r;
}

DiagElement diag_product(const DiagElement& a, const DiagElement& b) {
  DiagElement r;
  for (const auto& [mu, cmu] : a.terms()) {
    for (const auto& [nu, cnu] : b.terms()) {
      if (mu.is_prefix_of(nu))
        r.add_term(nu, cmu * cnu);
      else if (nu.is_prefix_of(mu))
        r.add_term(mu, cmu * cnu);
      // incomparable: p_mu p_nu = 0
    }
  }
  return r;
}

PathSet relative_extensions(const Graph& g, const Path& alpha, const PathSet& F) {
  if (!F.contains(alpha))
    throw PreconditionError("relative_extensions: alpha is not a member of F");
  std::vector<Path> rel;
  for (const Path& m : F.members)
    if (alpha.length() < m.length() && alpha.is_prefix_of(m))
      rel.push_back(m.segment(g, alpha.length(), m.length()));
  return PathSet::of(g, alpha.source(g), std::move(rel));
}

namespace {

DiagElement atom_projection(const Path& mu, const PathSet& F) {
  DiagElement q = DiagElement::projection(mu);
  for (const Path& m : F.members) {
    if (mu.length() < m.length() && mu.is_prefix_of(m)) {
      DiagElement factor = DiagElement::projection(mu) - DiagElement::projection(m);
      q = diag_product(q, factor);
    }
  }
  return q;
}

}  // namespace

bool atom_nonzero_ap(const Graph& g, const Path& alpha, const PathSet& F) {
  return !is_exhaustive(g, relative_extensions(g, alpha, F)).exhaustive;
}

AtomDecomposition orthogonalize(const Graph& g, const PathSet& F) {
  if (F.empty()) throw PreconditionError("orthogonalize: empty path set");
  AtomDecomposition dec;
  dec.base = F;
  for (const Path& mu : F.members) {
    Atom a;
    a.projection = atom_projection(mu, F);
    auto verdict = is_exhaustive(g, relative_extensions(g, mu, F));
    a.nonzero_in_ap = !verdict.exhaustive;
    a.ap_witness = verdict.witness;
    dec.atoms.emplace(mu, std::move(a));
  }

  // The decomposition identities hold by the orthogonalization lemma; they
  // are re-derived here so a faulty expansion can never escape.
  for (const Path& mu : F.members) {
    DiagElement sum;
    for (const auto& [alpha, atom] : dec.atoms)
      if (mu.is_prefix_of(alpha)) sum = sum + atom.projection;
    if (sum != DiagElement::projection(mu))
      throw InternalError("orthogonalize: atom sum does not recover p_mu");
  }
  for (auto i = dec.atoms.begin(); i != dec.atoms.end(); ++i) {
    for (auto j = std::next(i); j != dec.atoms.end(); ++j) {
      if (!diag_product(i->second.projection, j->second.projection).is_zero())
        throw InternalError("orthogonalize: atoms are not orthogonal");
    }
  }
  return dec;
}

DiagNorm diag_norm_ap(const Graph& g, const DiagElement& a) {
  auto verdict = check_condition_l(g);
  if (!verdict.holds)
    throw PreconditionError(
        "diag_norm_ap: the graph has an entrance-less cycle; the aperiodic "
        "norm formula does not apply (abstract boolean-representation norms "
        "are out of scope)");

  DiagNorm out;
  out.norm2 = Rational(0);
  if (a.is_zero()) return out;

  // Group the support by range vertex; atoms never mix across ranges.
  std::map<int, std::vector<Path>> by_range;
  for (const auto& [p, c] : a.terms()) by_range[p.range()].push_back(p);

  for (auto& [v, paths] : by_range) {
    PathSet F = PathSet::of(g, v, paths);
    for (const Path& alpha : F.members) {
      AtomValue av;
      av.alpha = alpha;
      av.coeff_sum = Scalar();
      for (const auto& [mu, c] : a.terms())
        if (mu.is_prefix_of(alpha)) av.coeff_sum += c;
      av.nonzero_in_ap = atom_nonzero_ap(g, alpha, F);
      if (av.nonzero_in_ap) {
        Rational m2 = av.coeff_sum.norm2();
        if (out.norm2 < m2) out.norm2 = m2;
      }
      out.atoms.push_back(std::move(av));
    }
  }
  out.norm = std::sqrt(out.norm2.to_double());
  return out;
}

Rational free_atom_max2(const DiagElement& a) {
  Rational best(0);
  std::map<int, std::vector<Path>> by_range;
  for (const auto& [p, c] : a.terms()) by_range[p.range()].push_back(p);
  for (auto& [v, paths] : by_range) {
    for (const Path& alpha : paths) {
      Scalar sum;
      for (const auto& [mu, c] : a.terms())
        if (mu.is_prefix_of(alpha)) sum += c;
      Rational m2 = sum.norm2();
      if (best < m2) best = m2;
    }
  }
  return best;
}

DiagElement ck4_product(const Graph& g, const Path& lambda, const PathSet& M) {
  lambda.require_valid(g);
  if (M.base != lambda.source(g))
    throw PreconditionError("ck4_product: M must live at s(lambda)");
  DiagElement prod = DiagElement::projection(lambda);
  for (const Path& mu : M.members) {
    DiagElement factor =
        DiagElement::projection(lambda) - DiagElement::projection(lambda.concat(g, mu));
    prod = diag_product(prod, factor);
  }
  return prod;
}

}  // namespace graphck
