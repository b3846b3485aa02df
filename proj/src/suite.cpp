#include "graphck/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "graphck/boundary.hpp"
#include "graphck/diagonal.hpp"
#include "graphck/exhaustive.hpp"
#include "graphck/io.hpp"
#include "graphck/tck.hpp"

using nlohmann::json;

namespace graphck {

namespace {

// splitmix64: tiny, portable, and plenty for test-case generation.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int uniform(int n) { return n <= 0 ? 0 : static_cast<int>(next() % n); }
  bool flip() { return next() & 1; }
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t trial) {
  Rng r(seed ^ (salt * 0x100000001b3ULL) ^ (trial * 0xc2b2ae3d27d4eb4fULL));
  r.next();
  return r.next();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::size_t kPoolCap = 50000;

// Shared generator state: path pools, drawing helpers, and a basis cache
// (the runner is sequential, so the lazily filled cache needs no locking).
struct Ctx {
  const Graph& g;
  const SuiteConfig& cfg;
  std::vector<Path> pool;                        // all paths, length <= pool_len
  std::vector<std::vector<Path>> by_range;       // index: vertex
  std::vector<std::vector<Path>> by_source;      // index: vertex
  int pool_len;
  mutable std::map<std::pair<Family, int>, TruncationBasis> bases;

  const TruncationBasis& basis(Family family, int depth) const {
    auto key = std::make_pair(family, depth);
    auto it = bases.find(key);
    if (it == bases.end()) it = bases.emplace(key, build_basis(g, family, depth)).first;
    return it->second;
  }

  Ctx(const Graph& graph, const SuiteConfig& config, int pool_len_in)
      : g(graph), cfg(config), pool_len(pool_len_in) {
    by_range.resize(g.vertex_count());
    by_source.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (int n = 0; n <= pool_len; ++n) {
        for (Path& p : paths_from(g, v, n)) {
          if (pool.size() >= kPoolCap)
            throw PreconditionError(
                "run_suite: path pool exceeds desk scale; lower max path length");
          by_range[v].push_back(p);
          by_source[p.source(g)].push_back(p);
          pool.push_back(std::move(p));
        }
      }
    }
  }

  Path random_path(Rng& r, int maxlen) const {
    for (;;) {
      const Path& p = pool[r.uniform(static_cast<int>(pool.size()))];
      if (p.length() <= maxlen) return p;
    }
  }
  Path random_path_with_source(Rng& r, int v, int maxlen) const {
    const auto& candidates = by_source[v];
    for (int tries = 0; tries < 256; ++tries) {
      const Path& p = candidates[r.uniform(static_cast<int>(candidates.size()))];
      if (p.length() <= maxlen) return p;
    }
    return Path::at_vertex(v);
  }
  Path random_path_with_range(Rng& r, int v, int maxlen) const {
    const auto& candidates = by_range[v];
    for (int tries = 0; tries < 256; ++tries) {
      const Path& p = candidates[r.uniform(static_cast<int>(candidates.size()))];
      if (p.length() <= maxlen) return p;
    }
    return Path::at_vertex(v);
  }

  // Coefficients from the quarter-integer lattice; exercises cancellation
  // while staying exact in both rational and double arithmetic.
  Scalar random_scalar(Rng& r) const {
    int a = r.uniform(17) - 8;
    int b = r.uniform(17) - 8;
    return Scalar(Rational(a, 4), Rational(b, 4));
  }
  Scalar random_nonzero_scalar(Rng& r) const {
    for (;;) {
      Scalar s = random_scalar(r);
      if (!s.is_zero()) return s;
    }
  }

  DiagElement random_diag(Rng& r, int maxlen) const {
    DiagElement d;
    int k = 1 + r.uniform(4);
    for (int i = 0; i < k; ++i) d.add_term(random_path(r, maxlen), random_scalar(r));
    return d;
  }

  TckElement random_tck(Rng& r, int maxlen) const {
    TckElement x;
    int k = 1 + r.uniform(4);
    for (int i = 0; i < k; ++i) {
      Path mu = random_path(r, maxlen);
      Path nu = random_path_with_source(r, mu.source(g), maxlen);
      x.add_term(TckTerm{mu, nu}, random_scalar(r));
    }
    return x;
  }

  PathSet random_pathset(Rng& r, int v, int max_members, int maxlen) const {
    std::vector<Path> members;
    int k = 1 + r.uniform(max_members);
    for (int i = 0; i < k; ++i) members.push_back(random_path_with_range(r, v, maxlen));
    return PathSet::of(g, v, std::move(members));
  }
};

struct TrialFailure {
  json detail;
};

using TrialFn = std::function<std::optional<TrialFailure>(const Ctx&, Rng&)>;

struct Property {
  std::string name;
  bool needs_condition_l = false;
  int trials = 0;  // 0 means single-shot
  TrialFn run;
};

// ---------------------------------------------------------------------------
// graph_core properties
// ---------------------------------------------------------------------------

std::optional<TrialFailure> prop_paths_from(const Ctx& c, Rng&) {
  const Graph& g = c.g;
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int n = 0; n <= 6; ++n) {
      double combos = std::pow(static_cast<double>(std::max(1, g.edge_count())), n);
      if (combos > 2e5) break;
      std::vector<Path> got = paths_from(g, v, n);
      for (const Path& p : got)
        if (!p.valid_in(g)) return TrialFailure{{{"reason", "non-composable path"}}};
      if (!std::is_sorted(got.begin(), got.end()))
        return TrialFailure{{{"reason", "paths_from not lexicographic"}}};
      // Oracle: n-fold product enumeration over all edge tuples.
      std::vector<Path> expect;
      std::vector<int> tuple(n);
      auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
          Path p(v, tuple);
          if (p.valid_in(g)) expect.push_back(p);
          return;
        }
        for (int e = 0; e < g.edge_count(); ++e) {
          tuple[i] = e;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
      std::sort(expect.begin(), expect.end());
      if (got != expect)
        return TrialFailure{{{"reason", "paths_from disagrees with brute force"},
                             {"vertex", g.vertex_name(v)},
                             {"length", n}}};
    }
  }
  return std::nullopt;
}

std::optional<TrialFailure> prop_condition_l_oracle(const Ctx& c, Rng&) {
  const Graph& g = c.g;
  // Oracle: enumerate all cyclic edge paths up to length |E^1| and test the
  // entrance definition directly.
  bool oracle_holds = true;
  std::string first_bad;
  int cap = g.edge_count();
  double combos = std::pow(static_cast<double>(std::max(1, g.edge_count())), cap);
  if (combos > 2e5) cap = std::min(cap, 6);
  for (int v = 0; v < g.vertex_count() && oracle_holds; ++v) {
    auto dfs = [&](auto&& self, const Path& p) -> void {
      if (!oracle_holds) return;
      if (p.length() >= 1 && p.source(g) == v) {
        // Positional entrance test: some edge other than rho_i shares the
        // range of rho_i (phantom edges at a flagged vertex always qualify).
        bool entrance = false;
        for (int i = 0; i < p.length() && !entrance; ++i) {
          int at = p.vertex_at(g, i);
          if (g.infinite_emitter(at)) entrance = true;
          for (int e : g.extensions_at(at))
            if (e != p.edge_at(i)) entrance = true;
        }
        if (!entrance) {
          oracle_holds = false;
          first_bad = std::to_string(p.length());
          return;
        }
      }
      if (p.length() == cap) return;
      for (int e : g.extensions_at(p.source(g))) self(self, p.append(e));
    };
    dfs(dfs, Path::at_vertex(v));
  }
  auto verdict = check_condition_l(g);
  if (verdict.holds != oracle_holds)
    return TrialFailure{{{"reason", "check_condition_l disagrees with oracle"},
                         {"checker", verdict.holds},
                         {"oracle", oracle_holds}}};
  if (!verdict.holds) {
    // The witness must really be an entrance-less cycle.
    const Path& rho = verdict.witness->path;
    if (rho.length() < 1 || rho.range() != rho.source(c.g))
      return TrialFailure{{{"reason", "condition-L witness is not a cycle"}}};
  }
  return std::nullopt;
}

std::optional<TrialFailure> prop_aperiodic_tail(const Ctx& c, Rng&) {
  const Graph& g = c.g;
  // A failure is legitimate only when the entrance condition breaks along
  // the reachable part, or when a reachable flagged emitter is involved: its
  // phantom edges would carry the tail in the genuine graph, but they are
  // not representable here.
  auto failure_certified = [&](int v) {
    if (!check_condition_l_reachable(g, v).holds) return true;
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<int> stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (g.infinite_emitter(u)) return true;
      for (int e : g.extensions_at(u)) {
        int w = g.edge(e).source;
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return false;
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int bound = 0; bound <= 4; ++bound) {
      try {
        Path tau = aperiodic_tail(g, v, bound);
        if (!tau.valid_in(g) || tau.range() != v)
          return TrialFailure{{{"reason", "tail not a path at v"}}};
        bool clause1 = g.terminal(tau.source(g));
        bool clause2 = tau.length() > bound;
        if (clause2 && tau.length() >= 1) {
          int last = tau.edges().back();
          for (int i = 0; i + 1 < tau.length(); ++i)
            if (tau.edge_at(i) == last) clause2 = false;
        }
        if (!clause1 && !clause2)
          return TrialFailure{{{"reason", "tail violates its defining disjunction"},
                               {"vertex", g.vertex_name(v)},
                               {"bound", bound}}};
      } catch (const PreconditionError&) {
        if (!failure_certified(v))
          return TrialFailure{{{"reason", "tail failed although Condition (L) holds "
                                          "and no phantom edges are reachable"},
                               {"vertex", g.vertex_name(v)}}};
      }
    }
  }
  return std::nullopt;
}

std::optional<TrialFailure> prop_witness_prefix(const Ctx& c, Rng&) {
  const Graph& g = c.g;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!check_condition_l_reachable(g, v).holds) continue;
    Path longest = witness_prefix(g, v, 64);
    for (int m = 1; m <= 16; ++m) {
      Path shorter = witness_prefix(g, v, m);
      if (shorter.length() != std::min(m, longest.length()))
        return TrialFailure{{{"reason", "prefix length mismatch"}}};
      if (!shorter.is_prefix_of(longest))
        return TrialFailure{{{"reason", "witness prefixes are not nested"},
                             {"vertex", g.vertex_name(v)}}};
    }
    // No eventual period at desk scale: the selector is built on a cube-free
    // sequence, so short periods with short offsets must fail.
    int n = longest.length();
    for (int period = 1; period * 3 <= n; ++period) {
      for (int offset = 0; offset * 3 <= n; ++offset) {
        bool periodic = true;
        for (int i = offset; i + period < n; ++i)
          if (longest.edge_at(i) != longest.edge_at(i + period)) {
            periodic = false;
            break;
          }
        if (periodic && n - offset >= 3 * period)
          return TrialFailure{{{"reason", "witness path eventually periodic"},
                               {"vertex", g.vertex_name(v)},
                               {"period", period},
                               {"offset", offset}}};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// exhaustive properties
// ---------------------------------------------------------------------------

bool witness_sound(const Graph& g, const PathSet& F, const PathWitness& w) {
  if (w.phantom_extension) {
    if (!g.infinite_emitter(w.stem.source(g))) return false;
    for (const Path& m : F.members)
      if (m.is_prefix_of(w.stem)) return false;
    return true;
  }
  for (const Path& m : F.members)
    if (prefix_comparable(w.stem, m)) return false;
  return true;
}

std::optional<TrialFailure> prop_exhaustive_oracle(const Ctx& c, Rng& r) {
  int v = r.uniform(c.g.vertex_count());
  PathSet F = c.random_pathset(r, v, 4, c.cfg.max_path_len);
  auto verdict = is_exhaustive(c.g, F);
  int depth = 0;
  for (const Path& m : F.members) depth = std::max(depth, m.length());
  bool oracle = exhaustive_oracle(c.g, F, depth);
  if (verdict.exhaustive != oracle) {
    json set = json::array();
    for (const Path& m : F.members) set.push_back(format_path(c.g, m));
    return TrialFailure{{{"reason", "is_exhaustive disagrees with oracle"},
                         {"vertex", c.g.vertex_name(v)},
                         {"set", set}}};
  }
  if (!verdict.exhaustive && !witness_sound(c.g, F, *verdict.witness))
    return TrialFailure{{{"reason", "witness comparable with a member"}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_exhaustive_monotone(const Ctx& c, Rng& r) {
  int v = r.uniform(c.g.vertex_count());
  PathSet F = c.random_pathset(r, v, 3, c.cfg.max_path_len);
  std::vector<Path> bigger = F.members;
  int extra = 1 + r.uniform(2);
  for (int i = 0; i < extra; ++i)
    bigger.push_back(c.random_path_with_range(r, v, c.cfg.max_path_len));
  PathSet F2 = PathSet::of(c.g, v, std::move(bigger));
  if (is_exhaustive(c.g, F).exhaustive && !is_exhaustive(c.g, F2).exhaustive)
    return TrialFailure{{{"reason", "superset lost exhaustiveness"}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_exhaustive_absorption(const Ctx& c, Rng& r) {
  int v = r.uniform(c.g.vertex_count());
  PathSet F = c.random_pathset(r, v, 3, c.cfg.max_path_len);
  const Path& alpha = F.members[r.uniform(static_cast<int>(F.members.size()))];
  Path beta = c.random_path_with_range(r, alpha.source(c.g), 2);
  std::vector<Path> extended = F.members;
  extended.push_back(alpha.concat(c.g, beta));
  PathSet F2 = PathSet::of(c.g, v, std::move(extended));
  if (is_exhaustive(c.g, F).exhaustive != is_exhaustive(c.g, F2).exhaustive)
    return TrialFailure{{{"reason", "absorbing an extension changed the verdict"}}};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// diagonal properties
// ---------------------------------------------------------------------------

std::optional<TrialFailure> prop_diag_assoc_comm(const Ctx& c, Rng& r) {
  DiagElement a = c.random_diag(r, 4);
  DiagElement b = c.random_diag(r, 4);
  DiagElement d = c.random_diag(r, 4);
  if (diag_product(diag_product(a, b), d) != diag_product(a, diag_product(b, d)))
    return TrialFailure{{{"reason", "diag product not associative"}}};
  if (diag_product(a, b) != diag_product(b, a))
    return TrialFailure{{{"reason", "diag product not commutative"}}};
  // Projections stay projections.
  Path p = c.random_path(r, 4);
  DiagElement proj = DiagElement::projection(p);
  if (diag_product(proj, proj) != proj)
    return TrialFailure{{{"reason", "p_lambda not idempotent"}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_orthogonalize(const Ctx& c, Rng& r) {
  int v = r.uniform(c.g.vertex_count());
  PathSet F = c.random_pathset(r, v, 5, c.cfg.max_path_len);
  // orthogonalize re-checks the lemma identities internally and throws on
  // any failure, which the harness records.
  AtomDecomposition dec = orthogonalize(c.g, F);
  if (dec.atoms.size() != F.members.size())
    return TrialFailure{{{"reason", "atom count mismatch"}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_diag_norm_contractive(const Ctx& c, Rng& r) {
  DiagElement a = c.random_diag(r, c.cfg.max_path_len);
  DiagNorm n = diag_norm_ap(c.g, a);
  if (!(n.norm2 <= free_atom_max2(a)))
    return TrialFailure{{{"reason", "aperiodic norm exceeds free-atom bound"},
                         {"element", diag_to_json(c.g, a)}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_ck4_iff_exhaustive(const Ctx& c, Rng& r) {
  int v = r.uniform(c.g.vertex_count());
  Path lambda = c.random_path_with_source(r, v, c.cfg.max_path_len);
  // Half the trials anchor at the vertex path, matching the CK shape.
  if (r.flip()) lambda = Path::at_vertex(v);
  PathSet M = c.random_pathset(r, v, 3, c.cfg.max_path_len);
  DiagElement prod = ck4_product(c.g, lambda, M);
  bool zero = diag_norm_ap(c.g, prod).norm2.is_zero();
  bool exhaustive = is_exhaustive(c.g, M).exhaustive;
  if (zero != exhaustive)
    return TrialFailure{{{"reason", "ck4 vanishing disagrees with exhaustiveness"},
                         {"lambda", format_path(c.g, lambda)},
                         {"exhaustive", exhaustive},
                         {"norm_zero", zero}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_diag_norm_numeric(const Ctx& c, Rng& r) {
  DiagElement a = c.random_diag(r, c.cfg.max_path_len);
  DiagNorm exact = diag_norm_ap(c.g, a);
  const TruncationBasis& basis = c.basis(Family::boundary, c.cfg.depth);
  double numeric = op_norm(represent_diag(c.g, a, basis));
  if (std::abs(numeric - exact.norm) > 1e-9)
    return TrialFailure{{{"reason", "exact and numeric diagonal norms differ"},
                         {"exact", exact.norm},
                         {"numeric", numeric},
                         {"element", diag_to_json(c.g, a)}}};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// tck_algebra properties
// ---------------------------------------------------------------------------

std::optional<TrialFailure> prop_tck_assoc_adjoint(const Ctx& c, Rng& r) {
  TckElement x = c.random_tck(r, c.cfg.max_path_len);
  TckElement y = c.random_tck(r, c.cfg.max_path_len);
  TckElement z = c.random_tck(r, c.cfg.max_path_len);
  if (tck_product(c.g, tck_product(c.g, x, y), z) !=
      tck_product(c.g, x, tck_product(c.g, y, z)))
    return TrialFailure{{{"reason", "tck product not associative"}}};
  if (tck_adjoint(tck_product(c.g, x, y)) !=
      tck_product(c.g, tck_adjoint(y), tck_adjoint(x)))
    return TrialFailure{{{"reason", "adjoint is not an anti-automorphism"}}};
  if (tck_adjoint(tck_adjoint(x)) != x)
    return TrialFailure{{{"reason", "adjoint not involutive"}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_expectation_idempotent(const Ctx& c, Rng& r) {
  TckElement x = c.random_tck(r, c.cfg.max_path_len);
  DiagElement once = expectation(x);
  if (expectation(embed_diagonal(once)) != once)
    return TrialFailure{{{"reason", "expectation not idempotent"}}};
  // Contractivity of the diagonal compression on the path-space model.
  const TruncationBasis& basis = c.basis(Family::toeplitz, c.cfg.depth);
  OperatorMatrix m = represent(c.g, x, basis);
  if (op_norm(expectation_numeric(m)) > op_norm(m) + 1e-10)
    return TrialFailure{{{"reason", "diagonal compression expanded the norm"}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_expectation_positive(const Ctx& c, Rng& r) {
  TckElement x = c.random_tck(r, c.cfg.max_path_len);
  DiagElement d = expectation(tck_product(c.g, tck_adjoint(x), x));
  for (const auto& [alpha, coeff] : d.terms()) {
    Scalar sum;
    for (const auto& [mu, cmu] : d.terms())
      if (mu.is_prefix_of(alpha)) sum += cmu;
    if (!sum.im.is_zero() || sum.re.is_negative())
      return TrialFailure{{{"reason", "Phi(x*x) has a negative atom"},
                           {"atom", format_path(c.g, alpha)},
                           {"element", diag_to_json(c.g, d)}}};
  }
  return std::nullopt;
}

std::optional<TrialFailure> prop_cycle_lemma(const Ctx& c, Rng&) {
  const Graph& g = c.g;
  std::vector<Path> pool;
  for (int v = 0; v < g.vertex_count(); ++v)
    for (int n = 0; n <= 4; ++n)
      for (Path& p : paths_from(g, v, n)) pool.push_back(std::move(p));
  long checked = 0;
  for (const Path& lambda : pool) {
    for (const Path& mu : pool) {
      for (const Path& nu : pool) {
        if (!(lambda.length() >= nu.length() && nu.length() > mu.length())) continue;
        ++checked;
        // Any internal inconsistency raises InternalError, which the
        // harness records as a failure.
        CycleLemmaResult res = cycle_lemma_check(g, lambda, mu, nu);
        if (mu.source(g) != nu.source(g)) {
          if (!res.zero)
            return TrialFailure{{{"reason", "mismatched sources gave nonzero sandwich"}}};
          continue;
        }
        TckElement proj = TckElement::range_projection(lambda);
        TckElement direct = tck_product(
            g, tck_product(g, proj, TckElement::from_term(TckTerm{mu, nu})), proj);
        if (res.zero != direct.is_zero())
          return TrialFailure{{{"reason", "cycle lemma zero-verdict mismatch"},
                               {"lambda", format_path(g, lambda)},
                               {"mu", format_path(g, mu)},
                               {"nu", format_path(g, nu)}}};
      }
    }
  }
  if (checked == 0) return std::nullopt;  // acyclic graphs have no such triples
  return std::nullopt;
}

std::optional<TrialFailure> prop_linear_independence(const Ctx& c, Rng& r) {
  TckElement x = c.random_tck(r, c.cfg.max_path_len);
  TckElement y = c.random_tck(r, c.cfg.max_path_len);
  if (x == y) return std::nullopt;
  const TruncationBasis& basis = c.basis(Family::toeplitz, c.cfg.depth);
  OperatorMatrix diff = represent(c.g, x, basis) - represent(c.g, y, basis);
  if (max_abs_entry(diff) < 0.1)
    return TrialFailure{{{"reason", "distinct canonical elements look equal"},
                         {"x", tck_to_json(c.g, x)},
                         {"y", tck_to_json(c.g, y)}}};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// boundary_rep properties
// ---------------------------------------------------------------------------

std::optional<TrialFailure> prop_tck_axioms(const Ctx& c, Rng&) {
  const Graph& g = c.g;
  int depth = c.cfg.depth;
  const TruncationBasis& basis = c.basis(Family::boundary, depth);
  std::vector<int> block;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.labels[i].length() < depth) block.push_back(i);

  // (TCK1): distinct vertex projections are orthogonal (diagonal model, so
  // the full product is exact).
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int w = v + 1; w < g.vertex_count(); ++w) {
      OperatorMatrix prod = multiply(represent(g, TckElement::vertex_projection(v), basis),
                                     represent(g, TckElement::vertex_projection(w), basis));
      if (max_abs_entry(prod) != 0.0)
        return TrialFailure{{{"reason", "vertex projections not orthogonal"},
                             {"v", g.vertex_name(v)},
                             {"w", g.vertex_name(w)}}};
    }
  }

  for (int e = 0; e < g.edge_count(); ++e) {
    Path edge_path(g.edge(e).range, {e});
    Path src = Path::at_vertex(g.edge(e).source);
    // (TCK2): t_e^* t_e = q_{s(e)} on the short-label block.
    OperatorMatrix te = represent(g, TckElement::from_term(TckTerm{edge_path, src}), basis);
    OperatorMatrix lhs = multiply(adjoint(te), te);
    OperatorMatrix rhs = represent(g, TckElement::vertex_projection(g.edge(e).source), basis);
    for (int i : block)
      for (int j : block)
        if (std::abs(lhs.at(i, j) - rhs.at(i, j)) > 1e-12)
          return TrialFailure{{{"reason", "TCK2 fails on interior block"},
                               {"edge", g.edge(e).id}}};
  }

  // (TCK3): q_v dominates the sum of range projections of its edges.
  for (int v = 0; v < g.vertex_count(); ++v) {
    TckElement defect = TckElement::vertex_projection(v);
    for (int e : g.extensions_at(v)) {
      Path edge_path(v, {e});
      defect = defect - TckElement::range_projection(edge_path);
    }
    OperatorMatrix m = represent(g, defect, basis);
    for (int i : block)
      if (std::real(m.at(i, i)) < -1e-12)
        return TrialFailure{{{"reason", "TCK3 fails on interior block"},
                             {"vertex", g.vertex_name(v)}}};
  }
  return std::nullopt;
}

std::optional<TrialFailure> prop_monotone(const Ctx& c, Rng& r, Family family) {
  int lo = c.cfg.max_path_len;
  TckElement x = c.random_tck(r, lo);
  double prev = -1.0;
  for (int d = lo; d <= lo + 3; ++d) {
    double n = op_norm(represent(c.g, x, c.basis(family, d)));
    if (n + 1e-10 < prev)
      return TrialFailure{{{"reason", "compression norm decreased with depth"},
                           {"family", family == Family::boundary ? "boundary" : "toeplitz"},
                           {"depth", d},
                           {"norm", n},
                           {"previous", prev},
                           {"element", tck_to_json(c.g, x)}}};
    prev = std::max(prev, n);
  }
  return std::nullopt;
}

std::optional<TrialFailure> prop_expectation_compatible(const Ctx& c, Rng& r) {
  TckElement x = c.random_tck(r, c.cfg.max_path_len);
  const TruncationBasis& basis = c.basis(Family::boundary, c.cfg.depth);
  OperatorMatrix numeric = expectation_numeric(represent(c.g, x, basis));
  OperatorMatrix symbolic = represent_diag(c.g, expectation(x), basis);
  if (max_abs_entry(numeric - symbolic) > 1e-12)
    return TrialFailure{{{"reason", "the two expectation routes disagree"},
                         {"element", tck_to_json(c.g, x)}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_co_universal(const Ctx& c, Rng& r) {
  TckElement x = c.random_tck(r, c.cfg.max_path_len);
  const TruncationBasis& bb = c.basis(Family::boundary, c.cfg.depth);
  const TruncationBasis& tb = c.basis(Family::toeplitz, c.cfg.depth);
  double boundary = op_norm(represent(c.g, x, bb));
  double toeplitz = op_norm(represent(c.g, x, tb));
  if (boundary > toeplitz + 1e-8)
    return TrialFailure{{{"reason", "boundary norm exceeds path-space norm"},
                         {"boundary", boundary},
                         {"toeplitz", toeplitz},
                         {"element", tck_to_json(c.g, x)}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_ck_condition_a(const Ctx& c, Rng& r) {
  int v = r.uniform(c.g.vertex_count());
  PathSet F = c.random_pathset(r, v, 4, c.cfg.max_path_len);
  bool exhaustive = is_exhaustive(c.g, F).exhaustive;
  DiagElement prod = ck4_product(c.g, Path::at_vertex(v), F);
  const TruncationBasis& basis = c.basis(Family::boundary, c.cfg.depth);
  double numeric = max_abs_entry(represent_diag(c.g, prod, basis));
  if (exhaustive && numeric != 0.0)
    return TrialFailure{{{"reason", "exhaustive product is not numerically zero"},
                         {"vertex", c.g.vertex_name(v)},
                         {"max_entry", numeric}}};
  if (!exhaustive && c.cfg.depth >= 2 * c.cfg.max_path_len && numeric == 0.0)
    return TrialFailure{{{"reason", "non-exhaustive product vanished numerically"},
                         {"vertex", c.g.vertex_name(v)}}};
  return std::nullopt;
}

std::optional<TrialFailure> prop_faithfulness(const Ctx& c, Rng& r) {
  int maxlen = std::min(c.cfg.max_path_len, c.cfg.depth / 2);
  TckElement x = c.random_tck(r, maxlen);
  if (x.is_zero()) return std::nullopt;  // nothing to probe
  const TruncationBasis& bb = c.basis(Family::boundary, c.cfg.depth);
  OperatorMatrix mx = represent(c.g, x, bb);
  TckElement xsx = tck_product(c.g, tck_adjoint(x), x);
  if (max_abs_entry(mx) > 1e-12) {
    double diag = op_norm(expectation_numeric(represent(c.g, xsx, bb)));
    if (diag <= 1e-12)
      return TrialFailure{{{"reason", "expectation vanished on a visibly nonzero x*x"},
                           {"element", tck_to_json(c.g, x)}}};
  }
  // Kernel chain: symbolic zero in the path-space model forces zero in the
  // boundary model.
  bool toeplitz_zero = true;
  for (int d = x.max_path_length(); d <= c.cfg.depth && toeplitz_zero; ++d) {
    if (max_abs_entry(represent(c.g, x, c.basis(Family::toeplitz, d))) > 1e-12)
      toeplitz_zero = false;
  }
  if (toeplitz_zero && max_abs_entry(mx) > 1e-12)
    return TrialFailure{{{"reason", "kernel chain violated"},
                         {"element", tck_to_json(c.g, x)}}};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<Property> property_list(const SuiteConfig& cfg) {
  std::vector<Property> props;
  auto add = [&](std::string name, bool needs_l, int trials, TrialFn fn) {
    props.push_back(Property{std::move(name), needs_l, trials, std::move(fn)});
  };
  int t = cfg.trials;
  add("paths-from-enumeration", false, 0, prop_paths_from);
  add("condition-l-oracle", false, 0, prop_condition_l_oracle);
  add("aperiodic-tail-disjunction", false, 0, prop_aperiodic_tail);
  add("witness-prefix-coherence", true, 0, prop_witness_prefix);
  add("exhaustive-matches-oracle", false, t, prop_exhaustive_oracle);
  add("exhaustive-monotone", false, t, prop_exhaustive_monotone);
  add("exhaustive-prefix-absorption", false, t, prop_exhaustive_absorption);
  add("diag-product-assoc-comm", false, t, prop_diag_assoc_comm);
  add("orthogonalize-identity", false, t, prop_orthogonalize);
  add("diag-norm-contractive", true, t, prop_diag_norm_contractive);
  add("ck4-iff-exhaustive", true, t, prop_ck4_iff_exhaustive);
  add("diag-norm-matches-numeric", true, t, prop_diag_norm_numeric);
  add("tck-assoc-adjoint", false, t, prop_tck_assoc_adjoint);
  add("expectation-idempotent-contractive", false, t, prop_expectation_idempotent);
  add("expectation-positive-atoms", false, t, prop_expectation_positive);
  add("cycle-lemma-enumeration", false, 0, prop_cycle_lemma);
  add("linear-independence-truncation", false, t, prop_linear_independence);
  add("tck-axioms-truncated", true, 0, prop_tck_axioms);
  add("compression-monotone-toeplitz", false, std::max(1, t / 4),
      [](const Ctx& c, Rng& r) { return prop_monotone(c, r, Family::toeplitz); });
  add("compression-monotone-boundary", true, std::max(1, t / 4),
      [](const Ctx& c, Rng& r) { return prop_monotone(c, r, Family::boundary); });
  add("expectation-compatibility", true, t, prop_expectation_compatible);
  add("co-universal-inequality", true, t, prop_co_universal);
  add("ck-condition-a", true, t, prop_ck_condition_a);
  add("faithfulness-probe", true, t, prop_faithfulness);
  return props;
}

PropertyRecord run_property(const Ctx& ctx, const SuiteConfig& cfg, const Property& prop) {
  PropertyRecord rec;
  rec.name = prop.name;
  auto start = std::chrono::steady_clock::now();
  int total = prop.trials == 0 ? 1 : prop.trials;
  rec.trials = total;
  for (int trial = 0; trial < total; ++trial) {
    Rng rng(mix_seed(cfg.seed, fnv1a(prop.name), trial));
    std::optional<TrialFailure> failure;
    try {
      failure = prop.run(ctx, rng);
    } catch (const std::exception& e) {
      failure = TrialFailure{{{"error", e.what()}}};
    }
    if (failure) {
      ++rec.failures;
      if (rec.witnesses.size() < 5) {
        json w;
        w["property"] = prop.name;
        w["trial"] = trial;
        w["seed"] = cfg.seed;
        w["depth"] = cfg.depth;
        w["max_path_len"] = cfg.max_path_len;
        w["trials"] = cfg.trials;
        w["graph"] = graph_to_json(ctx.g);
        w["detail"] = failure->detail;
        rec.witnesses.push_back(std::move(w));
      }
    }
  }
  auto end = std::chrono::steady_clock::now();
  rec.millis = std::chrono::duration<double, std::milli>(end - start).count();
  return rec;
}

}  // namespace

json SuiteReport::to_json(bool with_timings) const {
  json out;
  out["all_pass"] = all_pass;
  out["properties"] = json::array();
  for (const auto& rec : properties) {
    json p;
    p["name"] = rec.name;
    if (rec.skipped) {
      p["skipped"] = true;
      p["reason"] = rec.skip_reason;
    } else {
      p["trials"] = rec.trials;
      p["failures"] = rec.failures;
      if (!rec.witnesses.empty()) p["witnesses"] = rec.witnesses;
    }
    if (with_timings) p["millis"] = rec.millis;
    out["properties"].push_back(std::move(p));
  }
  return out;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  if (cfg.graph.vertex_count() == 0)
    throw PreconditionError("run_suite: the graph has no vertices");
  if (cfg.depth < cfg.max_path_len + 1)
    throw PreconditionError("run_suite: depth must be at least max path length + 1");
  if (cfg.trials < 1) throw PreconditionError("run_suite: trials must be positive");

  Ctx ctx(cfg.graph, cfg, std::max(4, cfg.max_path_len));
  bool condition_l = check_condition_l(cfg.graph).holds;

  SuiteReport report;
  for (const Property& prop : property_list(cfg)) {
    if (prop.needs_condition_l && !condition_l) {
      PropertyRecord rec;
      rec.name = prop.name;
      rec.skipped = true;
      rec.skip_reason =
          "Condition (L) fails: the aperiodic boundary representation is not "
          "available for this graph";
      report.properties.push_back(std::move(rec));
      continue;
    }
    PropertyRecord rec = run_property(ctx, cfg, prop);
    if (rec.failures > 0) report.all_pass = false;
    report.properties.push_back(std::move(rec));
  }
  return report;
}

PropertyRecord faithfulness_probe(const Graph& g, int trials, int depth,
                                  std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.graph = g;
  cfg.seed = seed;
  cfg.depth = depth;
  cfg.max_path_len = std::max(1, depth / 2);
  cfg.trials = trials;
  Ctx ctx(cfg.graph, cfg, std::max(4, cfg.max_path_len));
  Property prop{"faithfulness-probe", true, trials, prop_faithfulness};
  return run_property(ctx, cfg, prop);
}

PropertyRecord replay(const json& witness) {
  if (!witness.contains("property") || !witness.contains("graph"))
    throw ParseError("replay: witness needs \"property\" and \"graph\"");
  SuiteConfig cfg;
  cfg.graph = parse_graph(witness["graph"].dump());
  cfg.seed = witness.value("seed", 42ULL);
  cfg.depth = witness.value("depth", 6);
  cfg.max_path_len = witness.value("max_path_len", 3);
  cfg.trials = witness.value("trials", 200);
  std::string name = witness["property"].get<std::string>();
  int trial = witness.value("trial", 0);

  for (const Property& prop : property_list(cfg)) {
    if (prop.name != name) continue;
    Ctx ctx(cfg.graph, cfg, std::max(4, cfg.max_path_len));
    PropertyRecord rec;
    rec.name = name;
    rec.trials = 1;
    Rng rng(mix_seed(cfg.seed, fnv1a(name), trial));
    std::optional<TrialFailure> failure;
    try {
      failure = prop.run(ctx, rng);
    } catch (const std::exception& e) {
      failure = TrialFailure{{{"error", e.what()}}};
    }
    if (failure) {
      rec.failures = 1;
      json w = witness;
      w["detail"] = failure->detail;
      rec.witnesses.push_back(std::move(w));
    }
    return rec;
  }
  throw ParseError("replay: unknown property " + name);
}

}  // namespace graphck
