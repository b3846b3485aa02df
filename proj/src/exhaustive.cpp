#include "graphck/exhaustive.hpp"

#include <algorithm>

namespace graphck {

PathSet PathSet::of(const Graph& g, int base, std::vector<Path> members) {
  if (base < 0 || base >= g.vertex_count())
    throw ValidationError("PathSet: unknown base vertex");
  for (const Path& p : members) {
    p.require_valid(g);
    if (p.range() != base)
      throw ValidationError("PathSet: member range differs from base vertex");
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return PathSet{base, std::move(members)};
}

bool PathSet::contains(const Path& p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

bool comparable(const Path& lambda, const Path& alpha) {
  if (lambda.range() != alpha.range())
    throw PreconditionError("comparable: paths have different range vertices");
  return prefix_comparable(lambda, alpha);
}

namespace {

bool covered_by(const PathSet& F, const Path& p) {
  for (const Path& m : F.members)
    if (m.is_prefix_of(p)) return true;
  return false;
}

bool proper_prefix_of_member(const PathSet& F, const Path& p) {
  for (const Path& m : F.members)
    if (p.length() < m.length() && p.is_prefix_of(m)) return true;
  return false;
}

// Shared DFS.  Nodes are only extended while they are proper prefixes of
// members, so the search depth is bounded by the longest member.  With
// allow_phantom false the search looks past uncovered emitters for a real
// incomparable path.
std::optional<PathWitness> find_witness(const Graph& g, const PathSet& F,
                                        bool allow_phantom) {
  if (F.empty()) {
    // Nothing to compare against: the first extension of the base vertex is
    // the canonical witness, degenerating to the vertex path itself when no
    // extension exists.
    const auto& ext = g.extensions_at(F.base);
    Path at = Path::at_vertex(F.base);
    if (!ext.empty()) return PathWitness{at.append(ext[0]), false};
    if (g.infinite_emitter(F.base) && allow_phantom) return PathWitness{at, true};
    return PathWitness{at, false};
  }
  auto dfs = [&](auto&& self, const Path& p) -> std::optional<PathWitness> {
    if (covered_by(F, p)) return std::nullopt;  // whole subtree comparable
    if (!proper_prefix_of_member(F, p)) return PathWitness{p, false};
    // p is a proper prefix of some member, hence comparable itself; phantom
    // continuations at an emitter cannot be covered by any member.
    if (allow_phantom && g.infinite_emitter(p.source(g)))
      return PathWitness{p, true};
    for (int e : g.extensions_at(p.source(g)))
      if (auto w = self(self, p.append(e))) return w;
    return std::nullopt;
  };
  return dfs(dfs, Path::at_vertex(F.base));
}

}  // namespace

ExhaustVerdict is_exhaustive(const Graph& g, const PathSet& F) {
  if (F.base < 0 || F.base >= g.vertex_count())
    throw ValidationError("is_exhaustive: unknown base vertex");
  auto w = find_witness(g, F, /*allow_phantom=*/true);
  if (w) return {false, w};
  return {true, std::nullopt};
}

std::optional<Path> first_explicit_witness(const Graph& g, const PathSet& F) {
  auto w = find_witness(g, F, /*allow_phantom=*/false);
  if (!w) return std::nullopt;
  if (w->phantom_extension) return std::nullopt;
  return w->stem;
}

bool exhaustive_oracle(const Graph& g, const PathSet& F, int depth) {
  if (depth < 0) throw PreconditionError("exhaustive_oracle: negative depth");
  auto comparable_with_some = [&](const Path& p) {
    return std::any_of(F.members.begin(), F.members.end(),
                       [&](const Path& m) { return prefix_comparable(p, m); });
  };
  bool ok = true;
  auto enumerate = [&](auto&& self, const Path& p) -> void {
    if (!ok) return;
    if (!comparable_with_some(p)) {
      ok = false;
      return;
    }
    // One phantom continuation per emitter stands in for them all: it is
    // comparable with a member iff that member is a prefix of the stem.
    if (g.infinite_emitter(p.source(g)) && !covered_by(F, p)) {
      ok = false;
      return;
    }
    if (p.length() == depth) return;
    for (int e : g.extensions_at(p.source(g))) self(self, p.append(e));
  };
  enumerate(enumerate, Path::at_vertex(F.base));
  return ok;
}

}  // namespace graphck
