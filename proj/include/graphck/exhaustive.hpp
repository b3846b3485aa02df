#pragma once

#include <optional>
#include <vector>

#include "graphck/graph.hpp"

namespace graphck {

/// Finite set of paths sharing a range vertex (deduplicated, sorted).
struct PathSet {
  int base = -1;
  std::vector<Path> members;

  static PathSet of(const Graph& g, int base, std::vector<Path> members);
  bool contains(const Path& p) const;
  bool empty() const { return members.empty(); }
};

/// A path incomparable with every member of some set.  When
/// phantom_extension is set, the incomparable path is stem followed by one
/// of the unenumerated edges at the infinite emitter s(stem); the stem alone
/// may still be comparable.
struct PathWitness {
  Path stem;
  bool phantom_extension = false;
};

struct ExhaustVerdict {
  bool exhaustive = false;
  std::optional<PathWitness> witness;  // present iff !exhaustive
};

/// True iff one path is an initial segment of the other.  Throws
/// PreconditionError when the range vertices differ.
bool comparable(const Path& lambda, const Path& alpha);

/// Prefix comparability that treats mismatched ranges as incomparable.
inline bool prefix_comparable(const Path& a, const Path& b) {
  return a.is_prefix_of(b) || b.is_prefix_of(a);
}

/// Decides whether every path in vE* is comparable with some member of F.
/// A depth-first search from the base vertex prunes covered branches and
/// reports the first (lexicographic) incomparable path as witness; an
/// uncovered infinite emitter on the frontier yields a phantom witness,
/// since finitely many explicit paths can never cover its phantom edges.
ExhaustVerdict is_exhaustive(const Graph& g, const PathSet& F);

/// First witness that is a genuine explicit path, skipping phantom
/// witnesses; nullopt when every explicit path is comparable with F.
std::optional<Path> first_explicit_witness(const Graph& g, const PathSet& F);

/// Brute-force check over all of vE^{<= depth}: true iff every such path
/// (including one modelled phantom continuation per infinite emitter) is
/// comparable with some member.  Agrees with is_exhaustive whenever depth
/// >= max member length.
bool exhaustive_oracle(const Graph& g, const PathSet& F, int depth);

}  // namespace graphck
