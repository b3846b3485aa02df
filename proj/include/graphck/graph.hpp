#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "graphck/rational.hpp"

namespace graphck {

/// Directed edge.  `range` and `source` are vertex indices into the owning
/// Graph; a path e1 e2 ... en composes when source(e_i) = range(e_{i+1}).
struct Edge {
  std::string id;
  int range = -1;
  int source = -1;
};

/// Finite directed graph with explicit vertices/edges plus a per-vertex flag
/// marking vertices that emit infinitely many additional, unenumerated
/// ("phantom") edges.  Phantom edges are never materialised; they influence
/// exhaustiveness, boundary membership and entrance detection only.
/// Immutable after construction; vertex and edge indices follow the
/// lexicographic order of their ids, so index order == id order everywhere.
class Graph {
 public:
  /// Validates and builds a graph from named parts.  Throws ValidationError
  /// on duplicate ids or dangling edge endpoints.
  static Graph from_parts(std::vector<std::string> vertex_names,
                          std::vector<std::tuple<std::string, std::string, std::string>>
                              edges_id_range_source,
                          std::vector<std::string> infinite_emitter_names);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::string& vertex_name(int v) const { return vertices_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }

  /// Index lookup; returns -1 when the name is unknown.
  int find_vertex(const std::string& name) const;
  int find_edge(const std::string& id) const;

  /// Index lookup; throws ValidationError when the name is unknown.
  int vertex_index(const std::string& name) const;

  /// Explicit edges with range v, in id order.  These are the ways a path
  /// arriving at v can be extended by one edge.
  const std::vector<int>& extensions_at(int v) const { return ext_.at(v); }

  bool infinite_emitter(int v) const { return emitter_.at(v); }

  /// No explicit extensions and not flagged: s(lambda)E^1 is genuinely empty.
  bool terminal(int v) const { return ext_.at(v).empty() && !emitter_.at(v); }

  /// At least two explicit extension edges: a branch point for the
  /// deterministic boundary-path selector.
  bool branch_vertex(int v) const { return ext_.at(v).size() >= 2; }

 private:
  std::vector<std::string> vertices_;   // sorted by name
  std::vector<Edge> edges_;             // sorted by id
  std::vector<std::vector<int>> ext_;   // per-vertex extension edges
  std::vector<bool> emitter_;
};

/// Finite path: a base vertex (the range when length 0) plus a composable
/// edge sequence.  For nonempty paths base == range of the first edge.
class Path {
 public:
  Path() = default;
  Path(int base, std::vector<int> edges) : base_(base), edges_(std::move(edges)) {}

  static Path at_vertex(int v) { return Path(v, {}); }

  int length() const { return static_cast<int>(edges_.size()); }
  bool is_vertex() const { return edges_.empty(); }
  int base() const { return base_; }
  const std::vector<int>& edges() const { return edges_; }
  int edge_at(int i) const { return edges_.at(i); }

  /// Range vertex r(lambda).
  int range() const { return base_; }
  /// Source vertex s(lambda); the base for length 0.
  int source(const Graph& g) const {
    return edges_.empty() ? base_ : g.edge(edges_.back()).source;
  }
  /// Vertex sitting at position i along the path: r(lambda) for i = 0,
  /// s(lambda_i) for i >= 1.
  int vertex_at(const Graph& g, int i) const;

  /// Composability + base consistency against g.
  bool valid_in(const Graph& g) const;
  void require_valid(const Graph& g) const;

  /// Segment lambda_[p,q] = lambda_{p+1} ... lambda_q (edges p..q-1 here).
  Path segment(const Graph& g, int p, int q) const;

  /// True iff this is an initial segment of other (bases must match).
  bool is_prefix_of(const Path& other) const;

  Path append(int edge_index) const;
  /// Concatenation; requires s(this) = r(other).
  Path concat(const Graph& g, const Path& other) const;

  friend bool operator==(const Path& a, const Path& b) {
    return a.base_ == b.base_ && a.edges_ == b.edges_;
  }
  friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }
  /// Deterministic order: base vertex, then edge sequence lexicographically
  /// (a proper prefix sorts before its extensions).
  friend bool operator<(const Path& a, const Path& b) {
    if (a.base_ != b.base_) return a.base_ < b.base_;
    return a.edges_ < b.edges_;
  }

 private:
  int base_ = -1;
  std::vector<int> edges_;
};

/// Path rho with |rho| >= 1 and r(rho) = s(rho).
struct Cycle {
  Path path;

  static Cycle of(const Graph& g, Path p);
};

struct ConditionLVerdict {
  bool holds = false;
  std::optional<Cycle> witness;  // an entrance-less simple cycle when !holds
};

/// Parses the JSON graph file format.  Throws ParseError / ValidationError.
Graph parse_graph(const std::string& json_text);

/// All paths of length n with range v, in lexicographic edge-id order.
/// Phantom edges are never enumerated.
std::vector<Path> paths_from(const Graph& g, int v, int n);

struct ExtensionEdges {
  std::vector<int> edges;   // explicit edges with range s(lambda), id order
  bool infinite = false;    // s(lambda) is a flagged infinite emitter
};

/// s(lambda)E^1 for the explicit part, plus the emitter flag.
ExtensionEdges extension_edges(const Graph& g, const Path& lambda);

/// Every cycle has an entrance?  Checks simple cycles only (an entrance is
/// detected vertex-locally, so this decides the general statement).  Phantom
/// edges at a flagged vertex on the cycle count as entrances.
ConditionLVerdict check_condition_l(const Graph& g);

/// check_condition_l restricted to the subgraph source-reachable from v.
ConditionLVerdict check_condition_l_reachable(const Graph& g, int v);

/// Shortest path tau in vE* (ties broken lexicographically) with either
/// s(tau) terminal, or |tau| > bound and the final edge distinct from every
/// earlier edge of tau.  Throws PreconditionError when no such path exists,
/// naming the obstruction.
Path aperiodic_tail(const Graph& g, int v, int bound);

/// Deterministic boundary-path selector.  Starting at v, follow the unique
/// extension edge where there is only one; at branch vertices pick between
/// the two lexicographically smallest extensions by the Thue-Morse bit of a
/// running branch counter; stop at terminal and infinite-emitter vertices.
/// Returns the first min(len, |x(v)|) edges.  Increasing len gives nested
/// prefixes.  Throws PreconditionError when an entrance-less cycle is
/// reachable from v (the walk could not certify aperiodicity).
Path witness_prefix(const Graph& g, int v, int len);

/// Raw walk behind witness_prefix: same rule, but the branch counter starts
/// at branch_phase and the result reports whether the walk stopped (complete
/// finite boundary path) or was cut at maxlen edges.
struct WitnessTail {
  std::vector<int> edges;
  bool complete = false;  // walk reached a terminal/emitter vertex
};
WitnessTail witness_tail(const Graph& g, int v, long branch_phase, int maxlen);

/// Thue-Morse bit: parity of the popcount of n.
inline int thue_morse_bit(long n) { return __builtin_parityl(n); }

/// Number of branch-vertex decision points along lambda (used to phase the
/// selector so that extending a label by its own witness edge re-creates the
/// same boundary path).
long branch_count(const Graph& g, const Path& lambda);

}  // namespace graphck
