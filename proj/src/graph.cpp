#include "graphck/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace graphck {

Graph Graph::from_parts(
    std::vector<std::string> vertex_names,
    std::vector<std::tuple<std::string, std::string, std::string>> edges_irs,
    std::vector<std::string> infinite_emitter_names) {
  Graph g;
  std::sort(vertex_names.begin(), vertex_names.end());
  for (std::size_t i = 1; i < vertex_names.size(); ++i)
    if (vertex_names[i] == vertex_names[i - 1])
      throw ValidationError("duplicate vertex id: " + vertex_names[i]);
  g.vertices_ = std::move(vertex_names);

  std::sort(edges_irs.begin(), edges_irs.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  for (const auto& [id, range, source] : edges_irs) {
    if (id.empty()) throw ValidationError("empty edge id");
    if (id.find_first_of(".,:") != std::string::npos || id[0] == '@')
      throw ValidationError("edge id '" + id +
                            "' clashes with path-literal delimiters ('.', ',', ':', leading '@')");
    if (!g.edges_.empty() && g.edges_.back().id == id)
      throw ValidationError("duplicate edge id: " + id);
    Edge e;
    e.id = id;
    e.range = g.find_vertex(range);
    e.source = g.find_vertex(source);
    if (e.range < 0)
      throw ValidationError("edge " + id + ": undeclared range vertex " + range);
    if (e.source < 0)
      throw ValidationError("edge " + id + ": undeclared source vertex " + source);
    g.edges_.push_back(std::move(e));
  }

  g.emitter_.assign(g.vertices_.size(), false);
  for (const auto& name : infinite_emitter_names) {
    int v = g.find_vertex(name);
    if (v < 0) throw ValidationError("infinite_emitters: unknown vertex " + name);
    g.emitter_[v] = true;
  }

  g.ext_.assign(g.vertices_.size(), {});
  for (int e = 0; e < g.edge_count(); ++e) g.ext_[g.edges_[e].range].push_back(e);
  return g;
}

int Graph::find_vertex(const std::string& name) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end() || *it != name) return -1;
  return static_cast<int>(it - vertices_.begin());
}

int Graph::find_edge(const std::string& id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, const std::string& s) { return e.id < s; });
  if (it == edges_.end() || it->id != id) return -1;
  return static_cast<int>(it - edges_.begin());
}

int Graph::vertex_index(const std::string& name) const {
  int v = find_vertex(name);
  if (v < 0) throw ValidationError("unknown vertex: " + name);
  return v;
}

int Path::vertex_at(const Graph& g, int i) const {
  if (i < 0 || i > length()) throw PreconditionError("Path::vertex_at: index out of range");
  return i == 0 ? base_ : g.edge(edges_[i - 1]).source;
}

bool Path::valid_in(const Graph& g) const {
  if (base_ < 0 || base_ >= g.vertex_count()) return false;
  int at = base_;
  for (int e : edges_) {
    if (e < 0 || e >= g.edge_count()) return false;
    if (g.edge(e).range != at) return false;
    at = g.edge(e).source;
  }
  return true;
}

void Path::require_valid(const Graph& g) const {
  if (!valid_in(g)) throw ValidationError("path is not composable in this graph");
}

Path Path::segment(const Graph& g, int p, int q) const {
  if (p < 0 || q < p || q > length())
    throw PreconditionError("Path::segment: bad indices");
  Path r(vertex_at(g, p), std::vector<int>(edges_.begin() + p, edges_.begin() + q));
  return r;
}

bool Path::is_prefix_of(const Path& other) const {
  if (base_ != other.base_) return false;
  if (length() > other.length()) return false;
  return std::equal(edges_.begin(), edges_.end(), other.edges_.begin());
}

Path Path::append(int edge_index) const {
  Path r = *this;
  r.edges_.push_back(edge_index);
  return r;
}

Path Path::concat(const Graph& g, const Path& other) const {
  if (source(g) != other.range())
    throw PreconditionError("Path::concat: paths do not compose");
  Path r = *this;
  r.edges_.insert(r.edges_.end(), other.edges_.begin(), other.edges_.end());
  return r;
}

Cycle Cycle::of(const Graph& g, Path p) {
  p.require_valid(g);
  if (p.length() < 1 || p.range() != p.source(g))
    throw PreconditionError("not a cycle: needs |rho| >= 1 and r(rho) = s(rho)");
  return Cycle{std::move(p)};
}

std::vector<Path> paths_from(const Graph& g, int v, int n) {
  if (v < 0 || v >= g.vertex_count()) throw ValidationError("paths_from: unknown vertex");
  if (n < 0) throw PreconditionError("paths_from: negative length");
  std::vector<Path> out;
  Path start = Path::at_vertex(v);
  // DFS in extension-edge (= id) order yields lexicographic output.
  auto walk = [&](auto&& self, const Path& p) -> void {
    if (p.length() == n) {
      out.push_back(p);
      return;
    }
    for (int e : g.extensions_at(p.source(g))) self(self, p.append(e));
  };
  walk(walk, start);
  return out;
}

ExtensionEdges extension_edges(const Graph& g, const Path& lambda) {
  lambda.require_valid(g);
  int s = lambda.source(g);
  return ExtensionEdges{g.extensions_at(s), g.infinite_emitter(s)};
}

namespace {

// Enumerates vertex-simple cycles (no repeated vertex except the closing
// one).  Each cycle is produced once, anchored at its minimal vertex index.
// Restricting to vertex-simple cycles is enough for entrance questions.
std::vector<Path> simple_cycles(const Graph& g, const std::vector<bool>& in_scope) {
  std::vector<Path> cycles;
  for (int v0 = 0; v0 < g.vertex_count(); ++v0) {
    if (!in_scope[v0]) continue;
    std::vector<bool> visited(g.vertex_count(), false);
    visited[v0] = true;
    auto dfs = [&](auto&& self, const Path& p) -> void {
      int at = p.source(g);
      for (int e : g.extensions_at(at)) {
        int nxt = g.edge(e).source;
        if (!in_scope[nxt]) continue;
        if (nxt == v0) {
          cycles.push_back(p.append(e));
          continue;
        }
        if (nxt < v0 || visited[nxt]) continue;  // anchor at minimal vertex
        visited[nxt] = true;
        self(self, p.append(e));
        visited[nxt] = false;
      }
    };
    dfs(dfs, Path::at_vertex(v0));
  }
  return cycles;
}

bool cycle_has_entrance(const Graph& g, const Path& rho) {
  std::set<int> cycle_edges(rho.edges().begin(), rho.edges().end());
  std::set<int> cycle_vertices;
  for (int i = 0; i < rho.length(); ++i) cycle_vertices.insert(rho.vertex_at(g, i));
  for (int v : cycle_vertices) {
    if (g.infinite_emitter(v)) return true;  // phantom edges are entrances
    for (int e : g.extensions_at(v))
      if (!cycle_edges.count(e)) return true;
  }
  return false;
}

std::vector<bool> source_reachable(const Graph& g, int v) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<int> stack{v};
  seen[v] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int e : g.extensions_at(u)) {
      int w = g.edge(e).source;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

ConditionLVerdict condition_l_impl(const Graph& g, const std::vector<bool>& scope) {
  for (const Path& rho : simple_cycles(g, scope))
    if (!cycle_has_entrance(g, rho)) return {false, Cycle{rho}};
  return {true, std::nullopt};
}

}  // namespace

ConditionLVerdict check_condition_l(const Graph& g) {
  return condition_l_impl(g, std::vector<bool>(g.vertex_count(), true));
}

ConditionLVerdict check_condition_l_reachable(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count())
    throw ValidationError("check_condition_l_reachable: unknown vertex");
  return condition_l_impl(g, source_reachable(g, v));
}

Path aperiodic_tail(const Graph& g, int v, int bound) {
  if (v < 0 || v >= g.vertex_count()) throw ValidationError("aperiodic_tail: unknown vertex");
  if (bound < 0) throw PreconditionError("aperiodic_tail: negative bound");

  auto satisfies = [&](const Path& tau) {
    if (g.terminal(tau.source(g))) return true;
    if (tau.length() <= bound) return false;
    int last = tau.edges().back();
    for (int i = 0; i + 1 < tau.length(); ++i)
      if (tau.edge_at(i) == last) return false;
    return true;
  };

  // Iterative deepening keeps the result shortest-first, and DFS in edge-id
  // order makes ties lexicographic.
  int cap = bound + g.edge_count() + g.vertex_count() + 2;
  for (int len = 0; len <= cap; ++len) {
    std::optional<Path> found;
    auto dfs = [&](auto&& self, const Path& p) -> void {
      if (found) return;
      if (p.length() == len) {
        if (satisfies(p)) found = p;
        return;
      }
      for (int e : g.extensions_at(p.source(g))) {
        self(self, p.append(e));
        if (found) return;
      }
    };
    dfs(dfs, Path::at_vertex(v));
    if (found) return *found;
  }

  auto verdict = check_condition_l_reachable(g, v);
  std::string msg = "aperiodic_tail: no suitable path from " + g.vertex_name(v) +
                    " within length " + std::to_string(cap);
  if (!verdict.holds) {
    msg += "; entrance-less cycle reachable (first edge " +
           g.edge(verdict.witness->path.edge_at(0)).id + ")";
  }
  throw PreconditionError(msg);
}

WitnessTail witness_tail(const Graph& g, int v, long branch_phase, int maxlen) {
  WitnessTail out;
  int at = v;
  long counter = branch_phase;
  int forced_run = 0;
  while (static_cast<int>(out.edges.size()) < maxlen) {
    const auto& ext = g.extensions_at(at);
    if (ext.empty() || g.infinite_emitter(at)) {
      // Terminal or emitter vertex: the finite path so far is a boundary path.
      out.complete = true;
      return out;
    }
    int chosen;
    if (ext.size() == 1) {
      chosen = ext[0];
      if (++forced_run > g.vertex_count())
        throw InternalError("witness_tail: entered an entrance-less cycle");
    } else {
      chosen = ext[thue_morse_bit(counter++)];
      forced_run = 0;
    }
    out.edges.push_back(chosen);
    at = g.edge(chosen).source;
  }
  out.complete = false;
  return out;
}

long branch_count(const Graph& g, const Path& lambda) {
  long n = 0;
  for (int i = 0; i < lambda.length(); ++i)
    if (g.branch_vertex(lambda.vertex_at(g, i))) ++n;
  return n;
}

Path witness_prefix(const Graph& g, int v, int len) {
  if (v < 0 || v >= g.vertex_count()) throw ValidationError("witness_prefix: unknown vertex");
  if (len < 0) throw PreconditionError("witness_prefix: negative length");
  auto verdict = check_condition_l_reachable(g, v);
  if (!verdict.holds)
    throw PreconditionError(
        "witness_prefix: entrance-less cycle reachable from " + g.vertex_name(v) +
        "; no aperiodic boundary path can be certified");
  WitnessTail t = witness_tail(g, v, 0, len);
  return Path(v, std::move(t.edges));
}

}  // namespace graphck
