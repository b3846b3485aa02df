#pragma once

#include <string>

#include "graphck/graph.hpp"
#include "graphck/io.hpp"

// Shared test graphs.
//   g1: loop e at v with entrance f arriving from terminal w.
//   g2: two loops g, h at a single vertex u.
//   g3: a lone loop k with no entrance.
namespace fixtures {

inline const char* kG1 = R"({
  "vertices": ["v", "w"],
  "edges": [
    {"id": "e", "range": "v", "source": "v"},
    {"id": "f", "range": "v", "source": "w"}
  ],
  "infinite_emitters": []
})";

inline const char* kG2 = R"({
  "vertices": ["u"],
  "edges": [
    {"id": "g", "range": "u", "source": "u"},
    {"id": "h", "range": "u", "source": "u"}
  ],
  "infinite_emitters": []
})";

inline const char* kG3 = R"({
  "vertices": ["z"],
  "edges": [
    {"id": "k", "range": "z", "source": "z"}
  ],
  "infinite_emitters": []
})";

inline graphck::Graph g1() { return graphck::parse_graph(kG1); }
inline graphck::Graph g2() { return graphck::parse_graph(kG2); }
inline graphck::Graph g3() { return graphck::parse_graph(kG3); }

// g1 with v flagged as an infinite emitter.
inline graphck::Graph g1_flagged() {
  return graphck::parse_graph(R"({
    "vertices": ["v", "w"],
    "edges": [
      {"id": "e", "range": "v", "source": "v"},
      {"id": "f", "range": "v", "source": "w"}
    ],
    "infinite_emitters": ["v"]
  })");
}

// g2 with u flagged as an infinite emitter.
inline graphck::Graph g2_flagged() {
  return graphck::parse_graph(R"({
    "vertices": ["u"],
    "edges": [
      {"id": "g", "range": "u", "source": "u"},
      {"id": "h", "range": "u", "source": "u"}
    ],
    "infinite_emitters": ["u"]
  })");
}

inline graphck::Path path(const graphck::Graph& g, const std::string& text) {
  return graphck::parse_path(g, text);
}

}  // namespace fixtures
