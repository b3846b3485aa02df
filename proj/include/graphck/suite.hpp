#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphck/graph.hpp"

#include <json.hpp>

namespace graphck {

/// Configuration for the seeded verification suite.
struct SuiteConfig {
  Graph graph;
  std::uint64_t seed = 42;
  int depth = 6;         // truncation depth for matrix-model properties
  int max_path_len = 3;  // longest path the generators will draw
  int trials = 200;      // trials per randomized property
};

struct PropertyRecord {
  std::string name;
  int trials = 0;
  int failures = 0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<nlohmann::json> witnesses;  // replayable failure records
  double millis = 0.0;
};

struct SuiteReport {
  std::vector<PropertyRecord> properties;
  bool all_pass = true;

  nlohmann::json to_json(bool with_timings = true) const;
};

/// Runs the lemma-by-lemma property suite.  Boundary-dependent properties
/// are skipped (with a reason) when the graph fails Condition (L); property
/// failures are reported, not thrown.  Throws PreconditionError only for
/// configuration errors (depth < max_path_len + 1, oversized pools).
SuiteReport run_suite(const SuiteConfig& cfg);

/// Positive-element faithfulness probe for the numeric expectation, plus the
/// kernel-chain check between the path-space and boundary compressions.
PropertyRecord faithfulness_probe(const Graph& g, int trials, int depth,
                                  std::uint64_t seed = 42);

/// Re-runs the single property trial recorded in a failure witness.
/// Returns the re-run record; record.failures > 0 reproduces the failure.
PropertyRecord replay(const nlohmann::json& witness);

}  // namespace graphck
