#pragma once

#include <string>

#include "graphck/diagonal.hpp"
#include "graphck/graph.hpp"
#include "graphck/tck.hpp"

#include <json.hpp>

namespace graphck {

/// Path literals: "@v" is the length-0 path at v; otherwise a concatenation
/// of single-character edge ids when every edge id in the graph has length
/// one, and a dot-separated id list otherwise.
Path parse_path(const Graph& g, const std::string& text);
std::string format_path(const Graph& g, const Path& p);

/// Rational literals "p" or "p/q" with optional sign.
Rational parse_rational(const std::string& text);

/// Scalar literals "a", "bi", "a+bi", "a-bi" with rational a, b.
Scalar parse_scalar(const std::string& text);
std::string format_scalar(const Scalar& s);

/// Inline diagonal element: comma-separated "path:scalar" pairs.
DiagElement parse_diag_terms(const Graph& g, const std::string& text);

/// Element file {"terms": [{"mu": "...", "nu": "...", "re": "1", "im": "0"}]}.
TckElement parse_element_json(const Graph& g, const nlohmann::json& j);

nlohmann::json graph_to_json(const Graph& g);
nlohmann::json diag_to_json(const Graph& g, const DiagElement& a);
nlohmann::json tck_to_json(const Graph& g, const TckElement& x);

std::string read_file(const std::string& path);

}  // namespace graphck
