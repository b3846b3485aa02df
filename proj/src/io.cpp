#include "graphck/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace graphck {

Graph parse_graph(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph file: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("graph file: top level must be an object");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("graph file: missing \"vertices\" array");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ParseError("graph file: missing \"edges\" array");

  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("graph file: vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("id") || !e.contains("range") || !e.contains("source"))
      throw ParseError("graph file: each edge needs id, range, source");
    edges.emplace_back(e["id"].get<std::string>(), e["range"].get<std::string>(),
                       e["source"].get<std::string>());
  }
  std::vector<std::string> emitters;
  if (j.contains("infinite_emitters")) {
    for (const auto& v : j["infinite_emitters"]) emitters.push_back(v.get<std::string>());
  }
  return Graph::from_parts(std::move(vertices), std::move(edges), std::move(emitters));
}

namespace {

bool all_edge_ids_single_char(const Graph& g) {
  for (int e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).id.size() != 1) return false;
  return true;
}

}  // namespace

Path parse_path(const Graph& g, const std::string& text) {
  if (text.empty()) throw ParseError("empty path literal");
  if (text[0] == '@') {
    std::string name = text.substr(1);
    int v = g.find_vertex(name);
    if (v < 0) throw ValidationError("path literal: unknown vertex " + name);
    return Path::at_vertex(v);
  }
  std::vector<std::string> ids;
  if (text.find('.') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '.')) {
      if (part.empty()) throw ParseError("path literal: empty id segment in " + text);
      ids.push_back(part);
    }
  } else if (all_edge_ids_single_char(g)) {
    for (char c : text) ids.emplace_back(1, c);
  } else {
    ids.push_back(text);
  }
  std::vector<int> edges;
  for (const auto& id : ids) {
    int e = g.find_edge(id);
    if (e < 0) throw ValidationError("path literal: unknown edge " + id);
    edges.push_back(e);
  }
  int base = g.edge(edges.front()).range;
  Path p(base, std::move(edges));
  if (!p.valid_in(g)) throw ValidationError("path literal: edges do not compose: " + text);
  return p;
}

std::string format_path(const Graph& g, const Path& p) {
  p.require_valid(g);
  if (p.is_vertex()) return "@" + g.vertex_name(p.base());
  std::string out;
  bool single = all_edge_ids_single_char(g);
  for (int i = 0; i < p.length(); ++i) {
    if (i && !single) out += '.';
    out += g.edge(p.edge_at(i)).id;
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    long long num = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash))
      throw ParseError("bad rational literal: " + text);
    if (slash == std::string::npos) return Rational(num);
    long long den = std::stoll(text.substr(slash + 1), &used);
    if (used != text.size() - slash - 1) throw ParseError("bad rational literal: " + text);
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + text);
  } catch (const std::out_of_range&) {
    throw ParseError("rational literal out of range: " + text);
  }
}

Scalar parse_scalar(const std::string& text) {
  if (text.empty()) throw ParseError("empty scalar literal");
  std::string s = text;
  if (s.back() == 'i') {
    // Split off the trailing imaginary part at the last +/- that is not a
    // leading sign and not inside a denominator.
    s.pop_back();
    if (s.empty()) return Scalar(Rational(0), Rational(1));
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' &&
          s[k - 1] != '-') {
        split = k;
        break;
      }
    }
    if (split == std::string::npos) {
      if (s == "+") return Scalar(Rational(0), Rational(1));
      if (s == "-") return Scalar(Rational(0), Rational(-1));
      return Scalar(Rational(0), parse_rational(s));
    }
    Rational re = parse_rational(s.substr(0, split));
    std::string imtxt = s.substr(split);
    if (imtxt == "+") return Scalar(re, Rational(1));
    if (imtxt == "-") return Scalar(re, Rational(-1));
    return Scalar(re, parse_rational(imtxt));
  }
  return Scalar(parse_rational(s));
}

std::string format_scalar(const Scalar& s) {
  if (s.im.is_zero()) return s.re.to_string();
  std::string im = s.im.to_string() + "i";
  if (s.re.is_zero()) return im;
  return s.re.to_string() + (s.im.is_negative() ? "" : "+") + im;
}

DiagElement parse_diag_terms(const Graph& g, const std::string& text) {
  DiagElement out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ParseError("diag terms: expected path:scalar, got " + item);
    Path p = parse_path(g, item.substr(0, colon));
    Scalar c = parse_scalar(item.substr(colon + 1));
    out.add_term(p, c);
  }
  return out;
}

TckElement parse_element_json(const Graph& g, const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("element file: missing \"terms\" array");
  TckElement x;
  for (const auto& t : j["terms"]) {
    if (!t.contains("mu") || !t.contains("nu"))
      throw ParseError("element file: each term needs mu and nu");
    Path mu = parse_path(g, t["mu"].get<std::string>());
    Path nu = parse_path(g, t["nu"].get<std::string>());
    Rational re = t.contains("re") ? parse_rational(t["re"].get<std::string>()) : Rational(1);
    Rational im = t.contains("im") ? parse_rational(t["im"].get<std::string>()) : Rational(0);
    x.add_term(TckTerm::of(g, std::move(mu), std::move(nu)), Scalar(re, im));
  }
  return x;
}

json graph_to_json(const Graph& g) {
  json j;
  j["vertices"] = json::array();
  for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    j["edges"].push_back({{"id", ed.id},
                          {"range", g.vertex_name(ed.range)},
                          {"source", g.vertex_name(ed.source)}});
  }
  j["infinite_emitters"] = json::array();
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.infinite_emitter(v)) j["infinite_emitters"].push_back(g.vertex_name(v));
  return j;
}

json diag_to_json(const Graph& g, const DiagElement& a) {
  json terms = json::array();
  for (const auto& [p, c] : a.terms())
    terms.push_back({{"path", format_path(g, p)}, {"coeff", format_scalar(c)}});
  return terms;
}

json tck_to_json(const Graph& g, const TckElement& x) {
  json terms = json::array();
  for (const auto& [t, c] : x.terms()) {
    terms.push_back({{"mu", format_path(g, t.mu)},
                     {"nu", format_path(g, t.nu)},
                     {"re", c.re.to_string()},
                     {"im", c.im.to_string()}});
  }
  return terms;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace graphck
