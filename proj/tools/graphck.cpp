// graphck: exact and truncated-numerical computations in the
// Toeplitz-Cuntz-Krieger algebra of a finite directed graph.
//
// All subcommands print JSON to stdout.  Exit codes: 0 success / all
// properties pass, 1 property failure, 2 usage or configuration error.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphck/boundary.hpp"
#include "graphck/diagonal.hpp"
#include "graphck/exhaustive.hpp"
#include "graphck/graph.hpp"
#include "graphck/io.hpp"
#include "graphck/suite.hpp"
#include "graphck/tck.hpp"

using nlohmann::json;
using namespace graphck;

namespace {

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

TckElement load_element(const Graph& g, const std::string& path) {
  json j = json::parse(read_file(path));
  return parse_element_json(g, j);
}

std::vector<Path> parse_path_list(const Graph& g, const std::string& csv) {
  std::vector<Path> out;
  std::string item;
  std::stringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_path(g, item));
  }
  return out;
}

json witness_to_json(const Graph& g, const PathWitness& w) {
  json j;
  j["witness"] = format_path(g, w.stem);
  if (w.phantom_extension) j["phantom"] = true;
  return j;
}

int cmd_check_l(const std::string& graph_file) {
  Graph g = load_graph(graph_file);
  auto verdict = check_condition_l(g);
  json out;
  out["holds"] = verdict.holds;
  if (!verdict.holds) out["witness_cycle"] = format_path(g, verdict.witness->path);
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_exhaustive(const std::string& graph_file, const std::string& vertex,
                   const std::string& set_csv) {
  Graph g = load_graph(graph_file);
  int v = g.vertex_index(vertex);
  PathSet F = PathSet::of(g, v, parse_path_list(g, set_csv));
  auto verdict = is_exhaustive(g, F);
  json out;
  out["exhaustive"] = verdict.exhaustive;
  if (verdict.witness) {
    out["witness"] = format_path(g, verdict.witness->stem);
    if (verdict.witness->phantom_extension) out["phantom"] = true;
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_orthogonalize(const std::string& graph_file, const std::string& vertex,
                      const std::string& set_csv) {
  Graph g = load_graph(graph_file);
  int v = g.vertex_index(vertex);
  PathSet F = PathSet::of(g, v, parse_path_list(g, set_csv));
  AtomDecomposition dec = orthogonalize(g, F);
  json atoms = json::array();
  for (const auto& [alpha, atom] : dec.atoms) {
    json a;
    a["path"] = format_path(g, alpha);
    a["q"] = diag_to_json(g, atom.projection);
    a["nonzero_in_ap"] = atom.nonzero_in_ap;
    if (atom.ap_witness) a["ap_witness"] = witness_to_json(g, *atom.ap_witness);
    atoms.push_back(std::move(a));
  }
  std::cout << json{{"atoms", atoms}}.dump() << "\n";
  return 0;
}

int cmd_diag_norm(const std::string& graph_file, const std::string& terms) {
  Graph g = load_graph(graph_file);
  DiagElement a = parse_diag_terms(g, terms);
  DiagNorm n = diag_norm_ap(g, a);
  json atoms = json::array();
  for (const auto& av : n.atoms) {
    atoms.push_back({{"path", format_path(g, av.alpha)},
                     {"coeff_sum", format_scalar(av.coeff_sum)},
                     {"nonzero_in_ap", av.nonzero_in_ap}});
  }
  json out;
  out["norm2"] = n.norm2.to_string();
  out["norm"] = n.norm;
  out["atoms"] = atoms;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_expectation(const std::string& graph_file, const std::string& element_file) {
  Graph g = load_graph(graph_file);
  TckElement x = load_element(g, element_file);
  DiagElement d = expectation(x);
  std::cout << json{{"diagonal", diag_to_json(g, d)}}.dump() << "\n";
  return 0;
}

int cmd_cycle_lemma(const std::string& graph_file, const std::string& lambda,
                    const std::string& mu, const std::string& nu) {
  Graph g = load_graph(graph_file);
  CycleLemmaResult res =
      cycle_lemma_check(g, parse_path(g, lambda), parse_path(g, mu), parse_path(g, nu));
  json out;
  out["zero"] = res.zero;
  if (!res.zero) {
    out["rho"] = format_path(g, res.rho->path);
    out["mu_prime"] = format_path(g, *res.mu_prime);
    out["nu_prime"] = format_path(g, *res.nu_prime);
    out["sandwich"] = tck_to_json(g, res.sandwich);
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_basis(const std::string& graph_file, const std::string& family, int depth) {
  Graph g = load_graph(graph_file);
  Family fam = family == "boundary" ? Family::boundary : Family::toeplitz;
  TruncationBasis basis = build_basis(g, fam, depth);
  json labels = json::array();
  for (const Path& p : basis.labels) labels.push_back(format_path(g, p));
  json out;
  out["family"] = family;
  out["depth"] = depth;
  out["dim"] = basis.size();
  out["labels"] = labels;
  if (!basis.warnings.empty()) out["warnings"] = basis.warnings;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_norm(const std::string& graph_file, const std::string& element_file,
             const std::string& family, int depth) {
  Graph g = load_graph(graph_file);
  TckElement x = load_element(g, element_file);
  Family fam = family == "boundary" ? Family::boundary : Family::toeplitz;
  TruncationBasis basis = build_basis(g, fam, depth);
  OperatorMatrix m = represent(g, x, basis);
  json out;
  out["dim"] = basis.size();
  out["depth"] = depth;
  out["family"] = family;
  out["norm"] = op_norm(m);
  if (!basis.warnings.empty()) out["warnings"] = basis.warnings;
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_verify(const std::string& graph_file, std::uint64_t seed, int depth, int trials,
               int max_len, bool timings) {
  SuiteConfig cfg;
  cfg.graph = load_graph(graph_file);
  cfg.seed = seed;
  cfg.depth = depth;
  cfg.trials = trials;
  cfg.max_path_len = max_len;
  SuiteReport report = run_suite(cfg);
  std::cout << report.to_json(timings).dump(2) << "\n";
  return report.all_pass ? 0 : 1;
}

int cmd_replay(const std::string& witness_file) {
  json w = json::parse(read_file(witness_file));
  PropertyRecord rec = replay(w);
  json out;
  out["property"] = rec.name;
  out["failures"] = rec.failures;
  if (!rec.witnesses.empty()) out["witnesses"] = rec.witnesses;
  std::cout << out.dump(2) << "\n";
  return rec.failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz-Cuntz-Krieger graph-algebra workbench"};
  app.require_subcommand(1);

  std::string graph_file, vertex, set_csv, terms, element_file, witness_file;
  std::string lambda, mu, nu;
  std::string family = "boundary";
  int depth = 6;
  std::uint64_t seed = 42;
  int trials = 200;
  int max_len = 3;
  bool no_timings = false;

  auto* check_l = app.add_subcommand("check-L", "decide whether every cycle has an entrance");
  check_l->add_option("graph", graph_file)->required();

  auto* exh = app.add_subcommand("exhaustive", "decide exhaustiveness of a path set");
  exh->add_option("graph", graph_file)->required();
  exh->add_option("--vertex", vertex)->required();
  exh->add_option("--set", set_csv)->required();

  auto* orth = app.add_subcommand("orthogonalize", "orthogonalized atoms of a path set");
  orth->add_option("graph", graph_file)->required();
  orth->add_option("--vertex", vertex)->required();
  orth->add_option("--set", set_csv)->required();

  auto* dn = app.add_subcommand("diag-norm", "exact aperiodic norm of a diagonal element");
  dn->add_option("graph", graph_file)->required();
  dn->add_option("--terms", terms)->required();

  auto* exp = app.add_subcommand("expectation", "conditional expectation onto the diagonal");
  exp->add_option("graph", graph_file)->required();
  exp->add_option("--element", element_file)->required();

  auto* cl = app.add_subcommand("cycle-lemma", "compression sandwich and its certified cycle");
  cl->add_option("graph", graph_file)->required();
  cl->add_option("--lambda", lambda)->required();
  cl->add_option("--mu", mu)->required();
  cl->add_option("--nu", nu)->required();

  auto* bs = app.add_subcommand("basis", "labels of a truncation basis");
  bs->add_option("graph", graph_file)->required();
  bs->add_option("--family", family)->check(CLI::IsMember({"boundary", "toeplitz"}));
  bs->add_option("--depth", depth);

  auto* nm = app.add_subcommand("norm", "compression norm of an element");
  nm->add_option("graph", graph_file)->required();
  nm->add_option("--element", element_file)->required();
  nm->add_option("--family", family)->check(CLI::IsMember({"boundary", "toeplitz"}));
  nm->add_option("--depth", depth);

  auto* vf = app.add_subcommand("verify", "run the seeded property suite");
  vf->add_option("graph", graph_file)->required();
  vf->add_option("--seed", seed);
  vf->add_option("--depth", depth);
  vf->add_option("--trials", trials);
  vf->add_option("--max-len", max_len);
  vf->add_flag("--no-timings", no_timings);

  auto* rp = app.add_subcommand("replay", "re-run a recorded failure witness");
  rp->add_option("witness", witness_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help/error text
    return 2;
  }

  try {
    if (check_l->parsed()) return cmd_check_l(graph_file);
    if (exh->parsed()) return cmd_exhaustive(graph_file, vertex, set_csv);
    if (orth->parsed()) return cmd_orthogonalize(graph_file, vertex, set_csv);
    if (dn->parsed()) return cmd_diag_norm(graph_file, terms);
    if (exp->parsed()) return cmd_expectation(graph_file, element_file);
    if (cl->parsed()) return cmd_cycle_lemma(graph_file, lambda, mu, nu);
    if (bs->parsed()) return cmd_basis(graph_file, family, depth);
    if (nm->parsed()) return cmd_norm(graph_file, element_file, family, depth);
    if (vf->parsed()) return cmd_verify(graph_file, seed, depth, trials, max_len, !no_timings);
    if (rp->parsed()) return cmd_replay(witness_file);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
