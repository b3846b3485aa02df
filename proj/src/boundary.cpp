#include "graphck/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

namespace graphck {

namespace {

bool length_lex_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.base() != b.base()) return a.base() < b.base();
  return a.edges() < b.edges();
}

}  // namespace

int TruncationBasis::index_of(const Path& p) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), p, length_lex_less);
  if (it == labels.end() || !(*it == p)) return -1;
  return static_cast<int>(it - labels.begin());
}

TruncationBasis build_basis(const Graph& g, Family family, int depth) {
  if (depth < 0) throw PreconditionError("build_basis: negative depth");
  TruncationBasis basis;
  basis.family = family;
  basis.depth = depth;

  if (family == Family::boundary) {
    auto global = check_condition_l(g);
    if (!global.holds)
      basis.warnings.push_back(
          "graph has an entrance-less cycle; vertex projections may vanish in "
          "the boundary model");
  }

  // Continuation certificates per vertex: a boundary path from v exists and
  // the deterministic witness walk produces it whenever no entrance-less
  // cycle is source-reachable.
  std::vector<bool> continues(g.vertex_count(), false);
  if (family == Family::boundary) {
    for (int v = 0; v < g.vertex_count(); ++v)
      continues[v] = check_condition_l_reachable(g, v).holds;
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    auto visit = [&](auto&& self, const Path& p) -> void {
      if (family == Family::toeplitz) {
        basis.labels.push_back(p);
      } else {
        int s = p.source(g);
        if (p.length() == depth) {
          if (continues[s]) basis.labels.push_back(p);
          return;
        }
        // A path ending at a terminal or emitter vertex is itself a finite
        // boundary path; explicit edges at an emitter still extend it.
        if (g.terminal(s) || g.infinite_emitter(s)) basis.labels.push_back(p);
      }
      if (p.length() == depth) return;
      for (int e : g.extensions_at(p.source(g))) self(self, p.append(e));
    };
    visit(visit, Path::at_vertex(v));
  }

  std::sort(basis.labels.begin(), basis.labels.end(), length_lex_less);
  if (basis.size() > kMaxBasisSize)
    throw PreconditionError("build_basis: basis size " + std::to_string(basis.size()) +
                            " exceeds the cap of " + std::to_string(kMaxBasisSize));
  basis.branch_phase.reserve(basis.labels.size());
  for (const Path& p : basis.labels) basis.branch_phase.push_back(branch_count(g, p));
  return basis;
}

OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y) {
  if (x.dim_ != y.dim_) throw PreconditionError("matrix dimensions differ");
  OperatorMatrix r(x.dim_);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
  return r;
}

OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y) {
  if (x.dim_ != y.dim_) throw PreconditionError("matrix dimensions differ");
  OperatorMatrix r(x.dim_);
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
  return r;
}

bool OperatorMatrix::is_diagonal() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j && at(i, j) != std::complex<double>(0.0, 0.0)) return false;
  return true;
}

OperatorMatrix multiply(const OperatorMatrix& x, const OperatorMatrix& y) {
  if (x.dim() != y.dim()) throw PreconditionError("matrix dimensions differ");
  int n = x.dim();
  OperatorMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::complex<double> xv = x.at(i, k);
      if (xv == std::complex<double>(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += xv * y.at(k, j);
    }
  }
  return r;
}

OperatorMatrix adjoint(const OperatorMatrix& x) {
  int n = x.dim();
  OperatorMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = std::conj(x.at(j, i));
  return r;
}

double max_abs_entry(const OperatorMatrix& x) {
  double m = 0.0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) m = std::max(m, std::abs(x.at(i, j)));
  return m;
}

namespace {

// Witness-extended view of a boundary label: the first `horizon` edges of
// x(label), with a flag telling whether the walk stopped (finite boundary
// path) before the horizon.
struct ExtendedLabel {
  std::vector<int> edges;
  bool complete = false;
};

ExtendedLabel extend_label(const Graph& g, const Path& label, long phase, int horizon) {
  ExtendedLabel out;
  out.edges = label.edges();
  if (static_cast<int>(out.edges.size()) >= horizon) {
    out.complete = false;
    return out;
  }
  WitnessTail tail = witness_tail(g, label.source(g), phase,
                                  horizon - static_cast<int>(out.edges.size()));
  out.edges.insert(out.edges.end(), tail.edges.begin(), tail.edges.end());
  out.complete = tail.complete;
  return out;
}

// Does x(alpha) equal mu . y where y = x(beta) with nu peeled off?  All
// sequences are compared over the shared defined region; a complete path and
// an infinite one can only agree if lengths match exactly.
bool boundary_match(const std::vector<int>& target, bool target_complete,
                    const ExtendedLabel& row) {
  if (target_complete && row.complete) return target == row.edges;
  if (target_complete != row.complete) return false;
  std::size_t n = std::min(target.size(), row.edges.size());
  return std::equal(target.begin(), target.begin() + n, row.edges.begin());
}

OperatorMatrix represent_boundary(const Graph& g, const TckElement& x,
                                  const TruncationBasis& basis) {
  int n = basis.size();
  OperatorMatrix m(n);
  int max_len = x.max_path_length();
  // Horizon past which the Thue-Morse selector is guaranteed to have
  // separated distinct boundary paths at these offsets (overlap-freeness:
  // two distinct shifts cannot agree beyond the shift distance, with the
  // forced-step gap bounded by the vertex count).
  int horizon = 6 * (basis.depth + max_len) + 32;

  std::vector<ExtendedLabel> ext(n);
  for (int i = 0; i < n; ++i)
    ext[i] = extend_label(g, basis.labels[i], basis.branch_phase[i], horizon);

  for (const auto& [t, c] : x.terms()) {
    if (t.mu.length() > basis.depth || t.nu.length() > basis.depth)
      throw PreconditionError("represent: term path longer than basis depth");
    std::complex<double> cv(c.re.to_double(), c.im.to_double());
    for (int col = 0; col < n; ++col) {
      const ExtendedLabel& xb = ext[col];
      const Path& blabel = basis.labels[col];
      // nu must be a prefix of x(beta); ranges must agree.
      if (t.nu.range() != blabel.range()) continue;
      std::size_t nlen = static_cast<std::size_t>(t.nu.length());
      if (xb.edges.size() < nlen) continue;  // complete & shorter, or horizon (impossible)
      if (!std::equal(t.nu.edges().begin(), t.nu.edges().end(), xb.edges.begin()))
        continue;
      // target = mu . y, inheriting completeness from x(beta).
      std::vector<int> target = t.mu.edges();
      target.insert(target.end(), xb.edges.begin() + nlen, xb.edges.end());
      bool target_complete = xb.complete;

      // Candidate row label: the target cut at the basis depth.
      Path cand(t.mu.range(),
                std::vector<int>(target.begin(),
                                 target.begin() + std::min<std::size_t>(
                                                      target.size(), basis.depth)));
      int row = basis.index_of(cand);
      if (row < 0) continue;  // target leaves the compression subspace
      if (boundary_match(target, target_complete, ext[row]))
        m.at(row, col) += cv;
    }
  }
  return m;
}

OperatorMatrix represent_toeplitz(const Graph& g, const TckElement& x,
                                  const TruncationBasis& basis) {
  (void)g;
  int n = basis.size();
  OperatorMatrix m(n);
  for (const auto& [t, c] : x.terms()) {
    if (t.mu.length() > basis.depth || t.nu.length() > basis.depth)
      throw PreconditionError("represent: term path longer than basis depth");
    std::complex<double> cv(c.re.to_double(), c.im.to_double());
    for (int col = 0; col < n; ++col) {
      const Path& beta = basis.labels[col];
      if (!t.nu.is_prefix_of(beta)) continue;
      // beta = nu beta'; image label is mu beta' when it fits the depth.
      std::vector<int> image = t.mu.edges();
      image.insert(image.end(), beta.edges().begin() + t.nu.length(), beta.edges().end());
      if (static_cast<int>(image.size()) > basis.depth) continue;
      int row = basis.index_of(Path(t.mu.range(), std::move(image)));
      if (row < 0)
        throw InternalError("represent: toeplitz image missing from basis");
      m.at(row, col) += cv;
    }
  }
  return m;
}

}  // namespace

OperatorMatrix represent(const Graph& g, const TckElement& x, const TruncationBasis& basis) {
  return basis.family == Family::boundary ? represent_boundary(g, x, basis)
                                          : represent_toeplitz(g, x, basis);
}

OperatorMatrix represent_diag(const Graph& g, const DiagElement& a,
                              const TruncationBasis& basis) {
  return represent(g, embed_diagonal(a), basis);
}

namespace {

// Deterministic pseudo-random start vector; the seed varies between the two
// verification runs inside op_norm.
std::vector<std::complex<double>> start_vector(int n, std::uint64_t seed) {
  std::vector<std::complex<double>> v(n);
  std::uint64_t s = seed;
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    double re = 0.25 + static_cast<double>((s >> 16) & 0xffff) / 65536.0;
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    double im = static_cast<double>((s >> 16) & 0xffff) / 65536.0 - 0.5;
    v[i] = {re, im};
    norm += std::norm(v[i]);
  }
  norm = std::sqrt(norm);
  for (auto& z : v) z /= norm;
  return v;
}

double power_iteration(const OperatorMatrix& m, std::uint64_t seed) {
  int n = m.dim();
  OperatorMatrix mh = adjoint(m);
  auto v = start_vector(n, seed);
  std::vector<std::complex<double>> w(n), u(n);
  double lambda = 0.0;
  for (int iter = 0; iter < 20000; ++iter) {
    // u = M^* (M v)
    for (int i = 0; i < n; ++i) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m.at(i, j) * v[j];
      w[i] = acc;
    }
    for (int i = 0; i < n; ++i) {
      std::complex<double> acc = 0.0;
      for (int j = 0; j < n; ++j) acc += mh.at(i, j) * w[j];
      u[i] = acc;
    }
    double nu = 0.0;
    for (int i = 0; i < n; ++i) nu += std::real(std::conj(v[i]) * u[i]);
    double unorm = 0.0;
    for (int i = 0; i < n; ++i) unorm += std::norm(u[i]);
    unorm = std::sqrt(unorm);
    if (unorm == 0.0) return 0.0;  // v in the kernel of M^*M
    for (int i = 0; i < n; ++i) v[i] = u[i] / unorm;
    if (iter > 4 && std::abs(nu - lambda) <= 1e-14 * std::max(1.0, std::abs(nu))) {
      lambda = nu;
      break;
    }
    lambda = nu;
  }
  return std::sqrt(std::max(0.0, lambda));
}

}  // namespace

double op_norm(const OperatorMatrix& m) {
  if (m.dim() == 0) return 0.0;
  if (m.is_diagonal()) {
    double best = 0.0;
    for (int i = 0; i < m.dim(); ++i) best = std::max(best, std::abs(m.at(i, i)));
    return best;
  }
  // Two independent deterministic starts guard against an unlucky start
  // vector with negligible weight on the dominant singular pair.
  return std::max(power_iteration(m, 0x9e3779b97f4a7c15ULL),
                  power_iteration(m, 0xda942042e4dd58b5ULL));
}

OperatorMatrix expectation_numeric(const OperatorMatrix& m) {
  OperatorMatrix r(m.dim());
  for (int i = 0; i < m.dim(); ++i) r.at(i, i) = m.at(i, i);
  return r;
}

}  // namespace graphck
