#pragma once

// Graph search over complementary bases. Each explored basis contributes its
// critical region and the bases whose regions are adjacent to it; the
// perturbed graph is then post-processed into the graph of full-dimensional
// regions of the original parameter space.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "plcp/geometry.hpp"
#include "plcp/lemke.hpp"
#include "plcp/lexpert.hpp"
#include "plcp/lp.hpp"
#include "plcp/model.hpp"

namespace plcp {

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RayTermination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Perturbed, AssumeGeneralPosition };

inline const char* to_string(Mode m) { return m == Mode::Perturbed ? "perturbed" : "gp"; }

struct RegionNode {
  Basis basis;
  RegionHRep region;
  RatMatrix Fmat;  // basic variables = Fmat theta + gvec, nonbasic = 0
  RatVector gvec;
  int dim = -2;  // unperturbed dimension; -2 until computed

  /// Full (w, z) at theta, ordered by label 1..2n.
  RatVector variables_at(const RatVector& theta) const {
    const RatVector basic = Fmat * theta + gvec;
    RatVector wz(2 * basic.size());
    for (std::size_t r = 0; r < basis.size(); ++r) wz[static_cast<std::size_t>(basis[r] - 1)] = basic[r];
    return wz;
  }
};

inline RegionNode make_node(const Dictionary& dv) {
  RegionNode node;
  node.basis = dv.basis;
  node.region = region_of(dv);
  node.Fmat = dv.beta_Q;
  node.gvec = dv.beta_q;
  return node;
}

enum class GraphKind { Perturbed, Unperturbed };

using BasisPair = std::pair<Basis, Basis>;

inline BasisPair ordered_pair(const Basis& a, const Basis& b) { return a < b ? BasisPair{a, b} : BasisPair{b, a}; }

struct CRGraph {
  GraphKind kind = GraphKind::Perturbed;
  std::map<Basis, RegionNode> nodes;
  std::set<BasisPair> edges;

  std::vector<Basis> neighbours_of(const Basis& b) const {
    std::vector<Basis> out;
    for (const auto& [x, y] : edges) {
      if (x == b) out.push_back(y);
      if (y == b) out.push_back(x);
    }
    return out;
  }

  bool connected() const {
    if (nodes.empty()) return true;
    std::map<Basis, std::vector<Basis>> adj;
    for (const auto& [x, y] : edges) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
    std::set<Basis> seen{nodes.begin()->first};
    std::deque<Basis> todo{nodes.begin()->first};
    while (!todo.empty()) {
      const Basis b = todo.front();
      todo.pop_front();
      for (const auto& c : adj[b])
        if (seen.insert(c).second) todo.push_back(c);
    }
    return seen.size() == nodes.size();
  }
};

/// One lexLP or LP decision taken while exploring a basis.
struct Decision {
  enum class Kind { Redundancy, Adjacency };
  Kind kind = Kind::Redundancy;
  Basis basis;
  std::optional<Basis> other;  // B'' for adjacency
  int i = 0;
  int j = 0;
  LexSign sign;  // unused in general-position mode
  bool verdict = false;
};

struct BasisCounters {
  std::size_t explorations = 0;
  std::size_t redundancy_calls = 0;
  std::size_t adjacency_calls = 0;
  std::size_t max_stage_lps = 0;  // over the lexLPs of this basis
  std::size_t stage_lps = 0;
};

struct ExploreReport {
  std::size_t bases_explored = 0;
  std::size_t redundancy_calls = 0;
  std::size_t adjacency_calls = 0;
  std::size_t stage_lps = 0;
  std::size_t max_redundancy_per_basis = 0;
  std::size_t max_adjacency_per_basis = 0;
  std::size_t max_stage_lps_per_lexlp = 0;
  std::size_t redundancy_zero_verdicts = 0;
  std::map<Basis, BasisCounters> per_basis;
  double wall_seconds = 0;  // diagnostic only, never exported
};

struct NeighborResult {
  std::set<Basis> neighbors;
  BasisCounters counters;
  std::size_t redundancy_zero = 0;
  std::vector<Decision> decisions;
};

namespace detail {

inline void note_stage_lps(BasisCounters& c, const LexSign& s) {
  c.stage_lps += s.stage_lps;
  c.max_stage_lps = std::max(c.max_stage_lps, s.stage_lps);
}

// Shared skeleton of both neighbour functions; the facet and adjacency
// predicates differ.
template <class FacetFn, class AdjFn>
NeighborResult neighbors_skeleton(const PLCP& p, const Dictionary& dv, FacetFn&& facet, AdjFn&& adjacent) {
  NeighborResult res;
  res.counters.explorations = 1;
  std::map<Basis, bool> decided;  // B'' -> adjacency verdict, shared by (i,j) and (j,i)
  for (int i : dv.basis) {
    if (!facet(i, res)) continue;
    const FacetClass fc = classify_facet(dv, i);
    if (fc.kind == FacetClass::Kind::Diagonal) {
      res.neighbors.insert(*fc.diagonal);
      continue;
    }
    for (const auto& cand : fc.exchange) {
      auto it = decided.find(cand.basis);
      if (it == decided.end()) {
        const auto dv2 = dictionary(p, cand.basis);
        if (!dv2) continue;  // not reachable: classify_facet already checked the pivot block
        it = decided.emplace(cand.basis, adjacent(*dv2, i, cand.partner, res)).first;
      }
      if (it->second) res.neighbors.insert(cand.basis);
    }
  }
  return res;
}

}  // namespace detail

/// Neighbours of B assuming the parameter space lies in general position.
inline NeighborResult neighbors_gp(const PLCP& p, const Dictionary& dv, bool record = false) {
  return detail::neighbors_skeleton(
      p, dv,
      [&](int i, NeighborResult& res) {
        ++res.counters.redundancy_calls;
        const bool v = facet_test_unperturbed(p, dv, i);
        if (record) res.decisions.push_back({Decision::Kind::Redundancy, dv.basis, std::nullopt, i, 0, {}, v});
        return v;
      },
      [&](const Dictionary& dv2, int i, int j, NeighborResult& res) {
        ++res.counters.adjacency_calls;
        const bool v = adjacency_test_unperturbed(p, dv, dv2, i, j);
        if (record) res.decisions.push_back({Decision::Kind::Adjacency, dv.basis, dv2.basis, i, j, {}, v});
        return v;
      });
}

inline std::set<Basis> neighbors(const PLCP& p, const Basis& b) {
  const auto dv = dictionary(p, b);
  if (!dv) throw std::invalid_argument("neighbors: " + b.str() + " is singular");
  return neighbors_gp(p, *dv).neighbors;
}

/// Neighbours of B in the lexicographically perturbed parameter space.
inline NeighborResult neighbors_lex(const PLCP& p, const Dictionary& dv, bool record = false) {
  return detail::neighbors_skeleton(
      p, dv,
      [&](int i, NeighborResult& res) {
        ++res.counters.redundancy_calls;
        const LexSign s = redundancy_lexlp(p, dv, i);
        detail::note_stage_lps(res.counters, s);
        if (s.verdict == LexVerdict::Zero) ++res.redundancy_zero;
        const bool v = is_facet_verdict(s);
        if (record) res.decisions.push_back({Decision::Kind::Redundancy, dv.basis, std::nullopt, i, 0, s, v});
        return v;
      },
      [&](const Dictionary& dv2, int i, int j, NeighborResult& res) {
        ++res.counters.adjacency_calls;
        const LexSign s = adjacency_lexlp(p, dv, dv2, i, j);
        detail::note_stage_lps(res.counters, s);
        const bool v = is_adjacent_verdict(s);
        if (record) res.decisions.push_back({Decision::Kind::Adjacency, dv.basis, dv2.basis, i, j, s, v});
        return v;
      });
}

inline std::set<Basis> neighbors_eps(const PLCP& p, const Basis& b) {
  const auto dv = dictionary(p, b);
  if (!dv) throw std::invalid_argument("neighbors_eps: " + b.str() + " is singular");
  return neighbors_lex(p, *dv).neighbors;
}

// ---------------------------------------------------------------------------
// Starting basis

namespace detail {

// max t  s.t.  w - M z = q + Q theta,  w >= t e,  z >= t e,  t <= 1,
// optionally with extra objective weight on theta and a floor on t.
// Variables: w' (n), z' (n), t (free), theta (d, free), cap slack, floor slack.
inline LPOutcome max_slack_lp(const PLCP& p, const RatVector& theta_weight, const std::optional<Rational>& t_floor) {
  const std::size_t n = p.n();
  const std::size_t d = p.d();
  const std::size_t t_col = 2 * n;
  const std::size_t th = t_col + 1;
  const std::size_t cap = th + d;
  const std::size_t vars = cap + 1 + (t_floor ? 1 : 0);
  LinearProgram lp;
  lp.objective.assign(vars, 0);
  lp.sign.assign(vars, VarSign::NonNegative);
  lp.sign[t_col] = VarSign::Free;
  for (std::size_t c = 0; c < d; ++c) {
    lp.sign[th + c] = VarSign::Free;
    lp.objective[th + c] = -theta_weight[c];
  }
  if (!t_floor) lp.objective[t_col] = -1;
  const std::size_t rows = n + 1 + (t_floor ? 1 : 0);
  lp.eq = RatMatrix(rows, vars);
  lp.rhs.assign(rows, 0);
  for (std::size_t r = 0; r < n; ++r) {
    lp.eq(r, r) = 1;
    Rational row_sum = 0;
    for (std::size_t c = 0; c < n; ++c) {
      lp.eq(r, n + c) = -p.M()(r, c);
      row_sum += p.M()(r, c);
    }
    lp.eq(r, t_col) = 1 - row_sum;
    for (std::size_t c = 0; c < d; ++c) lp.eq(r, th + c) = -p.Q()(r, c);
    lp.rhs[r] = p.q()[r];
  }
  lp.eq(n, t_col) = 1;
  lp.eq(n, cap) = 1;
  lp.rhs[n] = 1;
  if (t_floor) {
    lp.eq(n + 1, t_col) = 1;
    lp.eq(n + 1, cap + 1) = -1;
    lp.rhs[n + 1] = *t_floor;
  }
  LPOutcome out = solve_lp(lp);
  if (out.status == LPStatus::Optimal) {
    out.value = out.x[t_col];
    out.x = RatVector(out.x.begin() + static_cast<std::ptrdiff_t>(th), out.x.begin() + static_cast<std::ptrdiff_t>(cap));
  }
  return out;
}

}  // namespace detail

/// Parameter with the largest common slack of a nonnegative (w, z), and that
/// slack; nullopt when no parameter admits a nonnegative (w, z).
inline std::optional<std::pair<RatVector, Rational>> weak_feasibility_point(const PLCP& p) {
  const LPOutcome out = detail::max_slack_lp(p, RatVector(p.d()), std::nullopt);
  if (out.status != LPStatus::Optimal || out.value < 0) return std::nullopt;
  return std::make_pair(out.x, out.value);
}

/// Whether some nonnegative (w, z) satisfies w - M z = q + Q theta.
inline bool is_weakly_feasible(const PLCP& p, const RatVector& theta) {
  const std::size_t n = p.n();
  LinearProgram lp;
  lp.objective.assign(2 * n, 0);
  lp.eq = RatMatrix(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    lp.eq(r, r) = 1;
    for (std::size_t c = 0; c < n; ++c) lp.eq(r, n + c) = -p.M()(r, c);
  }
  lp.rhs = p.rhs(theta);
  return solve_lp(lp).status == LPStatus::Optimal;
}

struct InitialBasisOptions {
  std::uint64_t seed = 0x5eed;
  std::size_t walk_limit = 10000;
};

/// A complementary basis whose perturbed critical region is full-dimensional.
/// Throws Infeasible when no parameter is feasible and RayTermination when
/// every sampled start fails in Lemke's method.
inline Basis initial_basis(const PLCP& p, const InitialBasisOptions& opt = {}) {
  const auto start = weak_feasibility_point(p);
  if (!start) throw Infeasible("no parameter admits a feasible right-hand side");
  const auto& [theta0, slack] = *start;

  std::vector<RatVector> samples{theta0};
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> coeff(-8, 8);
  for (int attempt = 0; attempt < 2; ++attempt) {
    RatVector dir(p.d());
    for (auto& x : dir) x = coeff(rng);
    // Move toward a random direction while keeping half the optimal slack.
    const LPOutcome far = detail::max_slack_lp(p, dir, slack / 2);
    if (far.status == LPStatus::Optimal) samples.push_back(Rational(1, 2) * (theta0 + far.x));
  }

  std::optional<Basis> lemke_basis;
  for (const auto& theta : samples) {
    const LemkeOutcome lk = lemke_lexicographic(p.M(), p.rhs(theta));
    if (lk.status != LemkeOutcome::Status::Solved) continue;
    const auto dv = dictionary(p, lk.basis);
    if (dv && is_full_dimensional_eps(p, *dv)) return lk.basis;
    if (!lemke_basis) lemke_basis = lk.basis;
  }
  if (!lemke_basis) throw RayTermination("Lemke's method ended on a secondary ray at every sampled start");

  // Walk over pivots from the Lemke basis until a full-dimensional perturbed
  // region turns up.
  std::set<Basis> seen{*lemke_basis};
  std::deque<Basis> todo{*lemke_basis};
  while (!todo.empty() && seen.size() < opt.walk_limit) {
    const Basis b = todo.front();
    todo.pop_front();
    const auto dv = dictionary(p, b);
    if (!dv) continue;
    if (is_full_dimensional_eps(p, *dv)) return b;
    const std::size_t n = p.n();
    for (int i : b) {
      const int ib = complement(i, n);
      std::vector<Basis> next{b.exchange({i}, {ib})};
      for (int j : b)
        if (j > i) next.push_back(b.exchange({i, j}, {ib, complement(j, n)}));
      for (auto& c : next)
        if (seen.insert(c).second) todo.push_back(c);
    }
  }
  throw RayTermination("no complementary basis with a full-dimensional perturbed region near the Lemke basis");
}

// ---------------------------------------------------------------------------
// Exploration

struct ExploreOptions {
  Mode mode = Mode::Perturbed;
  std::size_t workers = 1;
  bool record_decisions = false;
  InitialBasisOptions initial;
};

struct Exploration {
  CRGraph graph;
  ExploreReport report;
  std::vector<Decision> decisions;  // in exploration order
};

namespace detail {

// Applies fn(k) for k in [0, count) on up to `workers` threads; the first
// exception is rethrown in the caller.
inline void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Breadth-first search from the initial basis. Each level is expanded in
/// parallel and merged in sorted order, so nodes, edges and counters do not
/// depend on the number of workers.
inline Exploration explore(const PLCP& p, const ExploreOptions& opt = {}) {
  const auto t_start = std::chrono::steady_clock::now();
  Exploration ex;
  ex.graph.kind = opt.mode == Mode::Perturbed ? GraphKind::Perturbed : GraphKind::Unperturbed;
  const Basis b0 = initial_basis(p, opt.initial);

  std::set<Basis> discovered{b0};
  std::vector<Basis> level{b0};
  while (!level.empty()) {
    std::vector<std::optional<Dictionary>> dicts(level.size());
    std::vector<NeighborResult> results(level.size());
    detail::parallel_for(level.size(), opt.workers, [&](std::size_t k) {
      dicts[k] = dictionary(p, level[k]);
      if (!dicts[k]) throw std::logic_error("explore: reached singular basis " + level[k].str());
      results[k] = opt.mode == Mode::Perturbed ? neighbors_lex(p, *dicts[k], opt.record_decisions)
                                               : neighbors_gp(p, *dicts[k], opt.record_decisions);
    });
    std::set<Basis> next;
    for (std::size_t k = 0; k < level.size(); ++k) {
      const Basis& b = level[k];
      ex.graph.nodes.emplace(b, make_node(*dicts[k]));
      NeighborResult& r = results[k];
      for (const auto& c : r.neighbors) {
        if (c == b) continue;
        ex.graph.edges.insert(ordered_pair(b, c));
        if (discovered.insert(c).second) next.insert(c);
      }
      ExploreReport& rep = ex.report;
      BasisCounters& bc = rep.per_basis[b];
      bc.explorations += r.counters.explorations;
      bc.redundancy_calls += r.counters.redundancy_calls;
      bc.adjacency_calls += r.counters.adjacency_calls;
      bc.stage_lps += r.counters.stage_lps;
      bc.max_stage_lps = std::max(bc.max_stage_lps, r.counters.max_stage_lps);
      ++rep.bases_explored;
      rep.redundancy_calls += r.counters.redundancy_calls;
      rep.adjacency_calls += r.counters.adjacency_calls;
      rep.stage_lps += r.counters.stage_lps;
      rep.max_redundancy_per_basis = std::max(rep.max_redundancy_per_basis, bc.redundancy_calls);
      rep.max_adjacency_per_basis = std::max(rep.max_adjacency_per_basis, bc.adjacency_calls);
      rep.max_stage_lps_per_lexlp = std::max(rep.max_stage_lps_per_lexlp, bc.max_stage_lps);
      rep.redundancy_zero_verdicts += r.redundancy_zero;
      for (auto& dcs : r.decisions) ex.decisions.push_back(std::move(dcs));
    }
    level.assign(next.begin(), next.end());
  }
  ex.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return ex;
}

/// Fills the unperturbed dimension of every node.
inline void compute_dimensions(CRGraph& g, std::size_t workers = 1) {
  std::vector<RegionNode*> nodes;
  for (auto& [b, node] : g.nodes) nodes.push_back(&node);
  detail::parallel_for(nodes.size(), workers, [&](std::size_t k) { nodes[k]->dim = region_dimension(nodes[k]->region); });
}

/// Graph of the full-dimensional regions of the original parameter space.
inline CRGraph postprocess(const CRGraph& g_eps, const PLCP& p, std::size_t workers = 1) {
  if (g_eps.kind != GraphKind::Perturbed) throw std::invalid_argument("postprocess: expects the perturbed graph");
  const int d = static_cast<int>(p.d());
  CRGraph dims = g_eps;
  compute_dimensions(dims, workers);

  std::map<Basis, std::vector<Basis>> adj;
  for (const auto& [x, y] : dims.edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  CRGraph g;
  g.kind = GraphKind::Unperturbed;
  for (const auto& [b, node] : dims.nodes)
    if (node.dim == d) g.nodes.emplace(b, node);

  // Candidate pairs: directly adjacent, or joined through removed nodes of
  // dimension d-1.
  std::set<BasisPair> candidates;
  for (const auto& [b, node] : g.nodes) {
    std::set<Basis> seen{b};
    std::deque<Basis> todo{b};
    while (!todo.empty()) {
      const Basis cur = todo.front();
      todo.pop_front();
      for (const auto& nb : adj[cur]) {
        if (!seen.insert(nb).second) continue;
        const int nd = dims.nodes.at(nb).dim;
        if (nd == d) {
          if (b < nb) candidates.insert({b, nb});
        } else if (nd >= d - 1) {
          todo.push_back(nb);
        }
      }
    }
  }
  std::vector<BasisPair> cand(candidates.begin(), candidates.end());
  std::vector<char> keep(cand.size(), 0);
  detail::parallel_for(cand.size(), workers, [&](std::size_t k) {
    const auto& r1 = g.nodes.at(cand[k].first).region;
    const auto& r2 = g.nodes.at(cand[k].second).region;
    const Polyhedron both = Polyhedron::intersect(Polyhedron::from_region(r1), Polyhedron::from_region(r2));
    keep[k] = polyhedron_dimension(both) == d - 1;
  });
  for (std::size_t k = 0; k < cand.size(); ++k)
    if (keep[k]) g.edges.insert(cand[k]);
  return g;
}

// ---------------------------------------------------------------------------
// Piecewise affine solution

struct QPRecovery {
  RatMatrix UF;  // u = UF theta + ug on the piece
  RatVector ug;
};

struct SolutionPiece {
  Basis basis;
  RegionHRep region;
  RatMatrix Fmat;
  RatVector gvec;
  int dim = -2;
  std::optional<QPRecovery> recovery;
};

struct PiecewiseAffineSolution {
  bool feasible = true;
  Mode mode = Mode::Perturbed;
  std::size_t d = 0;
  std::vector<SolutionPiece> pieces;                            // sorted by basis
  std::vector<std::pair<std::size_t, std::size_t>> edges;       // indices into pieces, sorted
  std::map<std::string, std::size_t> report;                    // exported counters

  /// Index of a piece whose region contains theta, if any.
  std::optional<std::size_t> locate(const RatVector& theta) const {
    for (std::size_t k = 0; k < pieces.size(); ++k)
      if (contains(pieces[k].region, theta, false)) return k;
    return std::nullopt;
  }
};

inline std::map<std::string, std::size_t> report_counters(const ExploreReport& r) {
  return {{"bases_explored", r.bases_explored},
          {"redundancy_calls", r.redundancy_calls},
          {"adjacency_calls", r.adjacency_calls},
          {"stage_lps", r.stage_lps},
          {"max_redundancy_per_basis", r.max_redundancy_per_basis},
          {"max_adjacency_per_basis", r.max_adjacency_per_basis},
          {"max_stage_lps_per_lexlp", r.max_stage_lps_per_lexlp},
          {"redundancy_zero_verdicts", r.redundancy_zero_verdicts}};
}

inline PiecewiseAffineSolution assemble_solution(const CRGraph& g) {
  if (g.kind != GraphKind::Unperturbed) throw std::invalid_argument("assemble_solution: expects the unperturbed graph");
  PiecewiseAffineSolution sol;
  std::map<Basis, std::size_t> index;
  for (const auto& [b, node] : g.nodes) {
    index[b] = sol.pieces.size();
    sol.d = node.region.dim_space();
    sol.pieces.push_back({b, node.region, node.Fmat, node.gvec, node.dim, std::nullopt});
  }
  for (const auto& [x, y] : g.edges) sol.edges.emplace_back(index.at(x), index.at(y));
  std::sort(sol.edges.begin(), sol.edges.end());
  return sol;
}

struct SolveResult {
  PiecewiseAffineSolution solution;
  std::optional<Exploration> exploration;  // absent when infeasible
  std::optional<CRGraph> graph;            // the unperturbed graph
};

/// explore + postprocess + assemble. In general-position mode the explored
/// graph is taken as the unperturbed graph and only dimensions are added.
inline SolveResult solve(const PLCP& p, const ExploreOptions& opt = {}) {
  SolveResult res;
  res.solution.mode = opt.mode;
  res.solution.d = p.d();
  try {
    res.exploration = explore(p, opt);
  } catch (const Infeasible&) {
    res.solution.feasible = false;
    return res;
  }
  if (opt.mode == Mode::Perturbed) {
    res.graph = postprocess(res.exploration->graph, p, opt.workers);
  } else {
    res.graph = res.exploration->graph;
    compute_dimensions(*res.graph, opt.workers);
  }
  res.solution = assemble_solution(*res.graph);
  res.solution.mode = opt.mode;
  res.solution.report = report_counters(res.exploration->report);
  return res;
}

}  // namespace plcp
