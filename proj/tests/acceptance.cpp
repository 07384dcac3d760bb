// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>

#include "fixtures.hpp"

using namespace plcp;
using Clock = std::chrono::steady_clock;

namespace {

const Rational kEps = fixtures::frac(1, 1000000000);
constexpr double kNoLimit = 1e9;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  std::vector<std::string> failures;
  std::string note;
  void fail(const std::string& s) {
    if (failures.size() < 5) failures.push_back(s);
    else if (failures.size() == 5) failures.push_back("...");
  }
};

// Connectivity by union-find over the edge list.
bool connected(const CRGraph& g) {
  std::map<Basis, std::size_t> id;
  for (const auto& [b, node] : g.nodes) id.emplace(b, id.size());
  std::vector<std::size_t> parent(id.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (const auto& [a, b] : g.edges) parent[root(id.at(a))] = root(id.at(b));
  std::set<std::size_t> roots;
  for (std::size_t k = 0; k < parent.size(); ++k) roots.insert(root(k));
  return roots.size() <= 1;
}

void check_counters(const PLCP& p, const Exploration& ex, Outcome& out, const std::string& tag) {
  const std::size_t n = p.n();
  if (ex.report.per_basis.size() != ex.graph.nodes.size()) out.fail(tag + ": per-basis counters do not cover the graph");
  for (const auto& [b, c] : ex.report.per_basis) {
    if (c.explorations != 1) out.fail(tag + " " + b.str() + ": explored " + std::to_string(c.explorations) + " times");
    if (c.redundancy_calls != n) out.fail(tag + " " + b.str() + ": redundancy calls " + std::to_string(c.redundancy_calls));
    if (c.adjacency_calls > (n * n - n) / 2) out.fail(tag + " " + b.str() + ": adjacency calls " + std::to_string(c.adjacency_calls));
    if (c.max_stage_lps > n + 1) out.fail(tag + " " + b.str() + ": stage LPs " + std::to_string(c.max_stage_lps));
  }
}

struct Runs {
  std::vector<std::pair<PLCP, Exploration>> explored;  // for criteria 4 and 7
};

bool report(int id, const std::string& title, const Outcome& o, double secs, double limit) {
  const bool ok = o.failures.empty() && secs < limit;
  const std::string bound = limit < kNoLimit ? ", limit " + std::to_string(static_cast<int>(limit)) + " s" : "";
  std::printf("[%s] criterion %d: %s (%.2f s%s)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs, bound.c_str(),
              o.note.empty() ? "" : " ", o.note.c_str());
  for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
  if (secs >= limit) std::printf("    over the time limit\n");
  std::fflush(stdout);
  return ok;
}

// Criterion 1 ---------------------------------------------------------------

bool apex_line(Runs& runs) {
  Outcome o;
  const auto t0 = Clock::now();
  const PLCP p = fixtures::apex_line();
  ExploreOptions opt;
  opt.record_decisions = true;
  Exploration ex = explore(p, opt);
  if (fixtures::keys(ex.graph.nodes) != fixtures::bases({{1, 2}, {2, 3}, {1, 4}})) o.fail("perturbed node set differs");
  if (ex.graph.edges.size() != 2) o.fail("perturbed edge count " + std::to_string(ex.graph.edges.size()));
  const CRGraph g = postprocess(ex.graph, p);
  if (fixtures::keys(g.nodes) != fixtures::bases({{2, 3}, {1, 4}})) o.fail("postprocessed node set differs");
  if (g.edges != std::set<BasisPair>{ordered_pair(Basis{2, 3}, Basis{1, 4})}) o.fail("postprocessed edges differ");
  CRGraph dims = ex.graph;
  compute_dimensions(dims);
  if (dims.nodes.at(Basis{1, 2}).dim != 0) o.fail("dimension of {1,2} is " + std::to_string(dims.nodes.at(Basis{1, 2}).dim));
  // Hand analysis and brute force must say the same.
  if (oracle::enumerate_bruteforce(p, true).bases != fixtures::keys(ex.graph.nodes)) o.fail("oracle disagrees");
  const double secs = seconds_since(t0);
  runs.explored.emplace_back(p, std::move(ex));
  return report(1, "apex line reproduction", o, secs, 1);
}

// Criteria 2, 3, 5 ------------------------------------------------------------

struct RandomRun {
  PLCP p;
  SolveResult res;
};

bool oracle_equivalence(Runs& runs, std::vector<RandomRun>& random_runs) {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t regions = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const std::size_t d = std::min<std::size_t>(n, 1 + (trial / 6) % 3);
    PLCP p = fixtures::random_psd_instance(rng, {n, d});
    ExploreOptions opt;
    opt.record_decisions = true;
    SolveResult res;
    try {
      res = solve(p, opt);
    } catch (const std::exception& e) {
      o.fail("trial " + std::to_string(trial) + ": " + e.what());
      continue;
    }
    const auto orc = oracle::enumerate_bruteforce(p, true);
    if (!res.solution.feasible) {
      if (!orc.bases.empty()) o.fail("trial " + std::to_string(trial) + ": reported infeasible, oracle has regions");
      continue;
    }
    const Exploration& ex = *res.exploration;
    if (fixtures::keys(ex.graph.nodes) != orc.bases) o.fail("trial " + std::to_string(trial) + ": perturbed nodes differ");
    std::set<Basis> full;
    for (const auto& [b, dim] : orc.dims)
      if (dim == static_cast<int>(d)) full.insert(b);
    if (fixtures::keys(res.graph->nodes) != full) o.fail("trial " + std::to_string(trial) + ": postprocessed nodes differ");
    regions += res.solution.pieces.size();
    runs.explored.emplace_back(p, ex);
    random_runs.push_back({std::move(p), std::move(res)});
  }
  o.note = "(" + std::to_string(random_runs.size()) + " feasible instances, " + std::to_string(regions) + " regions)";
  if (random_runs.size() < 50) o.fail("fewer than 50 feasible instances");
  return report(2, "oracle equivalence on random PSD instances", o, seconds_since(t0), 300);
}

bool covering(const std::vector<RandomRun>& random_runs) {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2025);
  std::size_t samples = 0;
  for (std::size_t k = 0; k < random_runs.size(); ++k) {
    const auto& [p, res] = random_runs[k];
    const auto& pieces = res.solution.pieces;
    std::vector<RatVector> anchors;
    for (const auto& pc : pieces) {
      const auto x = interior_point(pc.region);
      if (!x) {
        o.fail("instance " + std::to_string(k) + " " + pc.basis.str() + ": no interior point");
        continue;
      }
      anchors.push_back(*x);
      for (const auto& other : pieces)
        if (other.basis != pc.basis && contains(other.region, *x, true))
          o.fail("instance " + std::to_string(k) + ": interior of " + pc.basis.str() + " inside " + other.basis.str());
    }
    for (const auto& theta : fixtures::sample_feasible(p, anchors, 1000, rng)) {
      ++samples;
      if (!res.solution.locate(theta)) o.fail("instance " + std::to_string(k) + ": uncovered feasible sample");
    }
  }
  o.note = "(" + std::to_string(samples) + " samples)";
  return report(3, "covering and disjointness", o, seconds_since(t0), kNoLimit);
}

bool numeric_eps(const std::vector<RandomRun>& random_runs) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t decisions = 0;
  for (std::size_t k = 0; k < random_runs.size(); ++k) {
    const auto& [p, res] = random_runs[k];
    for (const Decision& dc : res.exploration->decisions) {
      ++decisions;
      const bool numeric = dc.kind == Decision::Kind::Redundancy
                               ? oracle::facet_numeric(p, dc.basis, dc.i, kEps)
                               : oracle::adjacency_numeric(p, dc.basis, *dc.other, dc.i, dc.j, kEps);
      if (numeric != dc.verdict)
        o.fail("instance " + std::to_string(k) + " " + dc.basis.str() + " row " + std::to_string(dc.i) + ": symbolic " +
               (dc.verdict ? "true" : "false") + ", numeric " + (numeric ? "true" : "false"));
    }
  }
  o.note = "(" + std::to_string(decisions) + " decisions at eps = 1e-9)";
  return report(5, "lexLP agrees with numeric eps", o, seconds_since(t0), kNoLimit);
}

// Criterion 6 ---------------------------------------------------------------

bool murty(Runs& runs) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t previous = 0;
  std::string counts;
  for (std::size_t n = 2; n <= 8; ++n) {
    const PLCP p = fixtures::murty_family(n);
    const auto res = solve(p);
    const auto orc = oracle::enumerate_bruteforce(p, true);
    std::size_t full = 0;
    for (const auto& [b, dim] : orc.dims) full += dim == 1;
    const std::size_t count = res.solution.pieces.size();
    counts += (counts.empty() ? "" : ",") + std::to_string(count);
    if (count != full) o.fail("n=" + std::to_string(n) + ": " + std::to_string(count) + " regions, oracle " + std::to_string(full));
    if (fixtures::keys(res.exploration->graph.nodes) != orc.bases) o.fail("n=" + std::to_string(n) + ": perturbed nodes differ");
    if (count <= previous) o.fail("n=" + std::to_string(n) + ": count not increasing");
    previous = count;
    runs.explored.emplace_back(p, *res.exploration);
  }
  o.note = "(counts " + counts + ")";
  return report(6, "exponential region count on the Murty family", o, seconds_since(t0), 120);
}

// Criterion 8 ---------------------------------------------------------------

bool mpc(Runs& runs, std::string& exported) {
  Outcome o;
  const auto t0 = Clock::now();
  const ParametricQP qp = condensed_mpc(double_integrator(5));
  const auto [p, rec] = qp_to_plcp(qp);
  if (p.n() != 30 || p.d() != 2) o.fail("order " + std::to_string(p.n()) + ", d = " + std::to_string(p.d()));
  if (!is_psd(p.M())) o.fail("M is not PSD");
  SolveResult res = solve(p);
  attach_recovery(res.solution, rec);
  exported = export_solution(res.solution);
  const auto& pieces = res.solution.pieces;
  std::vector<RatVector> anchors;
  for (const auto& pc : pieces)
    if (auto x = interior_point(pc.region)) anchors.push_back(*x);
  std::mt19937_64 rng(2026);
  const auto thetas = fixtures::sample_feasible(p, anchors, 500, rng);
  const RatMatrix Hinv = *invert(qp.H);
  const std::size_t m = qp.m();
  for (const auto& theta : thetas) {
    const auto at = res.solution.locate(theta);
    if (!at) {
      o.fail("uncovered sample");
      continue;
    }
    const auto& pc = pieces[*at];
    const RatVector u = pc.recovery->UF * theta + pc.recovery->ug;
    const RatVector basic = pc.Fmat * theta + pc.gvec;
    RatVector z(m);
    for (std::size_t r = 0; r < m; ++r)
      if (pc.basis[r] > static_cast<int>(m)) z[static_cast<std::size_t>(pc.basis[r]) - m - 1] = basic[r];
    const RatVector slack = qp.b + qp.E * theta - qp.G * u;
    bool kkt = is_zero(qp.H * u + qp.c + qp.F * theta + qp.G.transpose() * z);
    for (std::size_t k = 0; k < m; ++k) kkt = kkt && slack[k] >= 0 && z[k] >= 0 && slack[k] * z[k] == 0;
    if (!kkt) o.fail("KKT violated in piece " + pc.basis.str());
    const auto ref = oracle::reference_point_solve(p.M(), p.q() + p.Q() * theta);
    if (!ref.solved) {
      o.fail("reference solver failed at a feasible sample");
      continue;
    }
    const RatVector u_ref = Rational(-1) * (Hinv * (qp.c + qp.F * theta + qp.G.transpose() * ref.z));
    if (u_ref != u) o.fail("u differs from the reference solution in piece " + pc.basis.str());
  }
  constexpr std::size_t kRegressionRegions = 39;
  if (pieces.size() != kRegressionRegions) o.fail("region count " + std::to_string(pieces.size()) + ", regression value 39");
  o.note = "(" + std::to_string(pieces.size()) + " regions, " + std::to_string(thetas.size()) + " samples)";
  runs.explored.emplace_back(p, *res.exploration);
  return report(8, "double-integrator MPC pipeline", o, seconds_since(t0), 1800);
}

// Criteria 4, 7, 9 --------------------------------------------------------------

bool connectivity(const Runs& runs) {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::size_t k = 0; k < runs.explored.size(); ++k)
    if (!connected(runs.explored[k].second.graph)) o.fail("run " + std::to_string(k) + ": perturbed graph disconnected");
  o.note = "(" + std::to_string(runs.explored.size()) + " graphs)";
  return report(4, "perturbed graphs are connected", o, seconds_since(t0), kNoLimit);
}

bool counters(const Runs& runs) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t bases = 0;
  for (std::size_t k = 0; k < runs.explored.size(); ++k) {
    check_counters(runs.explored[k].first, runs.explored[k].second, o, "run " + std::to_string(k));
    bases += runs.explored[k].second.report.per_basis.size();
  }
  o.note = "(" + std::to_string(bases) + " explored bases)";
  return report(7, "output-sensitivity counters", o, seconds_since(t0), kNoLimit);
}

bool determinism(const std::string& mpc_workers1) {
  Outcome o;
  const auto t0 = Clock::now();
  const PLCP apex = fixtures::apex_line();
  const auto [p, rec] = qp_to_plcp(condensed_mpc(double_integrator(5)));
  std::string apex_ref;
  for (std::size_t w : {1u, 2u, 8u}) {
    ExploreOptions opt;
    opt.workers = w;
    const std::string a = export_solution(solve(apex, opt).solution);
    if (w == 1) apex_ref = a;
    else if (a != apex_ref) o.fail("apex line output differs at " + std::to_string(w) + " workers");
    SolveResult res = solve(p, opt);
    attach_recovery(res.solution, rec);
    if (export_solution(res.solution) != mpc_workers1) o.fail("MPC output differs at " + std::to_string(w) + " workers");
  }
  return report(9, "byte-identical output for 1, 2 and 8 workers", o, seconds_since(t0), kNoLimit);
}

}  // namespace

int main() {
  Runs runs;
  std::vector<RandomRun> random_runs;
  std::string mpc_export;
  int failed = 0;
  auto guard = [&](int id, const std::function<bool()>& f) {
    try {
      failed += !f();
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion %d: exception %s\n", id, e.what());
      ++failed;
    }
  };
  guard(1, [&] { return apex_line(runs); });
  guard(2, [&] { return oracle_equivalence(runs, random_runs); });
  guard(3, [&] { return covering(random_runs); });
  guard(5, [&] { return numeric_eps(random_runs); });
  guard(6, [&] { return murty(runs); });
  guard(8, [&] { return mpc(runs, mpc_export); });
  guard(4, [&] { return connectivity(runs); });
  guard(7, [&] { return counters(runs); });
  guard(9, [&] { return determinism(mpc_export); });
  std::printf("%s: %d criteria failed\n", failed ? "FAILED" : "ALL PASSED", failed);
  return failed ? 1 : 0;
}
