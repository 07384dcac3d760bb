// plcp: command-line front end.
//
// Exit codes: 0 ok, 1 infeasible, 2 usage or input error, 3 certification
// refusal, 4 internal inconsistency (including an oracle disagreement).

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plcp/plcp.hpp"

namespace {

using namespace plcp;

enum Exit { kOk = 0, kInfeasible = 1, kUsage = 2, kRefused = 3, kInternal = 4 };

struct RunConfig {
  std::string input;
  std::string mode = "perturbed";
  std::string out;
  std::size_t workers = 1;
  bool oracle_check = false;
  bool override_unknown = false;
  bool plot = false;
  std::string plot_box;
  std::size_t p_matrix_cap = CertificateCaps{}.p_matrix;
  std::size_t brute_force_cap = CertificateCaps{}.brute_force;
};

struct Failure {
  int code;
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kUsage, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kUsage, "cannot write " + path};
  out << doc;
}

PlotBox parse_box(const std::string& text) {
  PlotBox box;
  if (text.empty()) return box;
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  if (v.size() != 4 || v[0] >= v[1] || v[2] >= v[3]) throw Failure{kUsage, "--plot-box expects xmin,xmax,ymin,ymax with min < max"};
  box.xmin = v[0];
  box.xmax = v[1];
  box.ymin = v[2];
  box.ymax = v[3];
  return box;
}

std::string vector_text(const RatVector& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + to_string(v[k]);
  return s + ")";
}

void certify_or_refuse(const RatMatrix& M, const RunConfig& cfg) {
  const auto cert = certify(M, {cfg.p_matrix_cap, cfg.brute_force_cap});
  using V = SufficiencyCertificate::Verdict;
  std::cerr << "sufficiency: " << to_string(cert.verdict) << "\n";
  if (cert.verdict == V::NotSufficient)
    throw Failure{kRefused, std::string("M is not ") + (cert.witness_is_row ? "row" : "column") + " sufficient; witness x = " +
                                vector_text(*cert.witness)};
  if (cert.verdict == V::Unknown && !cfg.override_unknown)
    throw Failure{kRefused, "sufficiency of M could not be certified (pass --override-unknown-sufficiency to proceed)"};
}

ExploreOptions explore_options(const RunConfig& cfg) {
  ExploreOptions opt;
  opt.mode = cfg.mode == "gp" ? Mode::AssumeGeneralPosition : Mode::Perturbed;
  opt.workers = cfg.workers;
  return opt;
}

std::map<Basis, int> node_dims(const CRGraph& g) {
  std::map<Basis, int> out;
  for (const auto& [b, node] : g.nodes) out[b] = node.dim;
  return out;
}

// Compares explored and post-processed graphs with brute-force enumeration.
bool oracle_agrees(const PLCP& p, const SolveResult& res, Mode mode) {
  bool ok = true;
  const auto unperturbed = oracle::enumerate_bruteforce(p, false);
  if (mode == Mode::Perturbed) {
    const auto perturbed = oracle::enumerate_bruteforce(p, true);
    std::map<Basis, int> explored;
    for (const auto& [b, node] : res.exploration->graph.nodes) explored[b] = -2;
    const auto rep = oracle::diff(explored, perturbed);
    if (!rep.empty()) {
      std::cerr << "oracle (perturbed) disagrees:\n" << rep.str();
      ok = false;
    }
  }
  const auto rep = oracle::diff(node_dims(*res.graph), unperturbed);
  if (!rep.empty()) {
    std::cerr << "oracle (full-dimensional regions) disagrees:\n" << rep.str();
    ok = false;
  }
  if (ok) std::cerr << "oracle check: agreement\n";
  return ok;
}

int run_solution(const PLCP& p, const RunConfig& cfg, const std::optional<QPRecoveryMap>& recovery) {
  certify_or_refuse(p.M(), cfg);
  const auto opt = explore_options(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult res = solve(p, opt);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (recovery && res.solution.feasible) attach_recovery(res.solution, *recovery);
  emit(export_solution(res.solution), cfg.out);
  std::cerr << "pieces: " << res.solution.pieces.size() << ", wall time: " << wall << " s\n";
  if (!res.solution.feasible) {
    std::cerr << "infeasible: no parameter admits a complementary solution\n";
    return kInfeasible;
  }
  if (cfg.plot) {
    if (cfg.out.empty()) throw Failure{kUsage, "--plot needs --out (the plot is written next to it)"};
    emit(plot_to_json(plot_data(res.solution, parse_box(cfg.plot_box))).dump(2) + "\n", cfg.out + ".plot.json");
  }
  if (cfg.oracle_check && !oracle_agrees(p, res, opt.mode)) return kInternal;
  return kOk;
}

int cmd_solve(const RunConfig& cfg) { return run_solution(parse_plcp(slurp(cfg.input)), cfg, std::nullopt); }

int cmd_solve_qp(const RunConfig& cfg) {
  const auto qp = parse_qp(slurp(cfg.input));
  auto [p, rec] = qp_to_plcp(qp);
  std::cerr << "pLCP of order " << p.n() << " in " << p.d() << " parameters\n";
  return run_solution(p, cfg, rec);
}

int cmd_check_matrix(const RunConfig& cfg) {
  const PLCP p = parse_plcp(slurp(cfg.input));
  const auto cert = certify(p.M(), {cfg.p_matrix_cap, cfg.brute_force_cap});
  std::cout << to_string(cert.verdict) << "\n";
  if (cert.witness) std::cout << "witness " << (cert.witness_is_row ? "(row) " : "(column) ") << vector_text(*cert.witness) << "\n";
  for (const auto& note : cert.notes) std::cerr << note << "\n";
  return cert.sufficient() ? kOk : kRefused;
}

int cmd_oracle(const RunConfig& cfg) {
  const PLCP p = parse_plcp(slurp(cfg.input));
  certify_or_refuse(p.M(), cfg);
  const auto perturbed = oracle::enumerate_bruteforce(p, true);
  const auto unperturbed = oracle::enumerate_bruteforce(p, false);
  Json doc;
  doc["perturbed"] = Json::array();
  for (const auto& b : perturbed.bases) doc["perturbed"].push_back(b.labels());
  doc["full_dimensional"] = Json::array();
  for (const auto& b : unperturbed.bases) doc["full_dimensional"].push_back(b.labels());
  emit(doc.dump(2) + "\n", cfg.out);
  const auto res = solve(p, explore_options(cfg));
  if (!res.solution.feasible) return perturbed.bases.empty() ? kInfeasible : kInternal;
  return oracle_agrees(p, res, explore_options(cfg).mode) ? kOk : kInternal;
}

int cmd_plot(const RunConfig& cfg) {
  const auto sol = parse_solution(slurp(cfg.input));
  emit(plot_to_json(plot_data(sol, parse_box(cfg.plot_box))).dump(2) + "\n", cfg.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Parametric linear complementarity solver"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--mode", cfg.mode, "perturbed or gp (assume general position)")
      ->check(CLI::IsMember({"perturbed", "gp"}))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", cfg.out, "output path (default: standard output)");
  app.add_flag("--oracle-check", cfg.oracle_check, "compare against brute-force enumeration");
  app.add_flag("--override-unknown-sufficiency", cfg.override_unknown, "proceed when sufficiency cannot be certified");
  app.add_flag("--plot", cfg.plot, "also write plot data to <out>.plot.json (d = 2 only)");
  app.add_option("--plot-box", cfg.plot_box, "clip box xmin,xmax,ymin,ymax (default -10,10,-10,10)");
  app.add_option("--p-matrix-cap", cfg.p_matrix_cap, "largest order for the P-matrix minor test")->capture_default_str();
  app.add_option("--brute-force-cap", cfg.brute_force_cap, "largest order for the sign-pattern sufficiency test")->capture_default_str();

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&);
  };
  const Sub subs[] = {{"solve", "solve a pLCP document", cmd_solve},
                      {"solve-qp", "solve a parametric QP document", cmd_solve_qp},
                      {"check-matrix", "certify sufficiency of M", cmd_check_matrix},
                      {"oracle", "brute-force enumeration and comparison", cmd_oracle},
                      {"plot", "polygons of a two-parameter solution document", cmd_plot}};
  int (*chosen)(const RunConfig&) = nullptr;
  for (const auto& s : subs) {
    auto* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("input", cfg.input, "input document")->required();
    sc->callback([&chosen, fn = s.fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return chosen(cfg);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const RankError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const HNotPD& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionUnsupported& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const oracle::CapExceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonSufficientSignal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const RayTermination& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
