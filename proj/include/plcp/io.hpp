#pragma once

// JSON documents for pLCP and pQP input, solutions and plot data. Rationals
// are read from JSON numbers (exactly, from their literal text) or from
// "p/q" strings, and always written as strings.

#include <cstddef>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plcp/explorer.hpp"
#include "plcp/model.hpp"
#include "plcp/qp.hpp"
#include "plcp/rational.hpp"

namespace plcp {

using Json = nlohmann::json;

namespace detail {

// DOM builder that keeps floating-point literals as their source text, so
// 0.1 stays exactly 1/10.
class ExactSax : public nlohmann::json_sax<Json> {
 public:
  Json root;

  bool null() override { return put(nullptr); }
  bool boolean(bool v) override { return put(v); }
  bool number_integer(number_integer_t v) override { return put(v); }
  bool number_unsigned(number_unsigned_t v) override { return put(v); }
  bool number_float(number_float_t, const string_t& s) override { return put(Json(s)); }
  bool string(string_t& v) override { return put(v); }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override { return open(Json::object()); }
  bool key(string_t& k) override {
    key_ = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(Json::array()); }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
    throw ParseError("JSON syntax error at byte " + std::to_string(pos) + ": " + ex.what());
  }

 private:
  Json* place(Json v) {
    if (stack_.empty()) {
      root = std::move(v);
      return &root;
    }
    Json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(v));
      return &top.back();
    }
    top[key_] = std::move(v);
    return &top[key_];
  }
  bool put(Json v) {
    place(std::move(v));
    return true;
  }
  bool open(Json v) {
    stack_.push_back(place(std::move(v)));
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }

  std::vector<Json*> stack_;
  std::string key_;
};

inline const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) throw ParseError("expected a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("missing field '") + name + "'");
  return *it;
}

}  // namespace detail

/// Parses JSON text; float literals are preserved as strings.
inline Json parse_json(const std::string& text) {
  detail::ExactSax sax;
  Json::sax_parse(text, &sax);
  return sax.root;
}

inline Json read_json(std::istream& in) {
  return parse_json(std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
}

inline Rational rational_from_json(const Json& v) {
  if (v.is_number_integer()) return parse_rational(v.dump());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_float()) return parse_rational(v.dump());  // documents not read through parse_json
  throw ParseError("expected a rational, got " + v.dump());
}

inline RatVector vector_from_json(const Json& v) {
  if (!v.is_array()) throw ParseError("expected an array of rationals");
  RatVector out;
  for (const auto& x : v) out.push_back(rational_from_json(x));
  return out;
}

inline RatMatrix matrix_from_json(const Json& v, std::optional<std::size_t> cols = std::nullopt) {
  if (!v.is_array()) throw ParseError("expected an array of rows");
  std::vector<RatVector> rows;
  for (const auto& r : v) rows.push_back(vector_from_json(r));
  if (rows.empty()) return RatMatrix(0, cols.value_or(0));
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("ragged matrix rows");
  return RatMatrix::from_rows(rows);
}

inline Json to_json(const Rational& x) { return to_string(x); }

inline Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

// ---------------------------------------------------------------------------
// pLCP

inline PLCP plcp_from_json(const Json& doc) {
  const RatMatrix M = matrix_from_json(detail::field(doc, "M"));
  const RatVector q = vector_from_json(detail::field(doc, "q"));
  const RatMatrix Q = matrix_from_json(detail::field(doc, "Q"));
  if (doc.contains("n") && doc["n"].get<long long>() != static_cast<long long>(M.rows()))
    throw ParseError("field 'n' does not match M");
  if (doc.contains("d") && doc["d"].get<long long>() != static_cast<long long>(Q.cols()))
    throw ParseError("field 'd' does not match Q");
  if (M.rows() != M.cols()) throw ParseError("M must be square");
  if (q.size() != M.rows() || Q.rows() != M.rows()) throw ParseError("q and Q must have n rows");
  return PLCP(M, q, Q);
}

inline PLCP parse_plcp(const std::string& text) {
  try {
    return plcp_from_json(parse_json(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

inline Json plcp_to_json(const PLCP& p) {
  return Json{{"n", p.n()}, {"d", p.d()}, {"M", to_json(p.M())}, {"q", to_json(p.q())}, {"Q", to_json(p.Q())}};
}

// ---------------------------------------------------------------------------
// pQP

inline ParametricQP qp_from_json(const Json& doc) {
  ParametricQP qp;
  qp.H = matrix_from_json(detail::field(doc, "H"));
  qp.c = vector_from_json(detail::field(doc, "c"));
  qp.F = matrix_from_json(detail::field(doc, "F"));
  qp.G = matrix_from_json(detail::field(doc, "G"));
  qp.b = vector_from_json(detail::field(doc, "b"));
  qp.E = matrix_from_json(detail::field(doc, "E"));
  try {
    qp.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return qp;
}

inline ParametricQP parse_qp(const std::string& text) {
  try {
    return qp_from_json(parse_json(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

inline Json qp_to_json(const ParametricQP& qp) {
  return Json{{"H", to_json(qp.H)}, {"c", to_json(qp.c)}, {"F", to_json(qp.F)},
              {"G", to_json(qp.G)}, {"b", to_json(qp.b)}, {"E", to_json(qp.E)}};
}

// ---------------------------------------------------------------------------
// Solutions

inline Json solution_to_json(const PiecewiseAffineSolution& sol) {
  Json doc;
  doc["status"] = sol.feasible ? "ok" : "infeasible";
  doc["mode"] = to_string(sol.mode);
  doc["d"] = sol.d;
  Json pieces = Json::array();
  for (const auto& pc : sol.pieces) {
    Json j{{"basis", pc.basis.labels()}, {"A", to_json(pc.region.normals)}, {"b", to_json(pc.region.offsets)},
           {"Fmat", to_json(pc.Fmat)},   {"gvec", to_json(pc.gvec)},          {"dim", pc.dim}};
    if (pc.recovery) j["recovery"] = Json{{"UF", to_json(pc.recovery->UF)}, {"ug", to_json(pc.recovery->ug)}};
    pieces.push_back(std::move(j));
  }
  doc["pieces"] = std::move(pieces);
  Json edges = Json::array();
  for (const auto& [a, b] : sol.edges) edges.push_back({a, b});
  doc["edges"] = std::move(edges);
  Json report = Json::object();
  for (const auto& [k, v] : sol.report) report[k] = v;
  doc["report"] = std::move(report);
  return doc;
}

/// Byte-stable text of a solution document.
inline std::string export_solution(const PiecewiseAffineSolution& sol) { return solution_to_json(sol).dump(2) + "\n"; }

inline PiecewiseAffineSolution solution_from_json(const Json& doc) {
  PiecewiseAffineSolution sol;
  const std::string status = detail::field(doc, "status").get<std::string>();
  if (status != "ok" && status != "infeasible") throw ParseError("unknown status '" + status + "'");
  sol.feasible = status == "ok";
  const std::string mode = detail::field(doc, "mode").get<std::string>();
  if (mode != "perturbed" && mode != "gp") throw ParseError("unknown mode '" + mode + "'");
  sol.mode = mode == "gp" ? Mode::AssumeGeneralPosition : Mode::Perturbed;
  if (doc.contains("d")) sol.d = doc["d"].get<std::size_t>();
  for (const auto& j : detail::field(doc, "pieces")) {
    SolutionPiece pc;
    pc.basis = Basis(detail::field(j, "basis").get<std::vector<int>>());
    pc.region.basis = pc.basis;
    pc.region.normals = matrix_from_json(detail::field(j, "A"));
    pc.region.offsets = vector_from_json(detail::field(j, "b"));
    pc.Fmat = matrix_from_json(detail::field(j, "Fmat"));
    pc.gvec = vector_from_json(detail::field(j, "gvec"));
    pc.dim = detail::field(j, "dim").get<int>();
    if (j.contains("recovery"))
      pc.recovery = QPRecovery{matrix_from_json(detail::field(j["recovery"], "UF")), vector_from_json(detail::field(j["recovery"], "ug"))};
    if (pc.region.normals.rows() != pc.region.offsets.size()) throw ParseError("piece A and b disagree in length");
    if (sol.d == 0) sol.d = pc.region.normals.cols();
    sol.pieces.push_back(std::move(pc));
  }
  for (const auto& e : detail::field(doc, "edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair of piece indices");
    const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
    if (a >= sol.pieces.size() || b >= sol.pieces.size()) throw ParseError("edge index out of range");
    sol.edges.emplace_back(a, b);
  }
  if (doc.contains("report"))
    for (const auto& [k, v] : doc["report"].items()) sol.report[k] = v.get<std::size_t>();
  return sol;
}

inline PiecewiseAffineSolution parse_solution(const std::string& text) {
  try {
    return solution_from_json(parse_json(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace plcp
