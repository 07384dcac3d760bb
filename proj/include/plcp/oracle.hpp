#pragma once

// Brute-force reference implementations for cross-checking the explorer.
// Nothing here calls into the explorer, the lexLP builders or the main LP
// engine: the oracle has its own dictionary-form simplex and its own revised
// Lemke, and shares only exact arithmetic and the instance/basis types.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plcp/matrix.hpp"
#include "plcp/model.hpp"

namespace plcp::oracle {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Simplex in dictionary form:  maximise c^T x  s.t.  A x <= b,  x >= 0.

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational value;
  RatVector x;
};

class SimplexDictionary {
 public:
  // x_basic[r] = constant[r] + sum_k coef[r][k] * x_nonbasic[k]
  SimplexDictionary(const RatMatrix& A, const RatVector& b, const RatVector& c) : m_(A.rows()), nvars_(A.cols()) {
    x0_ = nvars_ + m_;
    nonbasic_.resize(nvars_ + 1);
    for (std::size_t k = 0; k < nvars_; ++k) nonbasic_[k] = k;
    nonbasic_[nvars_] = x0_;
    basic_.resize(m_);
    constant_ = b;
    coef_.assign(m_, RatVector(nvars_ + 1));
    for (std::size_t r = 0; r < m_; ++r) {
      basic_[r] = nvars_ + r;
      for (std::size_t k = 0; k < nvars_; ++k) coef_[r][k] = -A(r, k);
      coef_[r][nvars_] = 1;  // x0 relaxes every row
    }
    cost_ = c;
  }

  Result run() {
    // Phase 1 only when the slack basis is infeasible.
    std::optional<std::size_t> worst;
    for (std::size_t r = 0; r < m_; ++r)
      if (constant_[r] < 0 && (!worst || constant_[r] < constant_[*worst])) worst = r;
    if (worst) {
      set_objective_on_x0();
      pivot(*worst, nonbasic_.size() - 1);
      optimise();
      if (obj_const_ < 0) return {Status::Infeasible, 0, {}};
      // Remove x0 from the basis if it is still there (degenerate at 0).
      for (std::size_t r = 0; r < m_; ++r)
        if (basic_[r] == x0_) {
          for (std::size_t k = 0; k < nonbasic_.size(); ++k)
            if (coef_[r][k] != 0) {
              pivot(r, k);
              break;
            }
          break;
        }
    }
    drop_x0();
    restore_cost();
    if (!optimise()) return {Status::Unbounded, 0, {}};
    Result res;
    res.status = Status::Optimal;
    res.value = obj_const_;
    res.x.assign(nvars_, 0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basic_[r] < nvars_) res.x[basic_[r]] = constant_[r];
    return res;
  }

 private:
  void set_objective_on_x0() {
    obj_coef_.assign(nonbasic_.size(), 0);
    obj_const_ = 0;
    for (std::size_t k = 0; k < nonbasic_.size(); ++k)
      if (nonbasic_[k] == x0_) obj_coef_[k] = -1;
  }

  void drop_x0() {
    for (std::size_t k = 0; k < nonbasic_.size(); ++k)
      if (nonbasic_[k] == x0_) {
        nonbasic_.erase(nonbasic_.begin() + static_cast<std::ptrdiff_t>(k));
        for (auto& row : coef_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(k));
        return;
      }
  }

  void restore_cost() {
    obj_coef_.assign(nonbasic_.size(), 0);
    obj_const_ = 0;
    for (std::size_t k = 0; k < nonbasic_.size(); ++k)
      if (nonbasic_[k] < nvars_) obj_coef_[k] += cost_[nonbasic_[k]];
    for (std::size_t r = 0; r < m_; ++r) {
      if (basic_[r] >= nvars_) continue;
      const Rational& cb = cost_[basic_[r]];
      if (cb == 0) continue;
      obj_const_ += cb * constant_[r];
      for (std::size_t k = 0; k < nonbasic_.size(); ++k) obj_coef_[k] += cb * coef_[r][k];
    }
  }

  // Bland: entering = smallest variable index with positive reduced cost;
  // leaving = tightest row, ties to the smallest variable index.
  bool optimise() {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t k = 0; k < nonbasic_.size(); ++k)
        if (obj_coef_[k] > 0 && (!enter || nonbasic_[k] < nonbasic_[*enter])) enter = k;
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (coef_[r][*enter] >= 0) continue;
        const Rational ratio = constant_[r] / -coef_[r][*enter];
        if (!leave || ratio < best || (ratio == best && basic_[r] < basic_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  // Exchange basic row r with nonbasic column k.
  void pivot(std::size_t r, std::size_t k) {
    const Rational a = coef_[r][k];
    // Solve row r for the entering variable.
    RatVector row = coef_[r];
    Rational cst = constant_[r];
    const Rational inv = -1 / a;
    for (auto& x : row) x *= inv;
    cst *= inv;
    row[k] = -inv;  // coefficient of the leaving variable (now nonbasic at slot k)
    for (std::size_t s = 0; s < m_; ++s) {
      if (s == r) continue;
      const Rational f = coef_[s][k];
      if (f == 0) continue;
      coef_[s][k] = 0;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) coef_[s][j] += f * row[j];
      constant_[s] += f * cst;
    }
    if (obj_coef_.size() == row.size()) {
      const Rational f = obj_coef_[k];
      if (f != 0) {
        obj_coef_[k] = 0;
        for (std::size_t j = 0; j < row.size(); ++j)
          if (row[j] != 0) obj_coef_[j] += f * row[j];
        obj_const_ += f * cst;
      }
    }
    coef_[r] = row;
    constant_[r] = cst;
    std::swap(basic_[r], nonbasic_[k]);
  }

  std::size_t m_;
  std::size_t nvars_;
  std::size_t x0_ = 0;
  std::vector<std::size_t> basic_, nonbasic_;
  RatVector constant_;
  std::vector<RatVector> coef_;
  RatVector cost_;
  RatVector obj_coef_;
  Rational obj_const_;
};

/// General LP builder: free or nonnegative variables, <=, >= and = rows.
class Program {
 public:
  explicit Program(std::size_t vars) : free_(vars, false), vars_(vars) {}

  void set_free(std::size_t j) { free_[j] = true; }
  void add_le(RatVector a, Rational b) { rows_.push_back({std::move(a), std::move(b), 0}); }
  void add_ge(RatVector a, Rational b) { rows_.push_back({std::move(a), std::move(b), 1}); }
  void add_eq(RatVector a, Rational b) { rows_.push_back({std::move(a), std::move(b), 2}); }

  Result maximise(const RatVector& c) const {
    std::vector<std::size_t> col(vars_);
    std::size_t width = 0;
    for (std::size_t j = 0; j < vars_; ++j) {
      col[j] = width;
      width += free_[j] ? 2 : 1;
    }
    std::vector<RatVector> le_rows;
    RatVector le_rhs;
    auto expand = [&](const RatVector& a, int sgn) {
      RatVector out(width);
      for (std::size_t j = 0; j < vars_; ++j) {
        out[col[j]] = sgn * a[j];
        if (free_[j]) out[col[j] + 1] = -sgn * a[j];
      }
      return out;
    };
    for (const auto& r : rows_) {
      if (r.type == 0 || r.type == 2) {
        le_rows.push_back(expand(r.a, 1));
        le_rhs.push_back(r.b);
      }
      if (r.type == 1 || r.type == 2) {
        le_rows.push_back(expand(r.a, -1));
        le_rhs.push_back(-r.b);
      }
    }
    RatMatrix A = le_rows.empty() ? RatMatrix(0, width) : RatMatrix::from_rows(le_rows);
    Result inner = SimplexDictionary(A, le_rhs, expand(c, 1)).run();
    if (inner.status != Status::Optimal) return inner;
    Result out{Status::Optimal, inner.value, RatVector(vars_)};
    for (std::size_t j = 0; j < vars_; ++j) out.x[j] = free_[j] ? inner.x[col[j]] - inner.x[col[j] + 1] : inner.x[col[j]];
    return out;
  }

  std::size_t vars() const { return vars_; }

 private:
  struct Row {
    RatVector a;
    Rational b;
    int type;  // 0 <=, 1 >=, 2 =
  };
  std::vector<bool> free_;
  std::size_t vars_;
  std::vector<Row> rows_;
};

// ---------------------------------------------------------------------------
// Region helpers

struct Region {
  RatMatrix normals;  // beta Q
  RatVector offsets;  // beta q
  RatMatrix beta;
};

inline std::optional<Region> region_for(const PLCP& p, const Basis& b) {
  const std::size_t n = p.n();
  RatMatrix AB(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const int label = b[c];
    for (std::size_t r = 0; r < n; ++r) {
      if (label <= static_cast<int>(n))
        AB(r, c) = (static_cast<std::size_t>(label - 1) == r) ? 1 : 0;
      else
        AB(r, c) = -p.M()(r, static_cast<std::size_t>(label) - n - 1);
    }
  }
  auto inv = invert(AB);
  if (!inv) return std::nullopt;
  return Region{*inv * p.Q(), *inv * p.q(), *inv};
}

/// Largest common slack of the region rows (capped at 1), or nullopt if empty.
inline std::optional<Rational> chebyshev_slack(const RatMatrix& N, const RatVector& o) {
  const std::size_t d = N.cols();
  Program lp(d + 1);
  for (std::size_t c = 0; c <= d; ++c) lp.set_free(c);
  for (std::size_t r = 0; r < N.rows(); ++r) {
    RatVector a(d + 1);
    for (std::size_t c = 0; c < d; ++c) a[c] = N(r, c);
    a[d] = -1;
    lp.add_ge(a, -o[r]);
  }
  RatVector cap(d + 1);
  cap[d] = 1;
  lp.add_le(cap, 1);
  RatVector obj(d + 1);
  obj[d] = 1;
  const Result res = lp.maximise(obj);
  if (res.status != Status::Optimal) return std::nullopt;
  return res.value;
}

/// Dimension of { theta : N theta + o >= 0 } (-1 when empty): rows whose
/// maximum over the set is zero are implicit equalities.
inline int dimension(const RatMatrix& N, const RatVector& o) {
  const std::size_t d = N.cols();
  Program lp(d);
  for (std::size_t c = 0; c < d; ++c) lp.set_free(c);
  for (std::size_t r = 0; r < N.rows(); ++r) lp.add_ge(N.row(r), -o[r]);
  if (lp.maximise(RatVector(d)).status == Status::Infeasible) return -1;
  std::vector<RatVector> implicit;
  for (std::size_t r = 0; r < N.rows(); ++r) {
    const Result res = lp.maximise(N.row(r));
    if (res.status == Status::Optimal && res.value + o[r] == 0) implicit.push_back(N.row(r));
  }
  if (implicit.empty()) return static_cast<int>(d);
  return static_cast<int>(d) - static_cast<int>(rank(RatMatrix::from_rows(implicit)));
}

/// Lexicographic sign of the perturbed whole-region max-slack value, staged
/// through the dual over y >= 0, sum y = 1, (beta Q)^T y = 0.
/// Returns +1 for lex-positive or empty dual, -1 lex-negative, 0 lex-zero.
inline int perturbed_full_dimension_sign(const Region& reg) {
  const std::size_t n = reg.beta.rows();
  const std::size_t d = reg.normals.cols();
  Program lp(n);
  for (std::size_t c = 0; c < d; ++c) lp.add_eq(reg.normals.col(c), 0);
  lp.add_eq(RatVector(n, 1), 1);
  std::vector<RatVector> stack{reg.offsets};
  for (std::size_t k = 0; k < n; ++k) stack.push_back(reg.beta.col(k));
  for (std::size_t s = 0; s < stack.size(); ++s) {
    RatVector neg(n);
    for (std::size_t r = 0; r < n; ++r) neg[r] = -stack[s][r];
    const Result res = lp.maximise(neg);
    if (res.status == Status::Infeasible) return s == 0 ? 1 : 0;
    if (res.status == Status::Unbounded) return -1;
    const Rational value = -res.value;
    if (value > 0) return 1;
    if (value < 0) return -1;
    lp.add_eq(stack[s], 0);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Enumeration

struct OracleResult {
  std::set<Basis> bases;
  std::map<Basis, int> dims;  // unperturbed dimension of each kept basis
};

inline OracleResult enumerate_bruteforce(const PLCP& p, bool perturbed, std::size_t cap = 16) {
  const std::size_t n = p.n();
  if (n > cap) throw CapExceeded("oracle enumeration: order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  OracleResult out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<int> labels(n);
    for (std::size_t k = 0; k < n; ++k) labels[k] = static_cast<int>(k + 1 + ((mask >> k) & 1UL ? n : 0));
    const Basis b(labels);
    const auto reg = region_for(p, b);
    if (!reg) continue;
    bool keep;
    if (perturbed) {
      keep = perturbed_full_dimension_sign(*reg) > 0;
    } else {
      // Rows constant in theta are dropped for the slack test (they hold or
      // fail everywhere); the dimension count then confirms.
      std::vector<std::size_t> moving;
      bool violated = false;
      for (std::size_t r = 0; r < n; ++r) {
        if (!is_zero(reg->normals.row(r)))
          moving.push_back(r);
        else if (reg->offsets[r] < 0)
          violated = true;
      }
      RatVector o;
      for (std::size_t r : moving) o.push_back(reg->offsets[r]);
      const auto t = violated ? std::nullopt : chebyshev_slack(select_rows(reg->normals, moving), o);
      keep = t && *t > 0;
    }
    if (!keep) continue;
    out.bases.insert(b);
    out.dims[b] = dimension(reg->normals, reg->offsets);
    if (!perturbed && out.dims[b] != static_cast<int>(p.d())) throw std::logic_error("oracle: slack and dimension tests disagree");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-point LCP: revised Lemke with a lexicographic ratio test.

struct PointSolution {
  bool solved = false;
  RatVector w, z;
};

inline PointSolution reference_point_solve(const RatMatrix& M, const RatVector& q, std::size_t max_pivots = 200000) {
  const std::size_t n = M.rows();
  PointSolution sol;
  bool nonneg = true;
  for (const auto& x : q)
    if (x < 0) nonneg = false;
  if (nonneg) {
    sol.solved = true;
    sol.w = q;
    sol.z.assign(n, 0);
    return sol;
  }
  // Column of label k in [I, -M, -e]; label 2n+1 is the artificial.
  auto column = [&](int label) {
    RatVector a(n);
    if (label <= static_cast<int>(n))
      a[static_cast<std::size_t>(label - 1)] = 1;
    else if (label <= static_cast<int>(2 * n))
      for (std::size_t r = 0; r < n; ++r) a[r] = -M(r, static_cast<std::size_t>(label) - n - 1);
    else
      for (std::size_t r = 0; r < n; ++r) a[r] = -1;
    return a;
  };
  RatMatrix Binv = RatMatrix::identity(n);
  std::vector<int> basic(n);
  for (std::size_t r = 0; r < n; ++r) basic[r] = static_cast<int>(r + 1);
  const int art = static_cast<int>(2 * n + 1);

  // Lex key of row r: (Binv q)_r, Binv_r,: divided by u_r.
  RatVector xb;
  auto lex_less = [&](std::size_t a, const Rational& ua, std::size_t b, const Rational& ub) {
    Rational va = xb[a] / ua, vb = xb[b] / ub;
    if (va != vb) return va < vb;
    for (std::size_t c = 0; c < n; ++c) {
      va = Binv(a, c) / ua;
      vb = Binv(b, c) / ub;
      if (va != vb) return va < vb;
    }
    return false;
  };
  auto update = [&](std::size_t r, const RatVector& u) {
    const Rational piv = u[r];
    for (std::size_t c = 0; c < n; ++c) Binv(r, c) /= piv;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == r || u[s] == 0) continue;
      for (std::size_t c = 0; c < n; ++c) Binv(s, c) -= u[s] * Binv(r, c);
    }
  };

  // Artificial enters on the row with the lexicographically smallest (q_r, e_r).
  std::size_t row = 0;
  for (std::size_t r = 1; r < n; ++r)
    if (q[r] < q[row] || (q[r] == q[row] && r > row)) row = r;
  int entering = art;
  RatVector u = Binv * column(entering);
  int leaving = basic[row];
  update(row, u);
  basic[row] = entering;
  for (std::size_t it = 0; it < max_pivots; ++it) {
    entering = complement(leaving, n);
    u = Binv * column(entering);
    xb = Binv * q;
    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < n; ++r) {
      if (u[r] <= 0) continue;
      if (!best || lex_less(r, u[r], *best, u[*best])) best = r;
    }
    if (!best) return sol;
    leaving = basic[*best];
    update(*best, u);
    basic[*best] = entering;
    if (leaving == art) {
      const RatVector x = Binv * q;
      sol.solved = true;
      sol.w.assign(n, 0);
      sol.z.assign(n, 0);
      for (std::size_t r = 0; r < n; ++r) {
        const auto label = static_cast<std::size_t>(basic[r]);
        if (label <= n)
          sol.w[label - 1] = x[r];
        else
          sol.z[label - n - 1] = x[r];
      }
      return sol;
    }
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Direct max-slack LPs at a fixed numeric perturbation size.

inline RatVector perturbed_offsets(const Region& reg, const PLCP& p, const Rational& eps) {
  RatVector shift(p.n());
  Rational power = eps;
  for (std::size_t k = 0; k < p.n(); ++k) {
    shift[k] = power;
    power *= eps;
  }
  return reg.offsets + reg.beta * shift;
}

// max t  s.t.  rows >= t (inequalities), equalities = 0; true iff t* > 0 or unbounded.
inline bool positive_slack(std::size_t d, const std::vector<std::pair<RatVector, Rational>>& ineq,
                           const std::vector<std::pair<RatVector, Rational>>& eq) {
  Program lp(d + 1);
  for (std::size_t c = 0; c <= d; ++c) lp.set_free(c);
  for (const auto& [a, o] : ineq) {
    RatVector row = a;
    row.push_back(-1);
    lp.add_ge(row, -o);
  }
  for (const auto& [a, o] : eq) {
    RatVector row = a;
    row.push_back(0);
    lp.add_eq(row, -o);
  }
  RatVector obj(d + 1);
  obj[d] = 1;
  const Result res = lp.maximise(obj);
  if (res.status == Status::Unbounded) return true;
  return res.status == Status::Optimal && res.value > 0;
}

/// Facet of row i of B at a numeric eps.
inline bool facet_numeric(const PLCP& p, const Basis& b, int i, const Rational& eps) {
  const auto reg = region_for(p, b);
  if (!reg) throw std::invalid_argument("facet_numeric: singular basis");
  const RatVector off = perturbed_offsets(*reg, p, eps);
  const std::size_t pos = b.position(i);
  std::vector<std::pair<RatVector, Rational>> ineq, eq;
  for (std::size_t r = 0; r < p.n(); ++r)
    (r == pos ? eq : ineq).emplace_back(reg->normals.row(r), off[r]);
  return positive_slack(p.d(), ineq, eq);
}

/// Adjacency of B and B'' across row i of B at a numeric eps; both copies of
/// the shared hyperplane are kept.
inline bool adjacency_numeric(const PLCP& p, const Basis& b, const Basis& b2, int i, int j, const Rational& eps) {
  const auto r1 = region_for(p, b);
  const auto r2 = region_for(p, b2);
  if (!r1 || !r2) throw std::invalid_argument("adjacency_numeric: singular basis");
  const RatVector o1 = perturbed_offsets(*r1, p, eps);
  const RatVector o2 = perturbed_offsets(*r2, p, eps);
  const std::size_t pos_i = b.position(i);
  const std::size_t pos_jb = b2.position(complement(j, p.n()));
  std::vector<std::pair<RatVector, Rational>> ineq, eq;
  for (std::size_t r = 0; r < p.n(); ++r) {
    (r == pos_i ? eq : ineq).emplace_back(r1->normals.row(r), o1[r]);
    (r == pos_jb ? eq : ineq).emplace_back(r2->normals.row(r), o2[r]);
  }
  return positive_slack(p.d(), ineq, eq);
}

// ---------------------------------------------------------------------------
// Comparison

struct DiffReport {
  std::vector<Basis> missing;  // in the oracle, not in the graph
  std::vector<Basis> extra;    // in the graph, not in the oracle
  std::vector<std::pair<Basis, std::pair<int, int>>> dim_mismatch;  // (graph dim, oracle dim)

  bool empty() const { return missing.empty() && extra.empty() && dim_mismatch.empty(); }

  std::string str() const {
    std::ostringstream os;
    for (const auto& b : missing) os << "missing " << b.str() << '\n';
    for (const auto& b : extra) os << "extra " << b.str() << '\n';
    for (const auto& [b, dd] : dim_mismatch) os << "dimension " << b.str() << ": " << dd.first << " vs " << dd.second << '\n';
    return os.str();
  }
};

/// Set difference between graph nodes (with their dimensions, -2 meaning not
/// computed) and an oracle result.
inline DiffReport diff(const std::map<Basis, int>& graph_nodes, const OracleResult& o) {
  DiffReport rep;
  for (const auto& b : o.bases)
    if (!graph_nodes.count(b)) rep.missing.push_back(b);
  for (const auto& [b, dim] : graph_nodes) {
    if (!o.bases.count(b)) {
      rep.extra.push_back(b);
      continue;
    }
    const auto it = o.dims.find(b);
    if (dim != -2 && it != o.dims.end() && it->second != dim) rep.dim_mismatch.push_back({b, {dim, it->second}});
  }
  return rep;
}

}  // namespace plcp::oracle
