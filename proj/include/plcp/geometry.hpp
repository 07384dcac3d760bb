#pragma once

// Unperturbed polyhedral computations in parameter space: facet and adjacency
// tests for critical regions, polyhedron dimension, interior points and exact
// membership.

#include <cstddef>
#include <optional>
#include <vector>

#include "plcp/lp.hpp"
#include "plcp/model.hpp"

namespace plcp {

/// { theta : normals * theta + offsets >= 0 }, one row per basic label.
struct RegionHRep {
  Basis basis;
  RatMatrix normals;  // beta Q
  RatVector offsets;  // beta q

  std::size_t dim_space() const { return normals.cols(); }
};

inline RegionHRep region_of(const Dictionary& dv) { return {dv.basis, dv.beta_Q, dv.beta_q}; }

/// Inequalities A theta + b >= 0 and equalities E theta + f = 0 in R^d.
struct Polyhedron {
  std::size_t d = 0;
  RatMatrix A;
  RatVector b;
  RatMatrix E;
  RatVector f;

  static Polyhedron from_region(const RegionHRep& r) { return {r.dim_space(), r.normals, r.offsets, RatMatrix(0, r.dim_space()), {}}; }

  /// Conjunction of the constraints of both polyhedra.
  static Polyhedron intersect(const Polyhedron& x, const Polyhedron& y) {
    auto stack = [](const RatMatrix& top, const RatMatrix& bottom, std::size_t d) {
      RatMatrix out(top.rows() + bottom.rows(), d);
      for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) out(r, c) = top(r, c);
      for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < d; ++c) out(top.rows() + r, c) = bottom(r, c);
      return out;
    };
    Polyhedron p;
    p.d = x.d;
    p.A = stack(x.A, y.A, x.d);
    p.b = x.b;
    p.b.insert(p.b.end(), y.b.begin(), y.b.end());
    p.E = stack(x.E, y.E, x.d);
    p.f = x.f;
    p.f.insert(p.f.end(), y.f.begin(), y.f.end());
    return p;
  }
};

namespace detail {

// Maximises  obj_theta . theta + obj_t * t  over
//   slack_rows:  A_k theta + b_k - t >= 0     (t enters only when with_t)
//   plain rows:  A_k theta + b_k >= 0
//   E theta + f = 0,  and optionally t <= t_cap.
// Variables: theta (free), t (free, optional), one slack per inequality, one
// slack for the cap.
struct ChebyshevLP {
  const Polyhedron& poly;
  std::vector<bool> uses_t;  // per inequality row
  bool with_t = true;
  std::optional<Rational> t_cap;

  LPOutcome maximise(const RatVector& obj_theta, const Rational& obj_t) const {
    const std::size_t d = poly.d;
    const std::size_t m = poly.A.rows();
    const std::size_t e = poly.E.rows();
    const std::size_t t_col = d;
    const std::size_t first_slack = d + (with_t ? 1 : 0);
    const std::size_t vars = first_slack + m + (t_cap ? 1 : 0);
    LinearProgram lp;
    lp.objective.assign(vars, 0);
    lp.sign.assign(vars, VarSign::NonNegative);
    for (std::size_t c = 0; c < d; ++c) {
      lp.sign[c] = VarSign::Free;
      lp.objective[c] = -obj_theta[c];
    }
    if (with_t) {
      lp.sign[t_col] = VarSign::Free;
      lp.objective[t_col] = -obj_t;
    }
    const std::size_t rows = m + e + (t_cap ? 1 : 0);
    lp.eq = RatMatrix(rows, vars);
    lp.rhs.assign(rows, 0);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t c = 0; c < d; ++c) lp.eq(k, c) = poly.A(k, c);
      if (with_t && uses_t[k]) lp.eq(k, t_col) = -1;
      lp.eq(k, first_slack + k) = -1;
      lp.rhs[k] = -poly.b[k];
    }
    for (std::size_t k = 0; k < e; ++k) {
      for (std::size_t c = 0; c < d; ++c) lp.eq(m + k, c) = poly.E(k, c);
      lp.rhs[m + k] = -poly.f[k];
    }
    if (t_cap) {
      lp.eq(m + e, t_col) = 1;
      lp.eq(m + e, vars - 1) = 1;
      lp.rhs[m + e] = *t_cap;
    }
    LPOutcome out = solve_lp(lp);
    if (out.status == LPStatus::Optimal) out.value = -out.value;
    return out;
  }
};

inline std::vector<bool> all_rows(std::size_t m) { return std::vector<bool>(m, true); }

}  // namespace detail

/// Whether row i of the region of B is a facet: the max-slack LP
///   max t  s.t.  beta_j (Q theta + q) >= t  (j != i),  beta_i (Q theta + q) = 0
/// has a strictly positive (or unbounded) optimum.
inline bool facet_test_unperturbed(const PLCP& p, const Dictionary& dv, int i) {
  const std::size_t pos = dv.basis.position(i);
  Polyhedron poly;
  poly.d = p.d();
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < dv.n(); ++r)
    if (r != pos) keep.push_back(r);
  poly.A = select_rows(dv.beta_Q, keep);
  for (std::size_t r : keep) poly.b.push_back(dv.beta_q[r]);
  poly.E = select_rows(dv.beta_Q, {pos});
  poly.f = {dv.beta_q[pos]};
  detail::ChebyshevLP lp{poly, detail::all_rows(keep.size()), true, std::nullopt};
  const LPOutcome out = lp.maximise(RatVector(p.d()), 1);
  if (out.status == LPStatus::Unbounded) return true;
  if (out.status == LPStatus::Infeasible) return false;
  return out.value > 0;
}

/// Whether the regions of B and B'' = B \ {i,j} u {i-bar,j-bar} meet in a
/// (d-1)-dimensional set. The shared hyperplane is imposed once, from B's side.
inline bool adjacency_test_unperturbed(const PLCP& p, const Dictionary& dvB, const Dictionary& dvB2, int i, int j) {
  const std::size_t n = p.n();
  const int jb = complement(j, n);
  const std::size_t pos_i = dvB.basis.position(i);
  const std::size_t pos_jb = dvB2.basis.position(jb);
  Polyhedron poly;
  poly.d = p.d();
  std::vector<std::size_t> keep1, keep2;
  for (std::size_t r = 0; r < n; ++r) {
    if (r != pos_i) keep1.push_back(r);
    if (r != pos_jb) keep2.push_back(r);
  }
  poly.A = RatMatrix(keep1.size() + keep2.size(), p.d());
  std::size_t row = 0;
  for (std::size_t r : keep1) {
    for (std::size_t c = 0; c < p.d(); ++c) poly.A(row, c) = dvB.beta_Q(r, c);
    poly.b.push_back(dvB.beta_q[r]);
    ++row;
  }
  for (std::size_t r : keep2) {
    for (std::size_t c = 0; c < p.d(); ++c) poly.A(row, c) = dvB2.beta_Q(r, c);
    poly.b.push_back(dvB2.beta_q[r]);
    ++row;
  }
  poly.E = select_rows(dvB.beta_Q, {pos_i});
  poly.f = {dvB.beta_q[pos_i]};
  detail::ChebyshevLP lp{poly, detail::all_rows(poly.A.rows()), true, std::nullopt};
  const LPOutcome out = lp.maximise(RatVector(p.d()), 1);
  if (out.status == LPStatus::Unbounded) return true;
  if (out.status == LPStatus::Infeasible) return false;
  return out.value > 0;
}

/// Affine dimension of a polyhedron, -1 when empty. Inequalities whose
/// maximal slack over the polyhedron is zero are implicit equalities.
inline int polyhedron_dimension(const Polyhedron& poly) {
  const std::size_t d = poly.d;
  const std::size_t m = poly.A.rows();
  // Max common slack capped at 1 answers feasibility and, when positive, says
  // no inequality is implicit.
  detail::ChebyshevLP cheb{poly, detail::all_rows(m), true, Rational(1)};
  const LPOutcome first = cheb.maximise(RatVector(d), 1);
  if (first.status != LPStatus::Optimal) return -1;  // the capped LP is never unbounded
  std::vector<bool> implicit(m, false);
  if (first.value < 0) {
    // Check emptiness: plain feasibility without the common slack.
    detail::ChebyshevLP plain{poly, std::vector<bool>(m, false), false, std::nullopt};
    if (plain.maximise(RatVector(d), 0).status == LPStatus::Infeasible) return -1;
  }
  if (first.value <= 0) {
    std::vector<bool> loose(m, false);
    auto mark_loose = [&](const RatVector& theta) {
      for (std::size_t k = 0; k < m; ++k) {
        if (loose[k]) continue;
        Rational s = poly.b[k];
        for (std::size_t c = 0; c < d; ++c) s += poly.A(k, c) * theta[c];
        if (s > 0) loose[k] = true;
      }
    };
    detail::ChebyshevLP plain{poly, std::vector<bool>(m, false), false, std::nullopt};
    for (std::size_t k = 0; k < m; ++k) {
      if (loose[k]) continue;
      const LPOutcome out = plain.maximise(poly.A.row(k), 0);
      if (out.status == LPStatus::Unbounded) {
        loose[k] = true;
        continue;
      }
      RatVector theta(out.x.begin(), out.x.begin() + static_cast<std::ptrdiff_t>(d));
      mark_loose(theta);
      if (out.value + poly.b[k] == 0) implicit[k] = true;
    }
  }
  std::vector<RatVector> eq_rows;
  for (std::size_t k = 0; k < poly.E.rows(); ++k) eq_rows.push_back(poly.E.row(k));
  for (std::size_t k = 0; k < m; ++k)
    if (implicit[k]) eq_rows.push_back(poly.A.row(k));
  if (eq_rows.empty()) return static_cast<int>(d);
  return static_cast<int>(d) - static_cast<int>(rank(RatMatrix::from_rows(eq_rows)));
}

inline int region_dimension(const RegionHRep& r) { return polyhedron_dimension(Polyhedron::from_region(r)); }

/// Membership of theta. Strictness applies only to rows that vary with theta;
/// a row with zero normal holds or fails on all of parameter space.
inline bool contains(const RegionHRep& region, const RatVector& theta, bool strict) {
  const RatVector v = region.normals * theta + region.offsets;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < 0) return false;
    if (strict && v[k] == 0 && !is_zero(region.normals.row(k))) return false;
  }
  return true;
}

/// A point strictly inside the region, or nullopt when it is not
/// full-dimensional. When the max-slack point leaves the box |theta_k| <= box,
/// the box is imposed and the LP re-solved.
inline std::optional<RatVector> interior_point(const RegionHRep& region, const Rational& box = Rational(1 << 30)) {
  const std::size_t d = region.dim_space();
  // Rows constant in theta take no part; a violated one empties the region.
  std::vector<std::size_t> moving;
  for (std::size_t k = 0; k < region.normals.rows(); ++k) {
    if (!is_zero(region.normals.row(k)))
      moving.push_back(k);
    else if (region.offsets[k] < 0)
      return std::nullopt;
  }
  Polyhedron poly;
  poly.d = d;
  poly.A = select_rows(region.normals, moving);
  for (std::size_t k : moving) poly.b.push_back(region.offsets[k]);
  poly.E = RatMatrix(0, d);
  auto solve = [&](const Polyhedron& ph, std::size_t slack_rows) -> std::optional<RatVector> {
    std::vector<bool> uses(ph.A.rows(), false);
    for (std::size_t k = 0; k < slack_rows; ++k) uses[k] = true;
    detail::ChebyshevLP lp{ph, uses, true, Rational(1)};
    const LPOutcome out = lp.maximise(RatVector(d), 1);
    if (out.status != LPStatus::Optimal || out.value <= 0) return std::nullopt;
    return RatVector(out.x.begin(), out.x.begin() + static_cast<std::ptrdiff_t>(d));
  };
  auto theta = solve(poly, poly.A.rows());
  if (!theta) return std::nullopt;
  bool inside_box = true;
  for (const auto& x : *theta)
    if (abs(x) > box) inside_box = false;
  if (inside_box) return theta;
  Polyhedron boxed = poly;
  RatMatrix A(poly.A.rows() + 2 * d, d);
  for (std::size_t r = 0; r < poly.A.rows(); ++r)
    for (std::size_t c = 0; c < d; ++c) A(r, c) = poly.A(r, c);
  for (std::size_t c = 0; c < d; ++c) {
    A(poly.A.rows() + 2 * c, c) = 1;
    A(poly.A.rows() + 2 * c + 1, c) = -1;
    boxed.b.push_back(box);
    boxed.b.push_back(box);
  }
  boxed.A = std::move(A);
  auto clipped = solve(boxed, poly.A.rows());
  return clipped ? clipped : theta;
}

}  // namespace plcp
