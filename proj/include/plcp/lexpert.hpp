#pragma once

// Symbolic decisions in the lexicographically perturbed parameter space
// q + Q theta + (eps, eps^2, ..., eps^n). Each question "is t*(eps) > 0 for all
// small eps" is answered through the dual max-slack problem and a stack of
// objectives: the eps^0 coefficient (beta q) followed by the eps^k
// coefficients (column k of beta).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "plcp/lp.hpp"
#include "plcp/model.hpp"

namespace plcp {

class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

// Objective stack c_0 = offsets, c_k = column k-1 of each beta, with the
// given beta row positions omitted for the second block.
inline std::vector<RatVector> perturbation_objectives(const std::vector<const Dictionary*>& blocks,
                                                      const std::vector<std::vector<std::size_t>>& rows) {
  const std::size_t n = blocks.front()->n();
  std::vector<RatVector> obj(n + 1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t r : rows[b]) {
      obj[0].push_back(blocks[b]->beta_q[r]);
      for (std::size_t k = 0; k < n; ++k) obj[k + 1].push_back(blocks[b]->beta(r, k));
    }
  return obj;
}

}  // namespace detail

/// Dual region F(i) with its perturbation objectives.
inline LexObjectiveStack redundancy_stack(const PLCP& p, const Dictionary& dv, int i) {
  const std::size_t n = p.n();
  const std::size_t d = p.d();
  const std::size_t pos = dv.basis.position(i);
  LexObjectiveStack st;
  LinearProgram& lp = st.region;
  lp.objective.assign(n, 0);
  lp.sign.assign(n, VarSign::NonNegative);
  lp.sign[pos] = VarSign::Free;
  lp.eq = RatMatrix(d + 1, n);
  lp.rhs.assign(d + 1, 0);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < n; ++r) lp.eq(c, r) = -dv.beta_Q(r, c);
  for (std::size_t r = 0; r < n; ++r)
    if (r != pos) lp.eq(d, r) = 1;
  lp.rhs[d] = 1;
  std::vector<std::size_t> all(n);
  for (std::size_t r = 0; r < n; ++r) all[r] = r;
  st.objectives = detail::perturbation_objectives({&dv}, {all});
  return st;
}

/// Lexicographic sign of the perturbed max-slack value for row i of B.
/// A row whose normal beta_i Q vanishes is constant in theta and never a facet
/// once perturbed; that case is answered without solving any LP.
inline LexSign redundancy_lexlp(const PLCP& p, const Dictionary& dv, int i) {
  if (is_zero(dv.normal(i))) return {LexVerdict::Negative, std::nullopt, std::nullopt, 0};
  return first_nonzero_objective(redundancy_stack(p, dv, i));
}

/// Facet present: lex-positive, or an empty dual region (unbounded slack).
inline bool is_facet_verdict(const LexSign& s) { return s.verdict == LexVerdict::Positive || s.verdict == LexVerdict::InfeasibleRegion; }

/// Joint dual region for B and B'' = B \ {i,j} u {i-bar,j-bar}. Variables are
/// y over the rows of B (y_i free) followed by x over the rows of B'' other than
/// j-bar; the B'' copy of the shared hyperplane is dropped.
inline LexObjectiveStack adjacency_stack(const PLCP& p, const Dictionary& dvB, const Dictionary& dvB2, int i, int j) {
  const std::size_t n = p.n();
  const std::size_t d = p.d();
  const std::size_t pos_i = dvB.basis.position(i);
  const std::size_t pos_jb = dvB2.basis.position(complement(j, n));
  std::vector<std::size_t> rows1(n), rows2;
  for (std::size_t r = 0; r < n; ++r) {
    rows1[r] = r;
    if (r != pos_jb) rows2.push_back(r);
  }
  const std::size_t vars = n + rows2.size();
  LexObjectiveStack st;
  LinearProgram& lp = st.region;
  lp.objective.assign(vars, 0);
  lp.sign.assign(vars, VarSign::NonNegative);
  lp.sign[pos_i] = VarSign::Free;
  lp.eq = RatMatrix(d + 1, vars);
  lp.rhs.assign(d + 1, 0);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < n; ++r) lp.eq(c, r) = -dvB.beta_Q(r, c);
    for (std::size_t k = 0; k < rows2.size(); ++k) lp.eq(c, n + k) = -dvB2.beta_Q(rows2[k], c);
  }
  for (std::size_t v = 0; v < vars; ++v)
    if (v != pos_i) lp.eq(d, v) = 1;
  lp.rhs[d] = 1;
  st.objectives = detail::perturbation_objectives({&dvB, &dvB2}, {rows1, rows2});
  return st;
}

inline LexSign adjacency_lexlp(const PLCP& p, const Dictionary& dvB, const Dictionary& dvB2, int i, int j) {
  LexSign s = first_nonzero_objective(adjacency_stack(p, dvB, dvB2, i, j));
  if (s.verdict == LexVerdict::Zero)
    throw InternalConsistencyError("adjacency lexLP between " + dvB.basis.str() + " and " + dvB2.basis.str() +
                                   " has a zero optimal value");
  return s;
}

inline bool is_adjacent_verdict(const LexSign& s) { return s.verdict == LexVerdict::Positive || s.verdict == LexVerdict::InfeasibleRegion; }

/// Whole-region max-slack problem  max t  s.t.  beta (Q theta + q + eps) >= t,
/// through its dual  min (beta[q I])^T y  s.t.  (beta Q)^T y = 0, sum y = 1,
/// y >= 0. Lex-positive (or an empty dual) means S^eps_B is full-dimensional.
inline LexObjectiveStack full_dimension_stack(const PLCP& p, const Dictionary& dv) {
  const std::size_t n = p.n();
  const std::size_t d = p.d();
  LexObjectiveStack st;
  LinearProgram& lp = st.region;
  lp.objective.assign(n, 0);
  lp.sign.assign(n, VarSign::NonNegative);
  lp.eq = RatMatrix(d + 1, n);
  lp.rhs.assign(d + 1, 0);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < n; ++r) lp.eq(c, r) = -dv.beta_Q(r, c);
  for (std::size_t r = 0; r < n; ++r) lp.eq(d, r) = 1;
  lp.rhs[d] = 1;
  std::vector<std::size_t> all(n);
  for (std::size_t r = 0; r < n; ++r) all[r] = r;
  st.objectives = detail::perturbation_objectives({&dv}, {all});
  return st;
}

inline bool is_full_dimensional_eps(const PLCP& p, const Dictionary& dv) {
  const LexSign s = first_nonzero_objective(full_dimension_stack(p, dv));
  return s.verdict == LexVerdict::Positive || s.verdict == LexVerdict::InfeasibleRegion;
}

}  // namespace plcp
