#pragma once

// Exact dense simplex for LPs of the form
//
//     minimise  c^T x   subject to  A x = b,  x_j >= 0 or x_j free,
//
// and the staged multi-objective procedure that decides the lexicographic
// sign of a stack of objectives over a shared feasible region.
//
// Pivoting uses Bland's least-index rule in both phases, which guarantees
// termination on degenerate problems without any perturbation of the data.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "plcp/matrix.hpp"

namespace plcp {

enum class VarSign { NonNegative, Free };

struct LinearProgram {
  RatVector objective;  // minimised
  RatMatrix eq;         // equality rows, one column per variable
  RatVector rhs;
  std::vector<VarSign> sign;  // empty means every variable is nonnegative

  std::size_t num_vars() const { return objective.size(); }
  VarSign sign_of(std::size_t j) const { return sign.empty() ? VarSign::NonNegative : sign[j]; }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational value;  // valid when Optimal
  RatVector x;     // valid when Optimal
};

namespace detail {

class SimplexTableau {
 public:
  SimplexTableau(const LinearProgram& lp) : lp_(lp) {
    const std::size_t vars = lp.num_vars();
    if (lp.eq.rows() != lp.rhs.size()) throw std::invalid_argument("LP: rhs size does not match row count");
    if (lp.eq.rows() > 0 && lp.eq.cols() != vars) throw std::invalid_argument("LP: column count does not match objective");
    if (!lp.sign.empty() && lp.sign.size() != vars) throw std::invalid_argument("LP: sign vector size mismatch");

    // Free variables become a +/- column pair.
    for (std::size_t j = 0; j < vars; ++j) {
      plus_col_.push_back(num_struct_++);
      minus_col_.push_back(lp.sign_of(j) == VarSign::Free ? std::optional<std::size_t>(num_struct_++) : std::nullopt);
    }
    rows_ = lp.eq.rows();
    width_ = num_struct_ + rows_ + 1;  // structural, artificial, rhs
    tab_.assign(rows_, RatVector(width_));
    basis_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const bool flip = lp.rhs[r] < 0;
      for (std::size_t j = 0; j < vars; ++j) {
        const Rational& a = lp.eq(r, j);
        if (a == 0) continue;
        tab_[r][plus_col_[j]] = flip ? Rational(-a) : a;
        if (minus_col_[j]) tab_[r][*minus_col_[j]] = flip ? a : Rational(-a);
      }
      tab_[r][num_struct_ + r] = 1;
      tab_[r][width_ - 1] = flip ? Rational(-lp.rhs[r]) : lp.rhs[r];
      basis_[r] = num_struct_ + r;
    }
  }

  LPOutcome run() {
    // Phase 1: minimise the sum of artificials.
    cost_.assign(width_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < num_struct_; ++c) cost_[c] -= tab_[r][c];
    for (std::size_t r = 0; r < rows_; ++r) cost_[width_ - 1] -= tab_[r][width_ - 1];
    allowed_ = num_struct_ + rows_;
    iterate();  // phase 1 is always bounded
    if (cost_[width_ - 1] != 0) return {LPStatus::Infeasible, 0, {}};

    drive_out_artificials();

    // Phase 2 on structural columns only.
    allowed_ = num_struct_;
    RatVector c(num_struct_);
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      c[plus_col_[j]] = lp_.objective[j];
      if (minus_col_[j]) c[*minus_col_[j]] = -lp_.objective[j];
    }
    cost_.assign(width_, 0);
    for (std::size_t j = 0; j < num_struct_; ++j) cost_[j] = c[j];
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = c[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (tab_[r][j] != 0) cost_[j] -= cb * tab_[r][j];
    }
    if (!iterate()) return {LPStatus::Unbounded, 0, {}};

    RatVector xs(num_struct_);
    for (std::size_t r = 0; r < rows_; ++r) xs[basis_[r]] = tab_[r][width_ - 1];
    LPOutcome out;
    out.status = LPStatus::Optimal;
    out.value = -cost_[width_ - 1];
    out.x.resize(lp_.num_vars());
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      out.x[j] = xs[plus_col_[j]];
      if (minus_col_[j]) out.x[j] -= xs[*minus_col_[j]];
    }
    return out;
  }

 private:
  // Returns false on an unbounded ray.
  bool iterate() {
    while (true) {
      std::size_t enter = allowed_;
      for (std::size_t j = 0; j < allowed_; ++j)
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == allowed_) return true;
      std::optional<std::size_t> leave;
      Rational best, ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        ratio = tab_[r][width_ - 1] / tab_[r][enter];
        if (!leave || ratio < best || (ratio == best && basis_[r] < basis_[*leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = tab_[r][c];
    for (auto& x : tab_[r])
      if (x != 0) x /= p;
    Rational factor;
    for (std::size_t k = 0; k < rows_; ++k) {
      if (k == r || tab_[k][c] == 0) continue;
      factor = tab_[k][c];
      for (std::size_t j = 0; j < width_; ++j)
        if (tab_[r][j] != 0) tab_[k][j] -= factor * tab_[r][j];
    }
    if (cost_[c] != 0) {
      factor = cost_[c];
      for (std::size_t j = 0; j < width_; ++j)
        if (tab_[r][j] != 0) cost_[j] -= factor * tab_[r][j];
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_;) {
      if (basis_[r] < num_struct_) {
        ++r;
        continue;
      }
      std::size_t col = num_struct_;
      for (std::size_t j = 0; j < num_struct_; ++j)
        if (tab_[r][j] != 0) {
          col = j;
          break;
        }
      if (col < num_struct_) {
        pivot(r, col);
        ++r;
      } else {
        // Redundant equality row.
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --rows_;
      }
    }
  }

  const LinearProgram& lp_;
  std::vector<std::size_t> plus_col_;
  std::vector<std::optional<std::size_t>> minus_col_;
  std::size_t num_struct_ = 0;
  std::size_t rows_ = 0;
  std::size_t width_ = 0;
  std::size_t allowed_ = 0;
  std::vector<RatVector> tab_;
  RatVector cost_;  // reduced costs; last entry is minus the objective value
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LPOutcome solve_lp(const LinearProgram& lp) { return detail::SimplexTableau(lp).run(); }

// ---------------------------------------------------------------------------
// Lexicographic objective stacks

struct LexObjectiveStack {
  std::vector<RatVector> objectives;  // c_0, c_1, ..., minimised in order
  LinearProgram region;               // objective field is ignored
};

enum class LexVerdict { Positive, Negative, Zero, InfeasibleRegion };

struct LexSign {
  LexVerdict verdict = LexVerdict::Zero;
  std::optional<std::size_t> stage;  // first stage with a nonzero optimum
  std::optional<Rational> value;     // its optimal value (absent when unbounded)
  std::size_t stage_lps = 0;         // number of LPs actually solved
};

inline const char* to_string(LexVerdict v) {
  switch (v) {
    case LexVerdict::Positive: return "lex-positive";
    case LexVerdict::Negative: return "lex-negative";
    case LexVerdict::Zero: return "lex-zero";
    case LexVerdict::InfeasibleRegion: return "infeasible-region";
  }
  return "?";
}

/// Minimises c_r over the region intersected with {c_k . y = 0 : k < r} for
/// r = 0, 1, ... and reports the sign of the first nonzero optimum.
inline LexSign first_nonzero_objective(const LexObjectiveStack& stack) {
  const LinearProgram& region = stack.region;
  const std::size_t vars = region.num_vars();
  LexSign result;
  LinearProgram stage;
  stage.sign = region.sign;
  stage.eq = region.eq;
  stage.rhs = region.rhs;
  for (std::size_t r = 0; r < stack.objectives.size(); ++r) {
    if (stack.objectives[r].size() != vars) throw std::invalid_argument("lex stack: objective dimension mismatch");
    if (r > 0) {
      RatMatrix grown(stage.eq.rows() + 1, vars);
      for (std::size_t i = 0; i < stage.eq.rows(); ++i)
        for (std::size_t j = 0; j < vars; ++j) grown(i, j) = stage.eq(i, j);
      for (std::size_t j = 0; j < vars; ++j) grown(stage.eq.rows(), j) = stack.objectives[r - 1][j];
      stage.eq = std::move(grown);
      stage.rhs.push_back(0);
    }
    stage.objective = stack.objectives[r];
    const LPOutcome out = solve_lp(stage);
    ++result.stage_lps;
    if (out.status == LPStatus::Infeasible) {
      if (r == 0) {
        result.verdict = LexVerdict::InfeasibleRegion;
        return result;
      }
      throw std::logic_error("lex stack: stage became infeasible after a zero optimum");
    }
    if (out.status == LPStatus::Unbounded) {
      result.verdict = LexVerdict::Negative;
      result.stage = r;
      return result;
    }
    if (out.value != 0) {
      result.verdict = out.value > 0 ? LexVerdict::Positive : LexVerdict::Negative;
      result.stage = r;
      result.value = out.value;
      return result;
    }
  }
  result.verdict = LexVerdict::Zero;
  return result;
}

}  // namespace plcp
