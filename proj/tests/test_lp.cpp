#include <gtest/gtest.h>

#include <random>

#include "plcp/lp.hpp"
#include "plcp/oracle.hpp"

using namespace plcp;

namespace {

LinearProgram lp_of(RatVector c, RatMatrix a, RatVector b, std::vector<VarSign> sign = {}) {
  LinearProgram lp;
  lp.objective = std::move(c);
  lp.eq = std::move(a);
  lp.rhs = std::move(b);
  lp.sign = std::move(sign);
  return lp;
}

bool satisfies(const LinearProgram& lp, const RatVector& x) {
  if (lp.eq * x != lp.rhs) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (lp.sign_of(j) == VarSign::NonNegative && x[j] < 0) return false;
  return true;
}

}  // namespace

TEST(SolveLP, MinimiseNonnegativeVariable) {
  const auto out = solve_lp(lp_of({1}, RatMatrix(0, 1), {}));
  ASSERT_EQ(out.status, LPStatus::Optimal);
  EXPECT_EQ(out.value, 0);
  EXPECT_EQ(out.x, (RatVector{0}));
}

TEST(SolveLP, Unbounded) { EXPECT_EQ(solve_lp(lp_of({-1}, RatMatrix(0, 1), {})).status, LPStatus::Unbounded); }

TEST(SolveLP, Infeasible) {
  EXPECT_EQ(solve_lp(lp_of({0, 0}, {{1, 1}, {1, -1}}, {1, 3})).status, LPStatus::Infeasible);
}

TEST(SolveLP, FreeVariablesAndRedundantRows) {
  // min y  s.t.  y - x = -2, 2y - 2x = -4, x >= 0, y free  ->  y = -2 at x = 0.
  const auto lp = lp_of({0, 1}, {{-1, 1}, {-2, 2}}, {-2, -4}, {VarSign::NonNegative, VarSign::Free});
  const auto out = solve_lp(lp);
  ASSERT_EQ(out.status, LPStatus::Optimal);
  EXPECT_EQ(out.value, -2);
  EXPECT_TRUE(satisfies(lp, out.x));
}

TEST(SolveLP, DegenerateCyclingExampleTerminates) {
  // Beale's cycling example in equality form with slacks.
  const RatMatrix A{{Rational(1, 4), -60, Rational(-1, 25), 9, 1, 0, 0},
                    {Rational(1, 2), -90, Rational(-1, 50), 3, 0, 1, 0},
                    {0, 0, 1, 0, 0, 0, 1}};
  const auto lp = lp_of({Rational(-3, 4), 150, Rational(-1, 50), 6, 0, 0, 0}, A, {0, 0, 1});
  const auto out = solve_lp(lp);
  ASSERT_EQ(out.status, LPStatus::Optimal);
  EXPECT_EQ(out.value, Rational(-1, 20));
  EXPECT_TRUE(satisfies(lp, out.x));
}

// Strong duality: min c.x, Ax = b, x >= 0 against max b.y, A^T y <= c.
TEST(SolveLPProperty, StrongDualityOnRandomInstances) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-3, 3);
  int optimal = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + trial % 3, n = m + 1 + trial % 3;
    RatMatrix A(m, n);
    RatVector b(m), c(n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = coef(rng);
    for (auto& x : b) x = coef(rng);
    for (auto& x : c) x = coef(rng);
    const auto primal = solve_lp(lp_of(c, A, b));
    // Dual as a minimisation: min -b.y  s.t.  A^T y + s = c, y free, s >= 0.
    RatMatrix D(n, m + n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) D(j, i) = A(i, j);
      D(j, m + j) = 1;
    }
    RatVector dc(m + n);
    for (std::size_t i = 0; i < m; ++i) dc[i] = -b[i];
    std::vector<VarSign> ds(m + n, VarSign::NonNegative);
    for (std::size_t i = 0; i < m; ++i) ds[i] = VarSign::Free;
    const auto dual = solve_lp(lp_of(dc, D, c, ds));
    if (primal.status == LPStatus::Optimal) {
      ++optimal;
      ASSERT_EQ(dual.status, LPStatus::Optimal);
      EXPECT_EQ(primal.value, -dual.value);
      EXPECT_TRUE(satisfies(lp_of(c, A, b), primal.x));
      EXPECT_EQ(dot(c, primal.x), primal.value);
    } else if (primal.status == LPStatus::Unbounded) {
      EXPECT_EQ(dual.status, LPStatus::Infeasible);
    } else {
      EXPECT_NE(dual.status, LPStatus::Optimal);
    }
  }
  EXPECT_GT(optimal, 20);
}

// The same LPs through the independent dictionary simplex.
TEST(SolveLPProperty, AgreesWithIndependentSimplex) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + trial % 3, n = 2 + trial % 4;
    RatMatrix A(m, n);
    RatVector b(m), c(n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = coef(rng);
    for (auto& x : b) x = coef(rng);
    for (auto& x : c) x = coef(rng);
    std::vector<VarSign> sign(n, VarSign::NonNegative);
    sign[0] = VarSign::Free;
    const auto mine = solve_lp(lp_of(c, A, b, sign));
    oracle::Program ref(n);
    ref.set_free(0);
    for (std::size_t i = 0; i < m; ++i) ref.add_eq(A.row(i), b[i]);
    RatVector neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -c[j];
    const auto theirs = ref.maximise(neg);
    switch (mine.status) {
      case LPStatus::Optimal:
        ASSERT_EQ(theirs.status, oracle::Status::Optimal);
        EXPECT_EQ(mine.value, -theirs.value);
        break;
      case LPStatus::Unbounded: EXPECT_EQ(theirs.status, oracle::Status::Unbounded); break;
      case LPStatus::Infeasible: EXPECT_EQ(theirs.status, oracle::Status::Infeasible); break;
    }
  }
}

TEST(LexStack, PositiveAtFirstStage) {
  LexObjectiveStack s;
  s.objectives = {{1}};
  s.region = lp_of({0}, {{1}}, {2});
  const auto sign = first_nonzero_objective(s);
  EXPECT_EQ(sign.verdict, LexVerdict::Positive);
  EXPECT_EQ(sign.stage, 0u);
  EXPECT_EQ(sign.value, Rational(2));
  EXPECT_EQ(sign.stage_lps, 1u);
}

TEST(LexStack, NegativeAtSecondStage) {
  LexObjectiveStack s;
  s.objectives = {{0, 0}, {1, -1}};
  s.region = lp_of({0, 0}, {{1, 1}}, {1});
  const auto sign = first_nonzero_objective(s);
  EXPECT_EQ(sign.verdict, LexVerdict::Negative);
  EXPECT_EQ(sign.stage, 1u);
  EXPECT_EQ(sign.value, Rational(-1));
  EXPECT_EQ(sign.stage_lps, 2u);
}

TEST(LexStack, AllZeroAndInfeasibleRegion) {
  LexObjectiveStack s;
  s.objectives = {{0, 0}, {1, 1}};
  s.region = lp_of({0, 0}, {{1, 0}, {0, 1}}, {0, 0});
  EXPECT_EQ(first_nonzero_objective(s).verdict, LexVerdict::Zero);
  s.region = lp_of({0, 0}, {{1, 1}}, {-1});
  EXPECT_EQ(first_nonzero_objective(s).verdict, LexVerdict::InfeasibleRegion);
}

TEST(LexStackProperty, InvariantUnderPositiveScaling) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-2, 2), scale(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3;
    LexObjectiveStack s;
    s.region = lp_of(RatVector(n), RatMatrix{{1, 1, 1}}, {1});
    for (int k = 0; k < 3; ++k) {
      RatVector c(n);
      for (auto& x : c) x = coef(rng);
      s.objectives.push_back(c);
    }
    const auto base = first_nonzero_objective(s);
    for (std::size_t r = 0; r < s.objectives.size(); ++r) {
      LexObjectiveStack scaled = s;
      Rational f(scale(rng), scale(rng));
      f.canonicalize();
      scaled.objectives[r] = f * scaled.objectives[r];
      const auto other = first_nonzero_objective(scaled);
      EXPECT_EQ(other.verdict, base.verdict);
      EXPECT_EQ(other.stage, base.stage);
    }
  }
}
