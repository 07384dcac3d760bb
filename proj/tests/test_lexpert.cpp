#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace plcp;
using fixtures::apex_line;

namespace {

const Rational kEps = fixtures::frac(1, 1000000000);

std::vector<Basis> all_complementary(std::size_t n) {
  std::vector<Basis> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> l;
    for (std::size_t k = 0; k < n; ++k) l.push_back(static_cast<int>(k + 1 + (((mask >> k) & 1u) ? n : 0)));
    out.emplace_back(l);
  }
  return out;
}

// Unperturbed max-slack value for row i without any cap (nullopt unless
// the LP has a finite optimum).
std::optional<Rational> slack_value(const Dictionary& dv, std::size_t pos) {
  const std::size_t d = dv.beta_Q.cols();
  oracle::Program lp(d + 1);
  for (std::size_t c = 0; c <= d; ++c) lp.set_free(c);
  for (std::size_t r = 0; r < dv.n(); ++r) {
    RatVector a(d + 1);
    for (std::size_t c = 0; c < d; ++c) a[c] = dv.beta_Q(r, c);
    if (r == pos) {
      lp.add_eq(a, -dv.beta_q[r]);
    } else {
      a[d] = -1;
      lp.add_ge(a, -dv.beta_q[r]);
    }
  }
  RatVector obj(d + 1);
  obj[d] = 1;
  const auto res = lp.maximise(obj);
  if (res.status != oracle::Status::Optimal) return std::nullopt;
  return res.value;
}

}  // namespace

TEST(RedundancyLexLP, ApexLineSlackBasisHasTwoFacets) {
  // Perturbed region of {1,2} is the interval [-eps, eps^2].
  const PLCP p = apex_line();
  const auto dv = *dictionary(p, Basis{1, 2});
  for (int i : {1, 2}) {
    const auto s = redundancy_lexlp(p, dv, i);
    EXPECT_EQ(s.verdict, LexVerdict::Positive) << i;
    EXPECT_GE(s.stage.value_or(0), 1u);  // the unperturbed slack is zero
    EXPECT_TRUE(oracle::facet_numeric(p, Basis{1, 2}, i, kEps));
  }
}

TEST(RedundancyLexLP, QuadrantFacetSurvivesPerturbation) {
  const PLCP p(RatMatrix::identity(2), {0, 0}, RatMatrix::identity(2));
  const auto dv = *dictionary(p, Basis{1, 2});
  EXPECT_TRUE(is_facet_verdict(redundancy_lexlp(p, dv, 1)));
}

TEST(RedundancyLexLP, ConstantRowIsAnsweredWithoutLPs) {
  const PLCP p = apex_line();
  const auto dv = *dictionary(p, Basis{3, 4});  // one row of beta Q vanishes here
  int constant = 0;
  for (int i : Basis{3, 4}) {
    if (!is_zero(dv.normal(i))) continue;
    ++constant;
    const auto s = redundancy_lexlp(p, dv, i);
    EXPECT_EQ(s.verdict, LexVerdict::Negative);
    EXPECT_EQ(s.stage_lps, 0u);
  }
  EXPECT_EQ(constant, 1);
}

TEST(AdjacencyLexLP, SkewExchangeMatchesNumericEps) {
  const PLCP p = fixtures::skew_instance();
  const auto b = *dictionary(p, Basis{1, 2});
  const auto b2 = *dictionary(p, Basis{3, 4});
  ASSERT_EQ(classify_facet(b, 1).kind, FacetClass::Kind::Exchange);
  const auto s = adjacency_lexlp(p, b, b2, 1, 2);
  EXPECT_EQ(is_adjacent_verdict(s), oracle::adjacency_numeric(p, Basis{1, 2}, Basis{3, 4}, 1, 2, kEps));
}

TEST(AdjacencyLexLP, StageZeroDecidesWhenUnperturbedSlackIsPositive) {
  const PLCP p({{0, 1}, {-1, 0}}, {1, 0}, RatMatrix::identity(2));
  const auto b = *dictionary(p, Basis{1, 2});
  const auto b2 = *dictionary(p, Basis{3, 4});
  ASSERT_TRUE(adjacency_test_unperturbed(p, b, b2, 1, 2));
  const auto s = adjacency_lexlp(p, b, b2, 1, 2);
  EXPECT_TRUE(is_adjacent_verdict(s));
  if (s.verdict == LexVerdict::Positive) { EXPECT_EQ(s.stage, 0u); }
}

TEST(FullDimensionLexLP, ApexLine) {
  const PLCP p = apex_line();
  EXPECT_TRUE(is_full_dimensional_eps(p, *dictionary(p, Basis{1, 2})));
  EXPECT_TRUE(is_full_dimensional_eps(p, *dictionary(p, Basis{2, 3})));
  EXPECT_TRUE(is_full_dimensional_eps(p, *dictionary(p, Basis{1, 4})));
  EXPECT_FALSE(is_full_dimensional_eps(p, *dictionary(p, Basis{3, 4})));
}

// Random PSD instances: every symbolic decision agrees with the direct LP at
// eps = 1e-9, stage 0 matches the unperturbed slack, adjacency never ends in
// a zero value, positive verdicts persist at eps = 1e-12, and every
// full-dimensional perturbed region has a facet.
TEST(LexPerturbationProperty, RandomPSDInstances) {
  std::mt19937_64 rng(61);
  std::size_t redundancy = 0, adjacency = 0;
  const Rational tiny = fixtures::frac(1, 1000000000000L);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 4, d = 1 + trial % 2;
    const PLCP p = fixtures::random_psd_instance(rng, {n, d});
    for (const Basis& b : all_complementary(n)) {
      const auto dv = dictionary(p, b);
      if (!dv) continue;
      const bool full = is_full_dimensional_eps(p, *dv);
      EXPECT_EQ(full, oracle::perturbed_full_dimension_sign(*oracle::region_for(p, b)) > 0) << b.str();
      bool any_facet = false;
      for (int i : b) {
        const auto s = redundancy_lexlp(p, *dv, i);
        ++redundancy;
        EXPECT_LE(s.stage_lps, n + 1);
        EXPECT_EQ(is_facet_verdict(s), oracle::facet_numeric(p, b, i, kEps)) << b.str() << " row " << i;
        if (s.verdict == LexVerdict::Positive) { EXPECT_TRUE(oracle::facet_numeric(p, b, i, tiny)); }
        any_facet = any_facet || is_facet_verdict(s);
        if (!is_zero(dv->normal(i))) {
          const auto t0 = slack_value(*dv, b.position(i));
          if (t0 && *t0 != 0) {
            EXPECT_EQ(s.stage, 0u);
            EXPECT_EQ(s.value, t0);
          } else if (t0) {
            EXPECT_NE(s.stage, 0u);
          }
        }
        for (const auto& e : classify_facet(*dv, i).exchange) {
          const auto dv2 = *dictionary(p, e.basis);
          LexSign a;
          ASSERT_NO_THROW(a = adjacency_lexlp(p, *dv, dv2, i, e.partner));
          ++adjacency;
          EXPECT_LE(a.stage_lps, n + 1);
          EXPECT_EQ(is_adjacent_verdict(a), oracle::adjacency_numeric(p, b, e.basis, i, e.partner, kEps))
              << b.str() << " -> " << e.basis.str();
        }
      }
      if (full) { EXPECT_TRUE(any_facet) << b.str(); }
    }
  }
  EXPECT_GT(redundancy, 500u);
  EXPECT_GT(adjacency, 20u);
}
