#pragma once

// Lemke's complementary pivoting method with a lexicographic ratio test on
// the augmented right-hand side [q | I]. The terminal basis is feasible for
// q + (eps, ..., eps^n) at every small eps > 0, which is exactly the property
// the perturbed exploration needs from its starting basis.

#include <cstddef>
#include <optional>
#include <vector>

#include "plcp/matrix.hpp"
#include "plcp/model.hpp"

namespace plcp {

struct LemkeOutcome {
  enum class Status { Solved, RayTermination };
  Status status = Status::RayTermination;
  Basis basis;  // complementary, set when Solved
  std::size_t pivots = 0;
};

namespace detail {

// Lexicographic comparison of a/sa and b/sb for rows a, b and positive scalars.
inline int lex_compare_scaled(const RatVector& a, const Rational& sa, const RatVector& b, const Rational& sb) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Rational x = a[k] / sa;
    const Rational y = b[k] / sb;
    if (x < y) return -1;
    if (x > y) return 1;
  }
  return 0;
}

}  // namespace detail

/// Solves w - M z = q, w, z >= 0, w^T z = 0 with covering vector e.
inline LemkeOutcome lemke_lexicographic(const RatMatrix& M, const RatVector& q, std::size_t max_pivots = 100000) {
  const std::size_t n = M.rows();
  const int z0 = static_cast<int>(2 * n + 1);
  // Columns of [I, -M, -e]; labels are column index + 1.
  RatMatrix T(n, 2 * n + 1);
  std::vector<RatVector> R(n, RatVector(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    T(r, r) = 1;
    for (std::size_t c = 0; c < n; ++c) T(r, n + c) = -M(r, c);
    T(r, 2 * n) = -1;
    R[r][0] = q[r];
    R[r][1 + r] = 1;
  }
  std::vector<int> label(n);
  for (std::size_t r = 0; r < n; ++r) label[r] = static_cast<int>(r + 1);

  LemkeOutcome out;
  bool all_nonneg = true;
  for (const auto& x : q)
    if (x < 0) all_nonneg = false;
  if (all_nonneg) {
    out.status = LemkeOutcome::Status::Solved;
    out.basis = Basis::slack(n);
    return out;
  }

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    const Rational p = T(pr, pc);
    for (std::size_t c = 0; c < T.cols(); ++c) T(pr, c) /= p;
    for (auto& x : R[pr]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == pr || T(r, pc) == 0) continue;
      const Rational f = T(r, pc);
      for (std::size_t c = 0; c < T.cols(); ++c)
        if (T(pr, c) != 0) T(r, c) -= f * T(pr, c);
      for (std::size_t c = 0; c <= n; ++c)
        if (R[pr][c] != 0) R[r][c] -= f * R[pr][c];
    }
    ++out.pivots;
  };

  // z0 enters on the lexicographically smallest row of [q | I].
  std::size_t row = 0;
  for (std::size_t r = 1; r < n; ++r)
    if (detail::lex_compare_scaled(R[r], 1, R[row], 1) < 0) row = r;
  int leaving = label[row];
  pivot(row, 2 * n);
  label[row] = z0;

  while (out.pivots < max_pivots) {
    const int entering = complement(leaving, n);
    const std::size_t col = static_cast<std::size_t>(entering - 1);
    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < n; ++r) {
      if (T(r, col) <= 0) continue;
      if (!best || detail::lex_compare_scaled(R[r], T(r, col), R[*best], T(*best, col)) < 0) best = r;
    }
    if (!best) return out;  // secondary ray
    leaving = label[*best];
    pivot(*best, col);
    label[*best] = entering;
    if (leaving == z0) {
      out.status = LemkeOutcome::Status::Solved;
      out.basis = Basis(label);
      return out;
    }
  }
  return out;
}

}  // namespace plcp
