#pragma once

// Matrix-class certificates for sufficiency: positive semidefiniteness,
// P-matrix (all principal minors positive), and a brute-force check of the
// column/row sufficiency implication over all sign patterns of z.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plcp/lp.hpp"
#include "plcp/matrix.hpp"

namespace plcp {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CertificateCaps {
  std::size_t p_matrix = 12;
  std::size_t brute_force = 10;
};

/// All 2^n principal minors strictly positive.
inline bool is_p_matrix(const RatMatrix& M, std::size_t cap = CertificateCaps{}.p_matrix) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("is_p_matrix: matrix not square");
  if (n > cap) throw CapExceeded("is_p_matrix: order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1UL << k)) idx.push_back(k);
    RatMatrix sub(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = M(idx[r], idx[c]);
    if (determinant(sub) <= 0) return false;
  }
  return true;
}

namespace detail {

// Symmetric elimination with diagonal pivoting on S = (M + M^T)/2.
// Returns +1 positive definite, 0 positive semidefinite (singular), -1 indefinite.
inline int symmetric_definiteness(const RatMatrix& M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("definiteness test: matrix not square");
  RatMatrix S(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) S(r, c) = (M(r, c) + M(c, r)) / 2;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      if (S(k, k) < 0) return -1;
      if (S(k, k) > 0 && !pivot) pivot = k;
    }
    if (!pivot) {
      // All remaining diagonal entries are zero: PSD only if the rest vanishes.
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (!done[r] && !done[c] && S(r, c) != 0) return -1;
      return 0;
    }
    const std::size_t p = *pivot;
    done[p] = true;
    for (std::size_t r = 0; r < n; ++r) {
      if (done[r] || S(r, p) == 0) continue;
      const Rational factor = S(r, p) / S(p, p);
      for (std::size_t c = 0; c < n; ++c)
        if (!done[c] && S(p, c) != 0) S(r, c) -= factor * S(p, c);
    }
  }
  return 1;
}

}  // namespace detail

/// x^T M x >= 0 for all x, tested exactly on the symmetric part.
inline bool is_psd(const RatMatrix& M) { return detail::symmetric_definiteness(M) >= 0; }

/// x^T M x > 0 for all x != 0.
inline bool is_positive_definite(const RatMatrix& M) { return detail::symmetric_definiteness(M) > 0; }

struct SufficiencyCheck {
  bool sufficient = true;
  std::optional<RatVector> witness;  // z with z_i (Mz)_i <= 0 for all i, < 0 for some i
};

/// Column sufficiency by enumerating every sign pattern s of z in {+,0,-}^n.
///
/// With the signs fixed, the violating set is described by linear conditions
/// on the support S: s_k z_k > 0, -s_k (Mz)_k >= 0, and -s_j (Mz)_j > 0 for some
/// j. Normalising sum_S s_k z_k = 1, two LPs decide it: the relative interior
/// exists (max of min_k s_k z_k is positive) and the total violation
/// sum_S -s_k (Mz)_k can be made positive with the signs relaxed to >= 0. The
/// midpoint of the two optimisers is then a witness.
inline SufficiencyCheck is_column_sufficient_bruteforce(const RatMatrix& M, std::size_t cap = CertificateCaps{}.brute_force) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw std::invalid_argument("column sufficiency: matrix not square");
  if (n > cap) throw CapExceeded("column sufficiency: order " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<int> s(n, 0);
  std::size_t patterns = 1;
  for (std::size_t k = 0; k < n; ++k) patterns *= 3;
  for (std::size_t code = 1; code < patterns; ++code) {
    std::size_t c = code;
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = static_cast<int>(c % 3) - 1;  // -1, 0, +1
      c /= 3;
      if (s[k] != 0) support.push_back(k);
    }
    const std::size_t m = support.size();
    // Variables: z_S (free), u_S >= 0 with s_k z_k - u_k = floor, v_S >= 0 with
    // -s_k (Mz)_k - v_k = 0, and in the interior LP a free floor variable w.
    auto build = [&](bool interior) {
      const std::size_t vars = 3 * m + (interior ? 1 : 0);
      LinearProgram lp;
      lp.objective.assign(vars, 0);
      lp.sign.assign(vars, VarSign::NonNegative);
      for (std::size_t a = 0; a < m; ++a) lp.sign[a] = VarSign::Free;
      lp.eq = RatMatrix(2 * m + 1, vars);
      lp.rhs.assign(2 * m + 1, 0);
      for (std::size_t a = 0; a < m; ++a) {
        const std::size_t k = support[a];
        lp.eq(a, a) = s[k];
        lp.eq(a, m + a) = -1;
        if (interior) lp.eq(a, vars - 1) = -1;
        for (std::size_t b = 0; b < m; ++b) {
          const Rational coeff = -s[k] * M(k, support[b]);
          lp.eq(m + a, b) = coeff;
          if (!interior) lp.objective[b] -= coeff;
        }
        lp.eq(m + a, 2 * m + a) = -1;
        lp.eq(2 * m, a) = s[k];
      }
      lp.rhs[2 * m] = 1;
      if (interior) {
        lp.sign[vars - 1] = VarSign::Free;
        lp.objective[vars - 1] = -1;
      }
      return lp;
    };
    const LPOutcome violation = solve_lp(build(false));
    if (violation.status != LPStatus::Optimal || violation.value >= 0) continue;
    const LPOutcome interior = solve_lp(build(true));
    if (interior.status != LPStatus::Optimal || interior.value >= 0) continue;
    RatVector z(n);
    for (std::size_t a = 0; a < m; ++a) z[support[a]] = (violation.x[a] + interior.x[a]) / 2;
    return {false, z};
  }
  return {true, std::nullopt};
}

inline SufficiencyCheck is_row_sufficient_bruteforce(const RatMatrix& M, std::size_t cap = CertificateCaps{}.brute_force) {
  return is_column_sufficient_bruteforce(M.transpose(), cap);
}

struct SufficiencyCertificate {
  enum class Verdict { PSD, PMatrix, BruteForceSufficient, NotSufficient, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<RatVector> witness;  // set for NotSufficient
  bool witness_is_row = false;       // witness violates the row (transposed) implication
  std::vector<std::string> notes;

  bool sufficient() const {
    return verdict == Verdict::PSD || verdict == Verdict::PMatrix || verdict == Verdict::BruteForceSufficient;
  }
};

inline const char* to_string(SufficiencyCertificate::Verdict v) {
  using V = SufficiencyCertificate::Verdict;
  switch (v) {
    case V::PSD: return "PSD";
    case V::PMatrix: return "PMatrix";
    case V::BruteForceSufficient: return "BruteForceSufficient";
    case V::NotSufficient: return "NotSufficient";
    case V::Unknown: return "Unknown";
  }
  return "?";
}

inline SufficiencyCertificate certify(const RatMatrix& M, const CertificateCaps& caps = {}) {
  using V = SufficiencyCertificate::Verdict;
  SufficiencyCertificate cert;
  if (is_psd(M)) {
    cert.verdict = V::PSD;
    return cert;
  }
  try {
    if (is_p_matrix(M, caps.p_matrix)) {
      cert.verdict = V::PMatrix;
      return cert;
    }
  } catch (const CapExceeded& e) {
    cert.notes.emplace_back(e.what());
  }
  try {
    auto col = is_column_sufficient_bruteforce(M, caps.brute_force);
    if (!col.sufficient) {
      cert.verdict = V::NotSufficient;
      cert.witness = col.witness;
      return cert;
    }
    auto row = is_row_sufficient_bruteforce(M, caps.brute_force);
    if (!row.sufficient) {
      cert.verdict = V::NotSufficient;
      cert.witness = row.witness;
      cert.witness_is_row = true;
      return cert;
    }
    cert.verdict = V::BruteForceSufficient;
  } catch (const CapExceeded& e) {
    cert.notes.emplace_back(e.what());
    cert.verdict = V::Unknown;
  }
  return cert;
}

}  // namespace plcp
