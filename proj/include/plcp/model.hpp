#pragma once

// Parametric LCP instances  w - M z = q + Q theta,  complementary bases and
// their dictionaries, and the pivot-candidate classification of a facet of a
// complementary cone.
//
// Variable labels are 1-based: label k <= n is w_k, label n + k is z_k, and the
// complement of k is k + n (mod 2n).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plcp/matrix.hpp"

namespace plcp {

class RankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a dictionary entry contradicts the sufficiency of M.
class NonSufficientSignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int complement(int i, std::size_t n) {
  const int nn = static_cast<int>(n);
  if (i < 1 || i > 2 * nn) throw std::out_of_range("complement: index " + std::to_string(i) + " outside 1.." + std::to_string(2 * nn));
  return i <= nn ? i + nn : i - nn;
}

class PLCP {
 public:
  PLCP() = default;
  PLCP(RatMatrix M, RatVector q, RatMatrix Q) : M_(std::move(M)), q_(std::move(q)), Q_(std::move(Q)) {
    const std::size_t n = M_.rows();
    if (n == 0) throw std::invalid_argument("PLCP: order must be at least 1");
    if (M_.cols() != n) throw std::invalid_argument("PLCP: M must be square");
    if (q_.size() != n) throw std::invalid_argument("PLCP: q has wrong length");
    if (Q_.rows() != n) throw std::invalid_argument("PLCP: Q has wrong row count");
    if (Q_.cols() == 0) throw std::invalid_argument("PLCP: parameter dimension must be at least 1");
    if (plcp::rank(Q_) != Q_.cols()) throw RankError("PLCP: Q does not have full column rank");
    A_ = RatMatrix(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
      A_(r, r) = 1;
      for (std::size_t c = 0; c < n; ++c) A_(r, n + c) = -M_(r, c);
    }
  }

  std::size_t n() const { return M_.rows(); }
  std::size_t d() const { return Q_.cols(); }
  const RatMatrix& M() const { return M_; }
  const RatVector& q() const { return q_; }
  const RatMatrix& Q() const { return Q_; }
  /// [I  -M]
  const RatMatrix& A() const { return A_; }

  /// Right-hand side q + Q theta.
  RatVector rhs(const RatVector& theta) const { return q_ + Q_ * theta; }

  bool operator==(const PLCP& o) const { return M_ == o.M_ && q_ == o.q_ && Q_ == o.Q_; }

 private:
  RatMatrix M_;
  RatVector q_;
  RatMatrix Q_;
  RatMatrix A_;
};

/// Sorted set of 1-based variable labels.
class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<int> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
      throw std::invalid_argument("Basis: duplicate label");
  }
  Basis(std::initializer_list<int> labels) : Basis(std::vector<int>(labels)) {}

  /// {1, ..., n}: every w variable basic.
  static Basis slack(std::size_t n) {
    std::vector<int> l(n);
    for (std::size_t k = 0; k < n; ++k) l[k] = static_cast<int>(k + 1);
    return Basis(std::move(l));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  int operator[](std::size_t pos) const { return labels_[pos]; }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  bool contains(int label) const { return std::binary_search(labels_.begin(), labels_.end(), label); }

  /// Row position of a basic label.
  std::size_t position(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) throw std::out_of_range("Basis: label " + std::to_string(label) + " not basic");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool is_complementary(std::size_t n) const {
    if (labels_.size() != n) return false;
    std::vector<bool> seen(n + 1, false);
    for (int k : labels_) {
      if (k < 1 || k > static_cast<int>(2 * n)) return false;
      const std::size_t base = static_cast<std::size_t>(k <= static_cast<int>(n) ? k : k - static_cast<int>(n));
      if (seen[base]) return false;
      seen[base] = true;
    }
    return true;
  }

  /// B \ {out...} u {in...}
  Basis exchange(std::initializer_list<int> out, std::initializer_list<int> in) const {
    std::vector<int> l;
    for (int k : labels_)
      if (std::find(out.begin(), out.end(), k) == out.end()) l.push_back(k);
    l.insert(l.end(), in.begin(), in.end());
    return Basis(std::move(l));
  }

  std::string str() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < labels_.size(); ++k) os << (k ? "," : "") << labels_[k];
    os << '}';
    return os.str();
  }

  auto operator<=>(const Basis&) const = default;
  bool operator==(const Basis&) const = default;

 private:
  std::vector<int> labels_;
};

/// A complementary basis with beta = A_B^{-1} and the dictionary -beta A.
/// The dictionary is stored over all 2n columns; only nonbasic columns are
/// meaningful as D entries (basic columns hold -I).
struct Dictionary {
  Basis basis;
  RatMatrix beta;     // row r belongs to basis[r]
  RatMatrix neg_tab;  // -beta * A, n x 2n
  RatMatrix beta_Q;   // beta * Q: region normals
  RatVector beta_q;   // beta * q: region offsets

  std::size_t n() const { return beta.rows(); }

  /// D_{i,k} for basic i and nonbasic k (1-based labels).
  const Rational& D(int i, int k) const { return neg_tab(basis.position(i), static_cast<std::size_t>(k - 1)); }

  RatVector beta_row(int i) const { return beta.row(basis.position(i)); }
  RatVector normal(int i) const { return beta_Q.row(basis.position(i)); }
  const Rational& offset(int i) const { return beta_q[basis.position(i)]; }
};

/// Columns of A selected by a basis, in basis order.
inline RatMatrix basis_matrix(const PLCP& p, const Basis& b) {
  const std::size_t n = p.n();
  RatMatrix AB(n, b.size());
  for (std::size_t c = 0; c < b.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) AB(r, c) = p.A()(r, static_cast<std::size_t>(b[c] - 1));
  return AB;
}

/// nullopt when A_B is singular.
inline std::optional<Dictionary> dictionary(const PLCP& p, const Basis& b) {
  if (!b.is_complementary(p.n())) throw std::invalid_argument("dictionary: " + b.str() + " is not complementary");
  auto inv = invert(basis_matrix(p, b));
  if (!inv) return std::nullopt;
  Dictionary dv;
  dv.basis = b;
  dv.beta = std::move(*inv);
  dv.neg_tab = -(dv.beta * p.A());
  dv.beta_Q = dv.beta * p.Q();
  dv.beta_q = dv.beta * p.q();
  return dv;
}

struct ExchangeCandidate {
  int partner;  // j: the second basic label leaving
  Basis basis;  // B \ {i, j} u {i-bar, j-bar}
};

struct FacetClass {
  enum class Kind { Diagonal, Exchange, Boundary };
  Kind kind = Kind::Boundary;
  std::optional<Basis> diagonal;           // set when Diagonal
  std::vector<ExchangeCandidate> exchange;  // nonempty when Exchange
};

/// Which complementary cones share the facet {beta_i y = 0} of C(B).
///
/// Diagonal when D_{i,i-bar} > 0. Otherwise every j with D_{j,i-bar} < 0 whose
/// exchange B'' = B \ {i,j} u {i-bar, j-bar} is a basis; no such j means the
/// facet lies on the boundary of the complementary range.
inline FacetClass classify_facet(const Dictionary& dv, int i) {
  const std::size_t n = dv.n();
  const int ib = complement(i, n);
  const Rational& dii = dv.D(i, ib);
  FacetClass fc;
  if (dii > 0) {
    fc.kind = FacetClass::Kind::Diagonal;
    fc.diagonal = dv.basis.exchange({i}, {ib});
    return fc;
  }
  if (dii < 0)
    throw NonSufficientSignal("negative diagonal dictionary entry D(" + std::to_string(i) + "," + std::to_string(ib) +
                              ") at basis " + dv.basis.str() + ": M is not sufficient");
  for (int j : dv.basis) {
    if (j == i || dv.D(j, ib) >= 0) continue;
    const int jb = complement(j, n);
    // B'' is a basis iff the 2x2 pivot block on rows {i,j}, columns {i-bar,j-bar} is nonsingular.
    const Rational det = dv.D(i, ib) * dv.D(j, jb) - dv.D(i, jb) * dv.D(j, ib);
    if (det == 0) continue;
    fc.exchange.push_back({j, dv.basis.exchange({i, j}, {ib, jb})});
  }
  fc.kind = fc.exchange.empty() ? FacetClass::Kind::Boundary : FacetClass::Kind::Exchange;
  return fc;
}

}  // namespace plcp
