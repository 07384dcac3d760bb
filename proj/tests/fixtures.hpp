#pragma once

// Shared instances and samplers for the test programs.

#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "plcp/plcp.hpp"

namespace fixtures {

using namespace plcp;

inline std::string data_path(const std::string& name) { return std::string(PLCP_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::set<Basis> bases(std::initializer_list<std::initializer_list<int>> list) {
  std::set<Basis> out;
  for (const auto& l : list) out.insert(Basis(l));
  return out;
}

template <class Map>
std::set<Basis> keys(const Map& m) {
  std::set<Basis> out;
  for (const auto& [k, v] : m) out.insert(k);
  return out;
}

/// M = [[1,-1],[1,1]], Q = (1,-1), q = 0: a line through the apex of the
/// complementary cones, not in general position.
inline PLCP apex_line() { return PLCP({{1, -1}, {1, 1}}, {0, 0}, {{1}, {-1}}); }

inline PLCP skew_instance() { return PLCP({{0, 1}, {-1, 0}}, {1, 0}, {{1}, {1}}); }

/// The clamp QP: min 1/2 u^2 - theta u  s.t.  -1 <= u <= 1.
inline ParametricQP clamp_qp() {
  ParametricQP qp;
  qp.H = {{1}};
  qp.c = {0};
  qp.F = {{-1}};
  qp.G = {{1}, {-1}};
  qp.b = {1, 1};
  qp.E = {{0}, {0}};
  return qp;
}

/// Lower-triangular M with unit diagonal and 2 below it, q = -e and
/// Q = (1, 1/2, ..., 1/2^{n-1}): a P-matrix whose one-parameter line meets
/// 2^n critical regions.
inline PLCP murty_family(std::size_t n) {
  RatMatrix M(n, n), Q(n, 1);
  RatVector q(n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    M(r, r) = 1;
    for (std::size_t c = 0; c < r; ++c) M(r, c) = 2;
    Q(r, 0) = Rational(1, 1u << r);
  }
  return PLCP(M, q, Q);
}

struct RandomInstanceSpec {
  std::size_t n = 3;
  std::size_t d = 2;
};

/// M = L L^T + S with small integer L and skew-symmetric S (so M is PSD),
/// integer Q of full column rank, and q that is often zero to force
/// degenerate parametrisations.
inline PLCP random_psd_instance(std::mt19937_64& rng, const RandomInstanceSpec& spec) {
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> coin(0, 2);
  const std::size_t n = spec.n, d = spec.d;
  while (true) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng() % n);
    RatMatrix L(n, k), S(n, n), Q(n, d);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < k; ++c) L(r, c) = small(rng);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) {
        S(r, c) = small(rng);
        S(c, r) = -S(r, c);
      }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < d; ++c) Q(r, c) = small(rng);
    if (rank(Q) != d) continue;
    RatVector q(n);
    if (coin(rng) != 0)
      for (auto& x : q) x = small(rng);
    return PLCP(L * L.transpose() + S, q, Q);
  }
}

inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational random_rational(std::mt19937_64& rng, int range, int denom) {
  std::uniform_int_distribution<int> num(-range * denom, range * denom);
  return frac(num(rng), denom);
}

/// Feasible parameters: convex combinations of the given interior points,
/// plus box samples kept only if some nonnegative (w, z) exists there.
inline std::vector<RatVector> sample_feasible(const PLCP& p, const std::vector<RatVector>& anchors, std::size_t count,
                                              std::mt19937_64& rng) {
  std::vector<RatVector> out;
  std::uniform_int_distribution<int> w(0, 8);
  const std::size_t d = p.d();
  std::size_t box_tries = 0;
  while (out.size() < count) {
    if (!anchors.empty() && (out.size() % 2 == 0 || box_tries > 20 * count)) {
      RatVector theta(d);
      int total = 0;
      std::vector<int> weights(std::min<std::size_t>(anchors.size(), 3));
      for (auto& x : weights) total += (x = w(rng) + 1);
      for (std::size_t k = 0; k < weights.size(); ++k) {
        const auto& a = anchors[rng() % anchors.size()];
        theta = theta + frac(weights[k], total) * a;
      }
      out.push_back(theta);
    } else {
      ++box_tries;
      RatVector theta(d);
      for (auto& x : theta) x = random_rational(rng, 4, 4);
      if (is_weakly_feasible(p, theta)) out.push_back(theta);
      else if (anchors.empty() && box_tries > 50 * count) break;
    }
  }
  return out;
}

/// (w, z) complementarity and feasibility at theta for a region node.
inline bool solves_lcp(const PLCP& p, const RatMatrix& Fmat, const RatVector& gvec, const Basis& basis, const RatVector& theta) {
  const std::size_t n = p.n();
  const RatVector basic = Fmat * theta + gvec;
  RatVector w(n), z(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto label = static_cast<std::size_t>(basis[r]);
    if (basic[r] < 0) return false;
    if (label <= n)
      w[label - 1] = basic[r];
    else
      z[label - n - 1] = basic[r];
  }
  if (w - p.M() * z != p.rhs(theta)) return false;
  for (std::size_t k = 0; k < n; ++k)
    if (w[k] * z[k] != 0) return false;
  return true;
}

}  // namespace fixtures
