#pragma once

// Parametric strictly convex QP
//     min 1/2 u^T H u + (c + F theta)^T u   s.t.   G u <= b + E theta
// reduced to a pLCP in the constraint multipliers, and the condensed MPC
// problem for a linear system with box constraints.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plcp/certificate.hpp"
#include "plcp/explorer.hpp"
#include "plcp/matrix.hpp"
#include "plcp/model.hpp"

namespace plcp {

class HNotPD : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParametricQP {
  RatMatrix H;  // n_u x n_u
  RatVector c;  // n_u
  RatMatrix F;  // n_u x d
  RatMatrix G;  // m x n_u
  RatVector b;  // m
  RatMatrix E;  // m x d

  std::size_t nu() const { return H.rows(); }
  std::size_t m() const { return G.rows(); }
  std::size_t d() const { return F.cols(); }

  void validate() const {
    const std::size_t nu = H.rows();
    if (H.cols() != nu || nu == 0) throw std::invalid_argument("QP: H must be square and nonempty");
    if (c.size() != nu) throw std::invalid_argument("QP: c has wrong length");
    if (F.rows() != nu || F.cols() == 0) throw std::invalid_argument("QP: F has wrong shape");
    if (G.cols() != nu || G.rows() == 0) throw std::invalid_argument("QP: G has wrong shape");
    if (b.size() != G.rows()) throw std::invalid_argument("QP: b has wrong length");
    if (E.rows() != G.rows() || E.cols() != F.cols()) throw std::invalid_argument("QP: E has wrong shape");
  }
};

/// u(theta) = -H^{-1} (c + F theta + G^T z(theta)), z the LCP multipliers.
struct QPRecoveryMap {
  RatMatrix Hinv;
  RatVector c;
  RatMatrix F;
  RatMatrix G;

  QPRecovery piece(const SolutionPiece& pc) const {
    const std::size_t m = G.rows();
    const std::size_t d = F.cols();
    RatMatrix ZF(m, d);
    RatVector zg(m);
    for (std::size_t r = 0; r < pc.basis.size(); ++r) {
      const int label = pc.basis[r];
      if (label <= static_cast<int>(m)) continue;
      const std::size_t k = static_cast<std::size_t>(label) - m - 1;
      for (std::size_t c2 = 0; c2 < d; ++c2) ZF(k, c2) = pc.Fmat(r, c2);
      zg[k] = pc.gvec[r];
    }
    const RatMatrix Gt = G.transpose();
    QPRecovery rec;
    rec.UF = -(Hinv * (F + Gt * ZF));
    rec.ug = Hinv * (c + Gt * zg);
    for (auto& x : rec.ug) x = -x;
    return rec;
  }

  RatVector u_at(const RatVector& theta, const RatVector& z) const {
    RatVector rhs = c + F * theta + G.transpose() * z;
    RatVector u = Hinv * rhs;
    for (auto& x : u) x = -x;
    return u;
  }
};

inline bool is_symmetric(const RatMatrix& A) { return A == A.transpose(); }

/// M = G H^{-1} G^T,  q = b + G H^{-1} c,  Q = E + G H^{-1} F.
inline std::pair<PLCP, QPRecoveryMap> qp_to_plcp(const ParametricQP& qp) {
  qp.validate();
  if (!is_symmetric(qp.H) || !is_positive_definite(qp.H)) throw HNotPD("QP: H is not symmetric positive definite");
  const auto Hinv = invert(qp.H);
  if (!Hinv) throw HNotPD("QP: H is singular");
  const RatMatrix GHi = qp.G * *Hinv;
  PLCP p(GHi * qp.G.transpose(), qp.b + GHi * qp.c, qp.E + GHi * qp.F);
  return {std::move(p), QPRecoveryMap{*Hinv, qp.c, qp.F, qp.G}};
}

/// Attaches the QP recovery map to every piece.
inline void attach_recovery(PiecewiseAffineSolution& sol, const QPRecoveryMap& rec) {
  for (auto& pc : sol.pieces) pc.recovery = rec.piece(pc);
}

/// Condensed MPC problem: states x_1..x_N are eliminated through
/// x_k = A^k theta + sum_{l<k} A^{k-1-l} B u_l. Stage cost x^T Qx x + u^T Ru u
/// with terminal weight Qf; constraints |x_k|_inf <= x_max for k = 1..N and
/// |u_k|_inf <= u_max. The parameter is the initial state.
struct MPCSpec {
  RatMatrix A;  // nx x nx
  RatMatrix B;  // nx x nu1
  RatMatrix Qx, Ru, Qf;
  Rational x_max;
  Rational u_max;
  std::size_t horizon = 1;
};

inline ParametricQP condensed_mpc(const MPCSpec& s) {
  const std::size_t nx = s.A.rows();
  const std::size_t n1 = s.B.cols();
  const std::size_t N = s.horizon;
  const std::size_t nu = n1 * N;
  // Phi (N nx x nx), Gamma (N nx x nu)
  RatMatrix Phi(N * nx, nx), Gamma(N * nx, nu);
  std::vector<RatMatrix> Apow{RatMatrix::identity(nx)};
  for (std::size_t k = 1; k <= N; ++k) Apow.push_back(s.A * Apow.back());
  for (std::size_t k = 1; k <= N; ++k) {
    for (std::size_t r = 0; r < nx; ++r)
      for (std::size_t c = 0; c < nx; ++c) Phi((k - 1) * nx + r, c) = Apow[k](r, c);
    for (std::size_t l = 0; l < k; ++l) {
      const RatMatrix blk = Apow[k - 1 - l] * s.B;
      for (std::size_t r = 0; r < nx; ++r)
        for (std::size_t c = 0; c < n1; ++c) Gamma((k - 1) * nx + r, l * n1 + c) = blk(r, c);
    }
  }
  // Block-diagonal state and input weights.
  RatMatrix W(N * nx, N * nx), R(nu, nu);
  for (std::size_t k = 0; k < N; ++k) {
    const RatMatrix& wk = (k + 1 == N) ? s.Qf : s.Qx;
    for (std::size_t r = 0; r < nx; ++r)
      for (std::size_t c = 0; c < nx; ++c) W(k * nx + r, k * nx + c) = wk(r, c);
    for (std::size_t r = 0; r < n1; ++r)
      for (std::size_t c = 0; c < n1; ++c) R(k * n1 + r, k * n1 + c) = s.Ru(r, c);
  }
  const RatMatrix GtW = Gamma.transpose() * W;
  ParametricQP qp;
  qp.H = GtW * Gamma + R;
  qp.c = RatVector(nu);
  qp.F = GtW * Phi;
  const std::size_t m = 2 * N * nx + 2 * nu;
  qp.G = RatMatrix(m, nu);
  qp.E = RatMatrix(m, nx);
  qp.b = RatVector(m);
  std::size_t row = 0;
  for (std::size_t sr = 0; sr < N * nx; ++sr)
    for (int sign : {1, -1}) {
      for (std::size_t c = 0; c < nu; ++c) qp.G(row, c) = sign * Gamma(sr, c);
      for (std::size_t c = 0; c < nx; ++c) qp.E(row, c) = -sign * Phi(sr, c);
      qp.b[row] = s.x_max;
      ++row;
    }
  for (std::size_t k = 0; k < nu; ++k)
    for (int sign : {1, -1}) {
      qp.G(row, k) = sign;
      qp.b[row] = s.u_max;
      ++row;
    }
  return qp;
}

/// The double integrator x+ = [[1,1],[0,1]] x + (1, 1/2) u with |x| <= 5,
/// |u| <= 1, identity weights.
inline MPCSpec double_integrator(std::size_t horizon = 5) {
  MPCSpec s;
  s.A = {{1, 1}, {0, 1}};
  s.B = {{1}, {Rational(1, 2)}};
  s.Qx = RatMatrix::identity(2);
  s.Ru = RatMatrix::identity(1);
  s.Qf = RatMatrix::identity(2);
  s.x_max = 5;
  s.u_max = 1;
  s.horizon = horizon;
  return s;
}

}  // namespace plcp
