#pragma once

#include "taulab/numkit.hpp"

#include <optional>

namespace taulab::linsys {

// Finite linear system (-A, B, C) with A = diag(lambda), Re lambda > 0.
// The symbol is phi(x) = C e^{-xA} B (p x m); an optional +-1 signature acts
// on the output space.
struct DiagonalRealization {
  Eigen::VectorXcd lambdas;   // N, Re > 0
  Eigen::MatrixXcd b;         // N x m input map
  Eigen::MatrixXcd c;         // p x N output map
  Eigen::VectorXd signature;  // p entries in {+1,-1}; empty means identity

  [[nodiscard]] int order() const { return static_cast<int>(lambdas.size()); }
  [[nodiscard]] Eigen::VectorXd sig() const;
  void validate() const;  // throws std::invalid_argument on violations

  [[nodiscard]] Eigen::MatrixXcd symbol(double x) const;
};

// Scalar-channel constructor: b = xi (column), c = ones (row).
DiagonalRealization scalar_realization(const Eigen::VectorXcd& lambdas,
                                       const Eigen::VectorXcd& xi);

struct TauCurve {
  std::vector<double> ts;    // strictly increasing
  std::vector<cplx> taus;
  std::vector<cplx> sigmas;  // optional log-derivatives (may be empty)
};

// R_x entries: (BC)_{jk} e^{-(lambda_j+lambda_k)x} / (lambda_j+lambda_k).
Eigen::MatrixXcd rx_matrix(const DiagonalRealization& sys, double x);

// Observability / signature-weighted controllability Gramians:
//   L_x[j,k]  = (b b^*)_{jk} e^{-(lambda_j + conj(lambda_k))x} / (lambda_j + conj(lambda_k))
//   Qs_x[j,k] = (c^* sigma c)_{jk} e^{-(conj(lambda_j) + lambda_k)x} / (conj(lambda_j) + lambda_k)
struct Gramians {
  Eigen::MatrixXcd L;
  Eigen::MatrixXcd Qs;
};
Gramians gramians(const DiagonalRealization& sys, double x);

// tau(x) = det(I - Qs_x L_x) via LU.
cplx tau_from_gramians(const DiagonalRealization& sys, double x);

// tau(x) = det(I - R_x) via LU (Hankel-side determinant).
cplx tau_det(const DiagonalRealization& sys, double x);

// Resolvent kernel T_lambda(x,y) = -lambda C e^{-xA} (I + lambda R_x)^{-1} e^{-yA} B.
// Scalar for single-channel systems (the p x m matrix otherwise flattened to
// its (0,0) entry by the scalar overload).  Throws near_singular_error when
// cond(I + lambda R_x) exceeds 1e12.
Eigen::MatrixXcd resolvent_kernel_matrix(const DiagonalRealization& sys,
                                         cplx lambda, double x, double y);
cplx resolvent_kernel(const DiagonalRealization& sys, cplx lambda, double x,
                      double y);

// Blocks of the Gelfand-Levitan solution:
//   U(x,y) =  C e^{-xA} (I - L Qs)^{-1} L e^{-yA^*} C^* sigma
//   V(x,y) = -C e^{-xA} (I - L Qs)^{-1} e^{-yA} B
//   T(x,y) = -B^* e^{-xA^*} (I - Qs L)^{-1} e^{-yA^*} C^*
//   Z(x,y) =  B^* e^{-xA^*} (I - Qs L)^{-1} Qs e^{-yA} B
// trace U(x,x) + trace Z(x,x) = d/dx log tau.
struct GlBlocks {
  Eigen::MatrixXcd U, V, T, Z;
  [[nodiscard]] cplx trace() const { return U.trace() + Z.trace(); }
};
GlBlocks gl_block_solution(const DiagonalRealization& sys, double x, double y);

// Integrable form of the squared-operator kernel for scalar channels:
//   f_x(v) = Sum_m b_m c_m e^{-2 lambda_m x} / (v + lambda_m)
//   K2(u,t) = e^{-xu} b(u) (f_x(u) - f_x(t))/(t - u) c(t) e^{-xt},
// with the derivative limit -f_x'(t) on the diagonal.  Evaluated at state
// points u = lambda_j, t = lambda_k it reproduces (R_x^2)_{jk}.
cplx rx_squared_f(const DiagonalRealization& sys, double x, cplx v);
cplx rx_squared_kernel(const DiagonalRealization& sys, double x, cplx u,
                       cplx t);

// det(I - R_t) and sigma = T_{-1}(t,t) along a t-grid (parallel over points).
TauCurve tau_curve(const DiagonalRealization& sys,
                   const std::vector<double>& ts, bool with_sigma = true);

// Centered finite difference of log tau on a sampled curve.
cplx log_derivative(const TauCurve& curve, double t);

}  // namespace taulab::linsys
