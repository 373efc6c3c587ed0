#pragma once

#include "taulab/numkit.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace taulab::pvi {

using Mat2 = Eigen::Matrix2d;
using CMat2 = Eigen::Matrix2cd;
using CVec2 = Eigen::Vector2cd;
using Vec6c = Eigen::Matrix<cplx, 6, 1>;

// Parameters of the three trace-free residue matrices W_0, W_1, W_t.  The
// exponent at infinity is derived, not stored:
//   theta_inf = -2(z0+z1+zt) - (theta0+theta1+thetat),
// and neither +theta_inf nor -theta_inf may be a positive integer, or the
// coefficient recurrence hits a resonant index.
struct PviParams {
  double theta0 = 0.0, theta1 = 0.0, thetat = 0.0;
  double z0 = 0.0, z1 = 0.0, zt = 0.0;
  double u0 = 1.0, u1 = 1.0, ut = 1.0;
  double t = 0.5;

  [[nodiscard]] double theta_inf() const;
  void validate() const;
};

// Parameter set whose residue sum is exactly diagonal: given the three local
// exponents, a target theta_inf, and the free choices (t, z0, z1, u0), solves
// the moment constraints sum u_v z_v = 0 and sum (z_v+theta_v)/u_v = 0 for
// (zt, u1, ut), which forces W_inf = diag(theta_inf/2, -theta_inf/2).
// Throws std::domain_error when the resulting quadratic has no real root.
PviParams consistent_params(double theta0, double theta1, double thetat,
                            double theta_inf, double t, double z0, double z1,
                            double u0);

// Residue matrices with their signature factorizations: J W_v is symmetric
// with det = -theta_v^2/4, so J W_v = V_v^T sigma_{1,1} V_v with V_v real and
// sigma_{1,1} = diag(1,-1).  theta_v = 0 degenerates to rank one and the
// factor V_v carries a zero row.
struct WSystem {
  Mat2 W0, W1, Wt, W_inf;
  Mat2 V0, V1, Vt;
};

WSystem build_w(const PviParams& p);

// Unique solution of W C - C (W + nI) = D via the 4x4 Kronecker system
// (column-major vec).  Throws when spec(W) meets spec(W + nI), naming the
// resonant index n.
Mat2 sylvester_solve(const Mat2& W, int n, const Mat2& D);

// Coefficients of Phi(x) = (I + sum_n C_n x^{-n}) x^{-W_inf} Phi0 about
// x = infinity.  C[0] = I; growth records max_n ||C_n||^{1/n} (the first few
// coefficients can exceed the limiting ratio, so the convergence-radius guard
// uses a tail estimate instead).
struct LaurentSeries {
  Mat2 W_inf;
  std::vector<Mat2> C;
  double t = 0.0;
  double growth = 0.0;
  double theta_inf = 0.0;
  Eigen::Vector2d phi0;  // eigenvector of W_inf for eigenvalue +theta_inf/2
  double radius_est = 0.0;
};

LaurentSeries laurent_series(const PviParams& p, int order);

// x^{-W} = exp(-W log x) on the principal branch: eigendecomposition when the
// eigenvalue gap exceeds 1e-8, scaling-and-squaring otherwise (theta -> 0
// collapses the gap).
CMat2 principal_power(const Mat2& W, cplx x);

// Truncated series evaluation; throws std::domain_error when |x| is inside
// the estimated divergence radius.  The two-argument form uses the bounded
// branch phi0 recorded in the series.
CVec2 phi_eval(const LaurentSeries& s, cplx x, const Eigen::Vector2d& phi0);
CVec2 phi_eval(const LaurentSeries& s, cplx x);

// Max over the sample points of the zero-curvature residual
//   d/dt Omega(x) - d/dx B(x) + [Omega(x), B(x)],  B = -W_t/(x-t),
// under the deformation flows dW0/dt = [W_t,W0]/t, dW1/dt = [W_t,W1]/(t-1),
// dWt/dt = -(dW0/dt + dW1/dt).
double schlesinger_residual(const PviParams& p,
                            const std::vector<cplx>& samples);

// K(lambda, mu) = <J Phi(lambda), Phi(mu)> / (lambda - mu) with the bilinear
// pairing; the diagonal is the confluent limit <J Phi'(lambda), Phi(lambda)>
// (derivative by complex step, valid at real lambda).
cplx kernel_k(const LaurentSeries& s, cplx lam, cplx mu);

// Stacked half-kernel phi(lambda) = (V0 Phi/lambda, V1 Phi/(lambda-1),
// Vt Phi/(lambda-t)), block order (0, 1, t).
Vec6c stacked_phi(const WSystem& w, const LaurentSeries& s, cplx lam);

// Quadrature of the factorization identity
//   K(lambda, mu) = int_0^inf <sigma phi(lambda+s), phi(mu+s)> ds,
// sigma = sigma_{1,1} (+) sigma_{1,1} (+) sigma_{1,1}, over geometric panels
// on [0, cutoff] plus a power-law tail estimate f(cutoff)*cutoff/(theta_inf+1).
cplx kernel_factored(const WSystem& w, const LaurentSeries& s, cplx lam,
                     cplx mu, double cutoff = 600.0, int panels = 40,
                     int nodes = 24);

// dK/dt = -<J W_t Phi(lambda), Phi(mu)> / ((lambda-t)(mu-t)); finite rank in
// (lambda, mu).
cplx kernel_dt(const WSystem& w, const LaurentSeries& s, cplx lam, cplx mu);

}  // namespace taulab::pvi
