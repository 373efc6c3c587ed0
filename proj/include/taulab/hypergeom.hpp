#pragma once

#include "taulab/numkit.hpp"

#include <Eigen/Dense>

#include <vector>

namespace taulab::hypergeom {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

// Self-dual parameter slice of the Gauss equation: a + b = 0, 0 <= c <= 1,
// -ab > 5/4, and 2*sqrt(-ab) not an integer.  The exponent pair is
// c0 = c, c1 = a + b - c + 1 = 1 - c, so c0 + c1 = 1 exactly.
struct HgParams {
  double a = 1.2;
  double b = -1.2;
  double c = 0.48;

  [[nodiscard]] double c0() const { return c; }
  [[nodiscard]] double c1() const { return 1.0 - c; }
  [[nodiscard]] double minus_ab() const { return -a * b; }
  void validate() const;
};

// Off-diagonal coefficient matrix of the first-order form: trace zero, with
// det W = ab/(lambda (lambda-1)) by the closed form of the product.
// Throws std::domain_error for lambda <= 1.
Mat2 w_matrix(const HgParams& p, double lam);

// Scalar potential of the second-order reduction, asymptotic to
// (-ab - 1/4)/lambda^2.  No domain guard: the closed form is rational and
// callers sample it off (1, infinity) when checking its reflection symmetry
// q(lambda; c) = q(1 - lambda; 1 - c).
double q_potential(const HgParams& p, double lam);

// Decaying Liouville-Green branch, phase-referenced at lambda = 2:
//   f = lambda^{-c0/2} (lambda-1)^{-c1/2} q^{-1/4} exp(-int_2^lambda sqrt(q))
// packaged as (f, f'/w12).  Requires lambda >= 2 where q > 0 is guaranteed
// by -ab > 5/4.
Vec2 lg_seed(const HgParams& p, double lam);

// Trajectory of the system integrated downward from lam_start, sampled on a
// geometric grid and reconstructed between samples by two-point quintic
// Hermite interpolation (values plus first and second derivatives from the
// equation itself).
struct HgSolution {
  HgParams params;
  double lam_start = 0.0;
  double lam_end = 0.0;
  std::vector<double> nodes;  // ascending
  std::vector<Vec2> values;
  std::vector<Vec2> d1;  // W(lam) psi
  std::vector<Vec2> d2;  // (W'(lam) + w12 w21 I) psi

  [[nodiscard]] Vec2 psi(double lam) const;
  [[nodiscard]] Vec2 dpsi(double lam) const;  // W(lam) psi(lam), exact
};

// Adaptive Runge-Kutta (dopri5, tolerances 1e-12/1e-14) tracking the
// decaying branch.  The Liouville-Green seed is planted well beyond
// lam_start and carried down so its growing-branch admixture has died off
// by lam_start, where the scale is re-pinned to the seed formula.  lam_end
// must exceed 1: the step size collapses on the regular singular point.
HgSolution integrate_system(const HgParams& p, double lam_start,
                            double lam_end, int samples = 4000);

// One-off point-to-point integration (either direction); used to check that
// the flow is reversible and that the seed is self-consistent.
Vec2 integrate_between(const HgParams& p, double from, double to,
                       const Vec2& y0);

// Loewner integral representation
//   (sin pi c0 / pi) int_0^1 v^{-c0} (1-v)^{c0-1} / (lam - v) dv
// which equals lam^{-c0} (lam-1)^{c0-1}.  Endpoint singularities are handled
// by tanh-sinh quadrature (a double-exponential substitution); the interval
// is split at 1/2 so each singular endpoint sits at an accurate origin.
double loewner_rep(double c0, double lam);

// Two-pole variant (sin pi c0 / pi) int_0^1 v^{-c0}(1-v)^{c0-1} /
// ((x-v)(y-v)) dv, the difference-quotient measure of the same symbol:
// (y-x) * loewner_pole_pair = lam^{-c0}(lam-1)^{c0-1} difference at x, y.
double loewner_pole_pair(double c0, double x, double y);

// K(x,y) = <J Psi(x), Psi(y)>/(x-y); the diagonal is the confluent limit
// <J W(x) Psi(x), Psi(x)> (the derivative is exact, no finite differences).
double kernel_k5(const HgSolution& sol, double x, double y);

// Residual of the derivative identity: the exact value of
// (d_x + d_y)[(x-y)K] minus its reconstruction from the two Loewner-measure
// channels.
double identity_510_residual(const HgSolution& sol, double x, double y);

// Nystrom discretization of K on ((1+delta), L) with geometric panels; the
// determinant of I - K and the spectral range of the symmetrized matrix.
struct HgDet {
  double det = 1.0;
  double ev_min = 0.0;
  double ev_max = 0.0;
  int nodes = 0;
};

HgDet fredholm_det(const HgSolution& sol, double delta, double L,
                   int per_panel, int panels);

}  // namespace taulab::hypergeom
