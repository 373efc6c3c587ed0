#include "taulab/linsys.hpp"

#include <algorithm>
#include <cmath>

namespace taulab::linsys {

namespace {

Eigen::VectorXcd exp_neg(const Eigen::VectorXcd& lambdas, double x) {
  return (-x * lambdas.array()).exp().matrix();
}

double condition_estimate(const Eigen::MatrixXcd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  return (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
}

}  // namespace

Eigen::VectorXd DiagonalRealization::sig() const {
  if (signature.size() > 0) return signature;
  return Eigen::VectorXd::Ones(c.rows());
}

void DiagonalRealization::validate() const {
  const int n = order();
  if (b.rows() != n || c.cols() != n)
    throw std::invalid_argument("realization: b rows and c cols must match state dim");
  for (int j = 0; j < n; ++j)
    if (!(lambdas[j].real() > 0.0))
      throw std::invalid_argument("realization: need Re lambda_j > 0");
  if (signature.size() > 0) {
    if (signature.size() != c.rows())
      throw std::invalid_argument("realization: signature length must match output dim");
    for (Eigen::Index i = 0; i < signature.size(); ++i)
      if (signature[i] != 1.0 && signature[i] != -1.0)
        throw std::invalid_argument("realization: signature entries must be +-1");
  }
}

Eigen::MatrixXcd DiagonalRealization::symbol(double x) const {
  return c * exp_neg(lambdas, x).asDiagonal() * b;
}

DiagonalRealization scalar_realization(const Eigen::VectorXcd& lambdas,
                                       const Eigen::VectorXcd& xi) {
  if (lambdas.size() != xi.size())
    throw std::invalid_argument("scalar_realization: lambda/xi length mismatch");
  for (Eigen::Index j = 0; j < lambdas.size(); ++j)
    for (Eigen::Index k = j + 1; k < lambdas.size(); ++k)
      if (lambdas[j] == lambdas[k])
        throw std::invalid_argument("scalar_realization: duplicate lambda");
  DiagonalRealization sys;
  sys.lambdas = lambdas;
  sys.b = xi;
  sys.c = Eigen::MatrixXcd::Ones(1, lambdas.size());
  sys.validate();
  return sys;
}

Eigen::MatrixXcd rx_matrix(const DiagonalRealization& sys, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("rx_matrix: need x >= 0");
  const int n = sys.order();
  const Eigen::MatrixXcd bc = sys.b * sys.c;
  Eigen::MatrixXcd R(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const cplx s = sys.lambdas[j] + sys.lambdas[k];
      if (s == cplx(0.0, 0.0))
        throw std::invalid_argument("rx_matrix: lambda_j + lambda_k = 0");
      R(j, k) = bc(j, k) * std::exp(-s * x) / s;
    }
  return R;
}

Gramians gramians(const DiagonalRealization& sys, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("gramians: need x >= 0");
  const int n = sys.order();
  const Eigen::MatrixXcd bb = sys.b * sys.b.adjoint();
  const Eigen::MatrixXcd csc =
      sys.c.adjoint() * sys.sig().asDiagonal() * sys.c;
  Gramians g;
  g.L.resize(n, n);
  g.Qs.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const cplx sl = sys.lambdas[j] + std::conj(sys.lambdas[k]);
      const cplx sq = std::conj(sys.lambdas[j]) + sys.lambdas[k];
      g.L(j, k) = bb(j, k) * std::exp(-sl * x) / sl;
      g.Qs(j, k) = csc(j, k) * std::exp(-sq * x) / sq;
    }
  return g;
}

cplx tau_from_gramians(const DiagonalRealization& sys, double x) {
  const Gramians g = gramians(sys, x);
  const Eigen::MatrixXcd A =
      Eigen::MatrixXcd::Identity(sys.order(), sys.order()) - g.Qs * g.L;
  return numkit::det_lu(A).value;
}

cplx tau_det(const DiagonalRealization& sys, double x) {
  const Eigen::MatrixXcd R = rx_matrix(sys, x);
  const Eigen::MatrixXcd A =
      Eigen::MatrixXcd::Identity(R.rows(), R.cols()) - R;
  return numkit::det_lu(A).value;
}

Eigen::MatrixXcd resolvent_kernel_matrix(const DiagonalRealization& sys,
                                         cplx lambda, double x, double y) {
  if (lambda == cplx(0.0, 0.0))
    return Eigen::MatrixXcd::Zero(sys.c.rows(), sys.b.cols());
  const int n = sys.order();
  const Eigen::MatrixXcd M =
      Eigen::MatrixXcd::Identity(n, n) + lambda * rx_matrix(sys, x);
  const double cond = condition_estimate(M);
  if (!(cond < 1e12)) {
    throw near_singular_error(
        "resolvent_kernel: I + lambda R_x near singular, cond ~ " +
        std::to_string(cond));
  }
  const Eigen::MatrixXcd inv = M.partialPivLu().solve(
      Eigen::MatrixXcd::Identity(n, n));
  return -lambda * sys.c * exp_neg(sys.lambdas, x).asDiagonal() * inv *
         exp_neg(sys.lambdas, y).asDiagonal() * sys.b;
}

cplx resolvent_kernel(const DiagonalRealization& sys, cplx lambda, double x,
                      double y) {
  return resolvent_kernel_matrix(sys, lambda, x, y)(0, 0);
}

GlBlocks gl_block_solution(const DiagonalRealization& sys, double x,
                           double y) {
  const int n = sys.order();
  const Gramians g = gramians(sys, x);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_lq(I - g.L * g.Qs);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_ql(I - g.Qs * g.L);
  const numkit::LuDet d = numkit::det_lu(I - g.Qs * g.L);
  if (d.singular())
    throw near_singular_error("gl_block_solution: I - Qs L singular");

  const Eigen::VectorXcd ex = exp_neg(sys.lambdas, x);
  const Eigen::VectorXcd ey = exp_neg(sys.lambdas, y);
  const Eigen::VectorXcd exc = ex.conjugate();
  const Eigen::VectorXcd eyc = ey.conjugate();
  const Eigen::MatrixXcd sig = sys.sig().asDiagonal();

  GlBlocks out;
  out.U = sys.c * ex.asDiagonal() * lu_lq.solve(g.L) * eyc.asDiagonal() *
          sys.c.adjoint() * sig;
  out.V = -sys.c * ex.asDiagonal() *
          lu_lq.solve(ey.asDiagonal() * Eigen::MatrixXcd(sys.b));
  out.T = -sys.b.adjoint() * exc.asDiagonal() *
          lu_ql.solve(eyc.asDiagonal() * Eigen::MatrixXcd(sys.c.adjoint()));
  out.Z = sys.b.adjoint() * exc.asDiagonal() * lu_ql.solve(g.Qs) *
          ey.asDiagonal() * sys.b;
  return out;
}

cplx rx_squared_f(const DiagonalRealization& sys, double x, cplx v) {
  const Eigen::MatrixXcd bc = sys.b * sys.c;
  cplx acc = 0.0;
  for (int m = 0; m < sys.order(); ++m)
    acc += bc(m, m) * std::exp(-2.0 * sys.lambdas[m] * x) /
           (v + sys.lambdas[m]);
  return acc;
}

cplx rx_squared_kernel(const DiagonalRealization& sys, double x, cplx u,
                       cplx t) {
  if (sys.b.cols() != 1 || sys.c.rows() != 1)
    throw std::invalid_argument("rx_squared_kernel: scalar channels only");
  // state-point densities: b(lambda_j) = b_j, c(lambda_k) = c_k
  auto density = [&](cplx p, bool input) -> cplx {
    for (int j = 0; j < sys.order(); ++j)
      if (sys.lambdas[j] == p) return input ? sys.b(j, 0) : sys.c(0, j);
    throw std::invalid_argument("rx_squared_kernel: point off the state grid");
  };
  const cplx bu = density(u, true);
  const cplx ct = density(t, false);
  cplx ratio;
  if (u == t) {
    // -f_x'(t) = Sum_m b_m c_m e^{-2 lambda_m x} / (t + lambda_m)^2
    const Eigen::MatrixXcd bc = sys.b * sys.c;
    ratio = 0.0;
    for (int m = 0; m < sys.order(); ++m) {
      const cplx den = (t + sys.lambdas[m]);
      ratio += bc(m, m) * std::exp(-2.0 * sys.lambdas[m] * x) / (den * den);
    }
  } else {
    ratio = (rx_squared_f(sys, x, u) - rx_squared_f(sys, x, t)) / (t - u);
  }
  return std::exp(-x * u) * bu * ratio * ct * std::exp(-x * t);
}

TauCurve tau_curve(const DiagonalRealization& sys,
                   const std::vector<double>& ts, bool with_sigma) {
  TauCurve curve;
  curve.ts = ts;
  curve.taus.resize(ts.size());
  if (with_sigma) curve.sigmas.resize(ts.size());
  numkit::parallel_for(static_cast<int>(ts.size()), [&](int i) {
    curve.taus[i] = tau_det(sys, ts[i]);
    if (with_sigma)
      curve.sigmas[i] = resolvent_kernel(sys, cplx(-1.0, 0.0), ts[i], ts[i]);
  });
  return curve;
}

cplx log_derivative(const TauCurve& curve, double t) {
  // locate a centered stencil among the samples
  const auto& ts = curve.ts;
  auto it = std::lower_bound(ts.begin(), ts.end(), t - 1e-12);
  if (it == ts.end() || std::abs(*it - t) > 1e-9)
    throw std::invalid_argument("log_derivative: t not on the sampled grid");
  const auto i = static_cast<std::size_t>(it - ts.begin());
  if (i == 0 || i + 1 >= ts.size())
    throw std::invalid_argument("log_derivative: no centered stencil at t");
  const double h = ts[i + 1] - ts[i - 1];
  return (std::log(curve.taus[i + 1]) - std::log(curve.taus[i - 1])) / h;
}

}  // namespace taulab::linsys
