#include "taulab/hardedge.hpp"

#include "taulab/numkit.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace taulab::hardedge {

void BesselParams::validate() const {
  if (!(nu > -1.0)) throw std::invalid_argument("bessel: need nu > -1");
  if (truncation < 1)
    throw std::invalid_argument("bessel: need at least one term");
  if (weight_cap < 0)
    throw std::invalid_argument("bessel: weight cap must be >= 0");
}

double bessel_j(double nu, double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("bessel_j: need z >= 0");
  if (z == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * z;
  double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
  double acc = term;
  for (int m = 0; m < 500; ++m) {
    term *= -half * half / ((m + 1.0) * (nu + m + 1.0));
    const double next = acc + term;
    if (next == acc) break;
    acc = next;
  }
  return acc;
}

expsymbol::ExpSymbol bessel_symbol(const BesselParams& p) {
  p.validate();
  std::vector<cplx> lambdas(p.truncation), xis(p.truncation);
  double denom = std::tgamma(p.nu + 1.0);  // n! Gamma(nu+n+1) at n=0
  for (int n = 0; n < p.truncation; ++n) {
    lambdas[n] = cplx(0.5 * (2.0 * n + p.nu + 1.0), 0.0);
    xis[n] = cplx((n % 2 == 0 ? 1.0 : -1.0) / denom, 0.0);
    denom *= (n + 1.0) * (p.nu + n + 1.0);
  }
  return expsymbol::make_scalar_symbol(lambdas, xis);
}

double tau_partition_series(const BesselParams& p, double x, SignMode mode) {
  p.validate();
  double tau = 1.0;
  double fact = 1.0;  // n!
  for (int n = 1; n <= p.weight_cap; ++n) {
    fact *= n;
    double level = 0.0;
    for (const auto& part : expsymbol::partitions_of(n)) {
      const double d =
          expsymbol::dimension(part).convert_to<double>() / fact;
      const bool negative = (mode == SignMode::by_weight)
                                ? (n % 2 == 1)
                                : (part.parts.size() % 2 == 1);
      level += (negative ? -1.0 : 1.0) * d * d;
    }
    tau += level * std::exp(-2.0 * n * x);
  }
  return tau;
}

double hill_inner_sum(int j, int m, double c) {
  if (j < 0 || m < 0 || !(j + c > 0.0) || !(m + c > 0.0))
    throw std::invalid_argument("hill_inner_sum: indices must sit right of the poles");
  if (j == m) return boost::math::trigamma(j + c);
  return (boost::math::digamma(j + c) - boost::math::digamma(m + c)) /
         static_cast<double>(j - m);
}

namespace {

// diagonal weights xi_k e^{-2 lambda_k x}, extended far enough that the
// factorially decaying tail is below machine precision
std::vector<double> hill_weights(const BesselParams& p, double x, int count) {
  std::vector<double> w(count);
  double denom = std::tgamma(p.nu + 1.0);
  for (int k = 0; k < count; ++k) {
    const double lam = 0.5 * (2.0 * k + p.nu + 1.0);
    w[k] = ((k % 2 == 0 ? 1.0 : -1.0) / denom) * std::exp(-2.0 * lam * x);
    denom *= (k + 1.0) * (p.nu + k + 1.0);
  }
  return w;
}

}  // namespace

Eigen::MatrixXd hill_matrix(const BesselParams& p, double x, int n) {
  p.validate();
  if (n < 1) throw std::invalid_argument("hill_matrix: need n >= 1");
  const int kmax = n + 50;
  const auto w = hill_weights(p, x, kmax);
  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      double acc = 0.0;
      for (int k = 0; k < kmax; ++k) {
        const double t =
            w[k] / ((j + k + p.nu + 1.0) * (k + m + p.nu + 1.0));
        const double next = acc + t;
        if (k > 8 && next == acc) break;
        acc = next;
      }
      M(j, m) = w[j] * acc;
    }
  }
  return M;
}

double hill_det(const BesselParams& p, double x, int n) {
  const Eigen::MatrixXd M = hill_matrix(p, x, n);
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - M;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(A).determinant();
}

double hill_det_unweighted(const BesselParams& p, double x, int n) {
  p.validate();
  if (n < 1) throw std::invalid_argument("hill_det_unweighted: need n >= 1");
  const auto w = hill_weights(p, x, n);
  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      M(j, m) = w[j] * w[m] * hill_inner_sum(j, m, p.nu + 1.0);
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - M;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(A).determinant();
}

double tau_quadrature(const BesselParams& p, double x) {
  const auto sym = bessel_symbol(p);
  auto K = [&sym, x](double s, double y) -> cplx {
    cplx acc = 0.0;
    for (const auto& a : sym.terms)
      for (const auto& b : sym.terms)
        acc += a.xi[0] * b.xi[0] *
               std::exp(-a.lambda * s - b.lambda * y -
                        (a.lambda + b.lambda) * x) /
               (a.lambda + b.lambda);
    return acc;
  };
  const cplx det = numkit::fredholm_det(K, x, p.nu + 1.0, cplx(-1.0));
  return det.real();
}

}  // namespace taulab::hardedge
