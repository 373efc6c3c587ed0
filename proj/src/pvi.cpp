#include "taulab/pvi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace taulab::pvi {

namespace {

const Mat2 kJ = (Mat2() << 0.0, -1.0, 1.0, 0.0).finished();

Mat2 residue(double z, double theta, double u) {
  Mat2 W;
  W << z + theta / 2.0, -u * z, (z + theta) / u, -z - theta / 2.0;
  return W;
}

// J W is symmetric with non-positive determinant -theta^2/4, so it splits as
// V^T diag(1,-1) V with rows scaled by the square roots of the eigenvalues.
Mat2 signature_factor(const Mat2& W) {
  Mat2 sym = kJ * W;
  sym = 0.5 * (sym + sym.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat2> es(sym);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(1);
  Mat2 V;
  V.row(0) = std::sqrt(std::max(hi, 0.0)) * es.eigenvectors().col(1).transpose();
  V.row(1) = std::sqrt(std::max(-lo, 0.0)) * es.eigenvectors().col(0).transpose();
  return V;
}

CMat2 omega_at(const Mat2& W0, const Mat2& W1, const Mat2& Wt, double t,
               cplx x) {
  return W0.cast<cplx>() / x + W1.cast<cplx>() / (x - 1.0) +
         Wt.cast<cplx>() / (x - t);
}

double max_abs(const Mat2& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace

double PviParams::theta_inf() const {
  return -2.0 * (z0 + z1 + zt) - (theta0 + theta1 + thetat);
}

void PviParams::validate() const {
  if (u0 == 0.0 || u1 == 0.0 || ut == 0.0)
    throw std::invalid_argument("PviParams: u coefficients must be nonzero");
  if (std::abs(t) < 1e-12 || std::abs(t - 1.0) < 1e-12)
    throw std::invalid_argument("PviParams: t must avoid 0 and 1");
  const double ti = std::abs(theta_inf());
  const double nearest = std::round(ti);
  if (nearest >= 1.0 && std::abs(ti - nearest) < 1e-9)
    throw std::invalid_argument(
        "PviParams: theta_inf = " + std::to_string(theta_inf()) +
        " is a resonant integer");
}

PviParams consistent_params(double theta0, double theta1, double thetat,
                            double theta_inf, double t, double z0, double z1,
                            double u0) {
  const double zsum = (-theta_inf - (theta0 + theta1 + thetat)) / 2.0;
  const double zt = zsum - z0 - z1;
  if (zt == 0.0)
    throw std::domain_error("consistent_params: zt degenerates to zero");
  // Eliminate ut = -(u0 z0 + u1 z1)/zt from the second moment constraint;
  // what remains is a quadratic in u1.
  const double a0 = (z0 + theta0) / u0;
  const double qa = a0 * z1;
  const double qb = a0 * u0 * z0 + (z1 + theta1) * z1 - (zt + thetat) * zt;
  const double qc = (z1 + theta1) * u0 * z0;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0 || qa == 0.0)
    throw std::domain_error("consistent_params: no real branch for u1");
  PviParams p;
  p.theta0 = theta0;
  p.theta1 = theta1;
  p.thetat = thetat;
  p.z0 = z0;
  p.z1 = z1;
  p.zt = zt;
  p.u0 = u0;
  p.u1 = (-qb + std::sqrt(disc)) / (2.0 * qa);
  p.ut = -(u0 * z0 + p.u1 * z1) / zt;
  p.t = t;
  p.validate();
  return p;
}

WSystem build_w(const PviParams& p) {
  WSystem w;
  w.W0 = residue(p.z0, p.theta0, p.u0);
  w.W1 = residue(p.z1, p.theta1, p.u1);
  w.Wt = residue(p.zt, p.thetat, p.ut);
  w.W_inf = -(w.W0 + w.W1 + w.Wt);
  w.V0 = signature_factor(w.W0);
  w.V1 = signature_factor(w.W1);
  w.Vt = signature_factor(w.Wt);
  return w;
}

Mat2 sylvester_solve(const Mat2& W, int n, const Mat2& D) {
  Eigen::EigenSolver<Mat2> es(W);
  const double scale = std::max(1.0, std::abs(static_cast<double>(n)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cplx gap = es.eigenvalues()(i) - es.eigenvalues()(j) -
                       static_cast<double>(n);
      if (std::abs(gap) < 1e-10 * scale)
        throw std::runtime_error("sylvester_solve: resonant index " +
                                 std::to_string(n));
    }
  // vec(WC - C(W+nI)) = (I (x) W - (W+nI)^T (x) I) vec(C), column-major.
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  const Mat2 shifted = W + static_cast<double>(n) * Mat2::Identity();
  for (int col = 0; col < 2; ++col) {
    M.block<2, 2>(2 * col, 2 * col) += W;
    for (int row = 0; row < 2; ++row)
      M.block<2, 2>(2 * col, 2 * row) -=
          shifted(row, col) * Mat2::Identity();
  }
  const Eigen::Vector4d rhs(D(0, 0), D(1, 0), D(0, 1), D(1, 1));
  const Eigen::Vector4d c = M.partialPivLu().solve(rhs);
  Mat2 C;
  C << c(0), c(2), c(1), c(3);
  return C;
}

LaurentSeries laurent_series(const PviParams& p, int order) {
  p.validate();
  const WSystem w = build_w(p);
  LaurentSeries s;
  s.W_inf = w.W_inf;
  s.t = p.t;
  s.theta_inf = p.theta_inf();
  s.C.assign(1, Mat2::Identity());
  s.C.reserve(static_cast<std::size_t>(order) + 1);

  Mat2 sum_plain = Mat2::Zero();  // C_0 + ... + C_{n-1}
  Mat2 sum_t = Mat2::Zero();      // t^n C_0 + ... + t C_{n-1}
  s.growth = 0.0;
  for (int n = 1; n <= order; ++n) {
    sum_plain += s.C.back();
    sum_t = p.t * (sum_t + s.C.back());
    const Mat2 rhs = w.W1 * sum_plain + w.Wt * sum_t;
    s.C.push_back(sylvester_solve(w.W_inf, n, rhs));
    const double norm = max_abs(s.C.back());
    if (norm > 0.0)
      s.growth = std::max(s.growth, std::pow(norm, 1.0 / n));
  }
  // Divergence-radius estimate from the tail of the coefficient sequence;
  // early coefficients routinely overshoot the limiting ratio.
  s.radius_est = 0.0;
  for (int n = std::max(1, order / 2); n <= order; ++n) {
    const double norm = max_abs(s.C[static_cast<std::size_t>(n)]);
    if (norm > 0.0)
      s.radius_est = std::max(s.radius_est, std::pow(norm, 1.0 / n));
  }

  Eigen::EigenSolver<Mat2> es(s.W_inf);
  const int which =
      std::abs(es.eigenvalues()(0).real() - s.theta_inf / 2.0) <=
              std::abs(es.eigenvalues()(1).real() - s.theta_inf / 2.0)
          ? 0
          : 1;
  s.phi0 = es.eigenvectors().col(which).real().normalized();
  // Fix the eigenvector sign: dominant component positive.
  const int dom = std::abs(s.phi0(1)) > std::abs(s.phi0(0)) ? 1 : 0;
  if (s.phi0(dom) < 0.0) s.phi0 = -s.phi0;
  return s;
}

CMat2 principal_power(const Mat2& W, cplx x) {
  const cplx lx = std::log(x);
  Eigen::EigenSolver<Mat2> es(W);
  const cplx l0 = es.eigenvalues()(0);
  const cplx l1 = es.eigenvalues()(1);
  if (std::abs(l0 - l1) > 1e-8) {
    CMat2 P = es.eigenvectors();
    CVec2 d;
    d << std::exp(-l0 * lx), std::exp(-l1 * lx);
    return P * d.asDiagonal() * P.inverse();
  }
  // Nearly defective: scaling-and-squaring of exp(-W log x).
  CMat2 A = -lx * W.cast<cplx>();
  int squarings = 0;
  double norm = A.cwiseAbs().maxCoeff();
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  A /= std::pow(2.0, squarings);
  CMat2 E = CMat2::Identity();
  CMat2 term = CMat2::Identity();
  for (int k = 1; k <= 24; ++k) {
    term = (term * A / static_cast<double>(k)).eval();
    E += term;
  }
  for (int i = 0; i < squarings; ++i) E = (E * E).eval();
  return E;
}

CVec2 phi_eval(const LaurentSeries& s, cplx x, const Eigen::Vector2d& phi0) {
  if (s.radius_est > 0.0 && std::abs(x) <= s.radius_est)
    throw std::domain_error("phi_eval: |x| inside the divergence radius");
  const CVec2 v = principal_power(s.W_inf, x) * phi0.cast<cplx>();
  CVec2 acc = v;
  const cplx xi = 1.0 / x;
  cplx pw = 1.0;
  for (std::size_t n = 1; n < s.C.size(); ++n) {
    pw *= xi;
    acc += pw * (s.C[n].cast<cplx>() * v);
  }
  return acc;
}

CVec2 phi_eval(const LaurentSeries& s, cplx x) {
  return phi_eval(s, x, s.phi0);
}

double schlesinger_residual(const PviParams& p,
                            const std::vector<cplx>& samples) {
  const WSystem w = build_w(p);
  const double t = p.t;
  auto comm = [](const Mat2& A, const Mat2& B) -> Mat2 { return A * B - B * A; };
  const Mat2 dW0 = comm(w.Wt, w.W0) / t;
  const Mat2 dW1 = comm(w.Wt, w.W1) / (t - 1.0);
  const Mat2 dWt = -dW0 - dW1;
  double worst = 0.0;
  for (const cplx& x : samples) {
    const cplx pole = x - t;
    const CMat2 dOmega = dW0.cast<cplx>() / x + dW1.cast<cplx>() / (x - 1.0) +
                         dWt.cast<cplx>() / pole +
                         w.Wt.cast<cplx>() / (pole * pole);
    const CMat2 B = -w.Wt.cast<cplx>() / pole;
    const CMat2 dB_dx = w.Wt.cast<cplx>() / (pole * pole);
    const CMat2 Om = omega_at(w.W0, w.W1, w.Wt, t, x);
    const CMat2 res = dOmega - dB_dx + (Om * B - B * Om);
    worst = std::max(worst, res.cwiseAbs().maxCoeff());
  }
  return worst;
}

cplx kernel_k(const LaurentSeries& s, cplx lam, cplx mu) {
  if (std::abs(lam - mu) < 1e-12) {
    // Confluent limit <J Phi'(lam), Phi(lam)>; the numerator of the generic
    // form vanishes identically on the diagonal (J is skew, Phi real there).
    const double h = 1e-30;
    const CVec2 bumped = phi_eval(s, lam + cplx(0.0, h));
    const Eigen::Vector2d dphi = bumped.imag() / h;
    const Eigen::Vector2d base = phi_eval(s, lam).real();
    return (kJ * dphi).dot(base);
  }
  const CVec2 a = phi_eval(s, lam);
  const CVec2 b = phi_eval(s, mu);
  // Bilinear (unconjugated) pairing.
  return (kJ.cast<cplx>() * a).cwiseProduct(b).sum() / (lam - mu);
}

Vec6c stacked_phi(const WSystem& w, const LaurentSeries& s, cplx lam) {
  const CVec2 u = phi_eval(s, lam);
  Vec6c out;
  out.segment<2>(0) = (w.V0.cast<cplx>() * u) / lam;
  out.segment<2>(2) = (w.V1.cast<cplx>() * u) / (lam - 1.0);
  out.segment<2>(4) = (w.Vt.cast<cplx>() * u) / (lam - s.t);
  return out;
}

cplx kernel_factored(const WSystem& w, const LaurentSeries& s, cplx lam,
                     cplx mu, double cutoff, int panels, int nodes) {
  Vec6c sig;
  sig << 1.0, -1.0, 1.0, -1.0, 1.0, -1.0;
  auto integrand = [&](double sv) -> cplx {
    const Vec6c a = stacked_phi(w, s, lam + sv);
    const Vec6c b = stacked_phi(w, s, mu + sv);
    return (sig.array() * a.array() * b.array()).sum();
  };
  // Geometric panel edges 0, 0.05, ..., cutoff pack points near the origin
  // where the integrand varies fastest.
  std::vector<double> edges{0.0};
  const double first = 0.05;
  for (int i = 0; i < panels; ++i)
    edges.push_back(first *
                    std::pow(cutoff / first,
                             static_cast<double>(i) / (panels - 1)));
  cplx total = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const auto grid = numkit::gauss_legendre(nodes, edges[e], edges[e + 1]);
    for (int q = 0; q < grid.size(); ++q)
      total += grid.weights[static_cast<std::size_t>(q)] *
               integrand(grid.nodes[static_cast<std::size_t>(q)]);
  }
  // Power-law tail: the integrand decays like s^{-(theta_inf+2)}.
  total += integrand(cutoff) * cutoff / (s.theta_inf + 1.0);
  return total;
}

cplx kernel_dt(const WSystem& w, const LaurentSeries& s, cplx lam, cplx mu) {
  const CVec2 a = phi_eval(s, lam);
  const CVec2 b = phi_eval(s, mu);
  const CVec2 ja = (kJ * w.Wt).cast<cplx>() * a;
  return -ja.cwiseProduct(b).sum() / ((lam - s.t) * (mu - s.t));
}

}  // namespace taulab::pvi
