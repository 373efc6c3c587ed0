#include "taulab/lame.hpp"

#include "taulab/numkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace taulab::lame {

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 40; ++i) {
    if (std::abs(a - b) <= 1e-15 * std::abs(a)) break;
    const double an = (a + b) / 2.0;
    b = std::sqrt(a * b);
    a = an;
  }
  return (a + b) / 2.0;
}

struct RealTriple {
  double sn, cn, dn;
};

// Descending Landen transformation: fold the modulus down the AGM chain,
// evaluate the circular limit, then unfold the amplitude.
RealTriple jacobi_real(double u, double k) {
  if (k < 1e-12) return {std::sin(u), std::cos(u), 1.0};
  std::vector<double> a{1.0}, c{k};
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  int n = 0;
  while (std::abs(c[n]) > 1e-17 * a[n]) {
    a.push_back((a[n] + b) / 2.0);
    c.push_back((a[n] - b) / 2.0);
    b = std::sqrt(a[n] * b);
    ++n;
    if (n > 60) break;
  }
  double phi = std::ldexp(a[n], n) * u;
  for (int i = n; i >= 1; --i) {
    const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = (phi + std::asin(s)) / 2.0;
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(std::max(0.0, 1.0 - (k * sn) * (k * sn)));
  return {sn, cn, dn};
}

void require_params(const EllipticParams& p) {
  if (!(p.K > 0.0) || !(p.Kp > 0.0) || !(p.k > 0.0) || !(p.k < 1.0))
    throw std::invalid_argument(
        "elliptic params not initialized (use make_elliptic)");
}

// Shared state for repeated zeta/sigma work: Laurent coefficients of the
// p-function and the half-period values eta1 = zeta(K), eta2 = zeta(iK').
class Engine {
 public:
  explicit Engine(const EllipticParams& p) : p_(p) {
    require_params(p);
    cser_[2] = p_.g2 / 20.0;
    cser_[3] = p_.g3 / 28.0;
    for (int kk = 4; kk <= kOrder; ++kk) {
      double s = 0.0;
      for (int m = 2; m <= kk - 2; ++m) s += cser_[m] * cser_[kk - m];
      cser_[kk] = 3.0 * s / ((2.0 * kk + 1.0) * (kk - 3.0));
    }
    eta1_ = zeta_sigma_cell(cplx(p_.K, 0.0)).first;
    eta2_ = zeta_sigma_cell(cplx(0.0, p_.Kp)).first;
  }

  [[nodiscard]] std::pair<cplx, cplx> zeta_sigma(cplx z) const {
    const double m = std::round(z.real() / (2.0 * p_.K));
    const double n = std::round(z.imag() / (2.0 * p_.Kp));
    const cplx zr = z - 2.0 * p_.K * m - cplx(0.0, 2.0 * p_.Kp * n);
    if (std::abs(zr) < 1e-12)
      throw std::domain_error("weierstrass zeta/sigma: lattice point");
    auto [zt, st] = zeta_sigma_cell(zr);
    if (m != 0.0 || n != 0.0) {
      const cplx shift = 2.0 * m * eta1_ + 2.0 * n * eta2_;
      const long mi = std::lround(m), ni = std::lround(n);
      const double sign = ((mi + ni + mi * ni) % 2 != 0) ? -1.0 : 1.0;
      zt += shift;
      st *= sign * std::exp(shift * (zr + m * p_.K + cplx(0.0, n * p_.Kp)));
    }
    return {zt, st};
  }

  [[nodiscard]] cplx zeta(cplx z) const { return zeta_sigma(z).first; }
  [[nodiscard]] cplx eta1() const { return eta1_; }
  [[nodiscard]] cplx eta2() const { return eta2_; }

 private:
  static constexpr int kOrder = 24;

  // Laurent series about the origin, valid well inside the cell.
  [[nodiscard]] std::pair<cplx, cplx> zeta_sigma_small(cplx z) const {
    cplx zt = 0.0, st = 0.0;
    const cplx z2 = z * z;
    cplx zpow = z * z2;
    for (int kk = 2; kk <= kOrder; ++kk) {
      if (kk > 2) zpow *= z2;
      zt += cser_[kk] * zpow / (2.0 * kk - 1.0);
      st += cser_[kk] * zpow * z / (2.0 * kk * (2.0 * kk - 1.0));
    }
    return {1.0 / z - zt, z * std::exp(-st)};
  }

  // Halve the argument into the series' radius, then unwind with the
  // duplication formulas zeta(2w) = 2 zeta(w) + p''/(2p') and
  // sigma(2w) = -sigma(w)^4 p'(w).
  [[nodiscard]] std::pair<cplx, cplx> zeta_sigma_cell(cplx z) const {
    int nh = 0;
    cplx w = z;
    const double rmin = std::min(2.0 * p_.K, 2.0 * p_.Kp);
    while (std::abs(w) > 0.35 * rmin) {
      w *= 0.5;
      ++nh;
    }
    auto [zt, st] = zeta_sigma_small(w);
    for (int i = 0; i < nh; ++i) {
      const auto [pw, ppw] = weierstrass_p(w, p_);
      const cplx ppp = 6.0 * pw * pw - p_.g2 / 2.0;
      zt = 2.0 * zt + ppp / (2.0 * ppw);
      st = -(st * st) * (st * st) * ppw;
      w *= 2.0;
    }
    return {zt, st};
  }

  EllipticParams p_;
  std::array<double, kOrder + 1> cser_{};
  cplx eta1_{0.0}, eta2_{0.0};
};

// Psi with the alpha-dependent factors evaluated once.
struct PsiEval {
  Engine eng;
  cplx alpha, za, sa;

  explicit PsiEval(const LameSymbol& sym)
      : eng(sym.params), alpha(sym.alpha) {
    std::tie(za, sa) = eng.zeta_sigma(alpha);
  }

  [[nodiscard]] cplx operator()(cplx x) const {
    return -eng.zeta_sigma(x - alpha).second * std::exp(za * x) /
           (sa * eng.zeta_sigma(x).second);
  }
};

expsymbol::ExpSymbol expansion_terms(const LameSymbol& sym, int truncation,
                                     const numkit::QuadGrid& grid,
                                     const std::vector<cplx>& psi_vals) {
  const double twoK = 2.0 * sym.params.K;
  const auto laplace = [&](cplx s) {
    cplx acc = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      acc += grid.weights[i] * std::exp(-s * grid.nodes[i]) * psi_vals[i];
    return acc;
  };
  std::vector<cplx> lambdas, xis;
  lambdas.reserve(2 * truncation + 1);
  xis.reserve(2 * truncation + 1);
  for (int m = -truncation; m <= truncation; ++m) {
    const cplx lam = (cplx(0.0, 2.0 * M_PI * m) + sym.beta) / twoK;
    lambdas.push_back(lam);
    xis.push_back(laplace(-lam) / twoK);
  }
  return expsymbol::make_scalar_symbol(lambdas, xis);
}

}  // namespace

std::pair<double, double> elliptic_K(double k) {
  if (!(k > 0.0) || !(k < 1.0))
    throw std::invalid_argument("elliptic_K: modulus must lie in (0,1)");
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  return {M_PI / (2.0 * agm(1.0, kp)), M_PI / (2.0 * agm(1.0, k))};
}

EllipticParams make_elliptic(double k) {
  EllipticParams p;
  std::tie(p.K, p.Kp) = elliptic_K(k);
  p.k = k;
  const double ksq = k * k;
  p.e1 = (2.0 - ksq) / 3.0;
  p.e2 = (2.0 * ksq - 1.0) / 3.0;
  p.e3 = -(1.0 + ksq) / 3.0;
  p.g2 = 4.0 * (ksq * ksq - ksq + 1.0) / 3.0;
  p.g3 = 4.0 * (ksq - 2.0) * (2.0 * ksq - 1.0) * (ksq + 1.0) / 27.0;
  return p;
}

JacobiTriple jacobi_sn(cplx z, double k) {
  if (!(k >= 0.0) || !(k < 1.0))
    throw std::invalid_argument("jacobi_sn: modulus must lie in [0,1)");
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  const auto [s, c, d] = jacobi_real(z.real(), k);
  const auto [s1, c1, d1] = jacobi_real(z.imag(), kp);
  const double den = c1 * c1 + (k * s * s1) * (k * s * s1);
  if (den < 1e-13)
    throw std::domain_error("jacobi_sn: argument too close to a pole");
  const cplx sn(s * d1 / den, c * d * s1 * c1 / den);
  const cplx cn(c * c1 / den, -s * d * s1 * d1 / den);
  const cplx dn(d * c1 * d1 / den, -k * k * s * c * s1 / den);
  return {sn, cn, dn};
}

std::pair<cplx, cplx> weierstrass_p(cplx z, const EllipticParams& p) {
  require_params(p);
  const double m = std::round(z.real() / (2.0 * p.K));
  const double n = std::round(z.imag() / (2.0 * p.Kp));
  const cplx zr = z - 2.0 * p.K * m - cplx(0.0, 2.0 * p.Kp * n);
  if (std::abs(zr) < 1e-12)
    throw std::domain_error("weierstrass_p: lattice point");
  const JacobiTriple j = jacobi_sn(zr, p.k);
  const cplx s2 = j.sn * j.sn;
  return {p.e3 + 1.0 / s2, -2.0 * j.cn * j.dn / (s2 * j.sn)};
}

std::pair<cplx, cplx> weierstrass_zeta_sigma(cplx z, const EllipticParams& p) {
  return Engine(p).zeta_sigma(z);
}

cplx beta_exponent(const EllipticParams& p, cplx alpha) {
  const Engine eng(p);
  const cplx beta = -2.0 * p.K * eng.zeta(alpha) + 2.0 * alpha * eng.eta1();
  if (!(beta.real() > 0.0))
    throw std::domain_error(
        "beta_exponent: symbol does not decay (Re beta <= 0)");
  return beta;
}

LameSymbol make_symbol(const EllipticParams& p, cplx alpha, cplx t0,
                       int fourier_truncation) {
  if (fourier_truncation < 1)
    throw std::invalid_argument("make_symbol: truncation must be positive");
  LameSymbol sym;
  sym.params = p;
  sym.alpha = alpha;
  sym.t0 = t0;
  sym.beta = beta_exponent(p, alpha);
  sym.fourier_truncation = fourier_truncation;
  // Poles of Psi(x + 2 t0) for x >= 0 sit where x + 2 t0 meets the lattice;
  // the flow in x is real, so only the height Im(2 t0) decides.
  const double rel = t0.imag() / p.Kp;
  const double dist = std::abs(rel - std::round(rel)) * p.Kp;
  if (dist < 1e-6 * p.Kp)
    throw std::invalid_argument(
        "make_symbol: sampling segment passes through symbol poles "
        "(shift t0 off the real axis)");
  return sym;
}

cplx lame_psi(cplx x, const LameSymbol& sym) { return PsiEval(sym)(x); }

expsymbol::ExpSymbol exp_expansion(const LameSymbol& sym, int truncation) {
  if (truncation < 1)
    throw std::invalid_argument("exp_expansion: truncation must be positive");
  const PsiEval psi(sym);
  const numkit::QuadGrid grid =
      numkit::composite_rule(0.0, 2.0 * sym.params.K, 8, 32, false);
  std::vector<cplx> vals(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    vals[i] = psi(cplx(grid.nodes[i], 0.0) + 2.0 * sym.t0);
  return expansion_terms(sym, truncation, grid, vals);
}

LameTau tau_lame(const LameSymbol& sym, const std::vector<double>& ts) {
  if (ts.empty()) throw std::invalid_argument("tau_lame: empty t grid");
  const PsiEval psi(sym);
  const numkit::QuadGrid grid =
      numkit::composite_rule(0.0, 2.0 * sym.params.K, 8, 32, false);
  std::vector<cplx> vals(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    vals[i] = psi(cplx(grid.nodes[i], 0.0) + 2.0 * sym.t0);

  const auto curve_at = [&](int m) {
    const auto series = expansion_terms(sym, m, grid, vals);
    return linsys::tau_curve(expsymbol::to_realization(series), ts, true);
  };

  constexpr int kMaxTruncation = 512;
  int m = std::max(sym.fourier_truncation, 4);
  linsys::TauCurve curve = curve_at(m);
  while (m < kMaxTruncation) {
    const int m2 = std::min(2 * m, kMaxTruncation);
    linsys::TauCurve refined = curve_at(m2);
    double dev = 0.0;
    for (std::size_t i = 0; i < curve.taus.size(); ++i)
      dev = std::max(dev, std::abs(refined.taus[i] - curve.taus[i]));
    curve = std::move(refined);
    m = m2;
    if (dev < 1e-9) break;
  }
  return {std::move(curve), m};
}

}  // namespace taulab::lame
