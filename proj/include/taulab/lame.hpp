#pragma once

#include "taulab/expsymbol.hpp"
#include "taulab/linsys.hpp"

#include <utility>
#include <vector>

namespace taulab::lame {

// Modulus-derived constants: branch points e1 >= e2 >= e3 summing to zero,
// lattice invariants g2, g3, and the quarter periods K, K'.
struct EllipticParams {
  double k = 0.0;
  double K = 0.0, Kp = 0.0;
  double e1 = 0.0, e2 = 0.0, e3 = 0.0;
  double g2 = 0.0, g3 = 0.0;
};

// Complete elliptic integrals (K, K') by the arithmetic-geometric mean.
// Throws std::invalid_argument for k outside (0,1).
std::pair<double, double> elliptic_K(double k);

EllipticParams make_elliptic(double k);

struct JacobiTriple {
  cplx sn, cn, dn;
};

// Jacobi functions for complex argument: AGM descent on the real and
// imaginary parts, combined by the addition rules.  Throws
// std::domain_error when z is too close to a pole (the shared denominator
// degenerates).
JacobiTriple jacobi_sn(cplx z, double k);

// Weierstrass pair (p, p') on the lattice {2Km + 2iK'n} via the closed form
// p = e3 + 1/sn^2.  Throws std::domain_error on lattice points.
std::pair<cplx, cplx> weierstrass_p(cplx z, const EllipticParams& p);

// (zeta, sigma): argument reduced to the fundamental cell, Laurent series
// at small argument, argument-halving plus the duplication formulas in
// between, and the quasi-period functional equations for the reduction.
// Throws std::domain_error on lattice points (zeta has poles there and
// sigma the corresponding zeros).
std::pair<cplx, cplx> weierstrass_zeta_sigma(cplx z, const EllipticParams& p);

// Decay exponent beta = -2K zeta(alpha) + alpha (zeta(alpha+2K) -
// zeta(alpha)); the translation factor over one real period is e^{-beta}.
// Throws std::domain_error for non-decaying symbols (Re beta <= 0).
cplx beta_exponent(const EllipticParams& p, cplx alpha);

// Spectral data of the l=1 symbol.  The base shift t0 moves the sampling
// segment [2t0, 2t0 + 2K] off the real pole line; the time flow itself
// stays real on top of it.
struct LameSymbol {
  EllipticParams params;
  cplx alpha;
  cplx t0;
  cplx beta;
  int fourier_truncation = 24;
};

// Computes beta (so non-decaying alpha throws std::domain_error) and
// requires the shifted segment to keep clear of the pole lattice (throws
// std::invalid_argument otherwise).
LameSymbol make_symbol(const EllipticParams& p, cplx alpha, cplx t0,
                       int fourier_truncation = 24);

// Psi(x; alpha) = -sigma(x - alpha) e^{zeta(alpha) x} / (sigma(alpha)
// sigma(x)).  Poles exactly on the lattice of x.
cplx lame_psi(cplx x, const LameSymbol& sym);

// Bilateral exponential expansion of Psi(x + 2 t0): terms
//   lambda_m = (2 pi i m + beta)/(2K),   xi_m = h(-lambda_m)/(2K)
// for |m| <= M, with h(s) the Laplace transform of Psi over one period,
// evaluated on one shared Gauss-Legendre panelization.
expsymbol::ExpSymbol exp_expansion(const LameSymbol& sym, int truncation);
inline expsymbol::ExpSymbol exp_expansion(const LameSymbol& sym) {
  return exp_expansion(sym, sym.fourier_truncation);
}

// tau(t) = det(I - R_t) over the bilateral expansion, with the truncation
// doubled (starting from sym.fourier_truncation) until the whole curve
// moves by less than 1e-9; `truncation` records the accepted M.
struct LameTau {
  linsys::TauCurve curve;
  int truncation = 0;
};
LameTau tau_lame(const LameSymbol& sym, const std::vector<double>& ts);

}  // namespace taulab::lame
