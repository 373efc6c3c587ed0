#pragma once

#include "taulab/linsys.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace taulab::expsymbol {

using bigint = boost::multiprecision::cpp_int;

// phi(x) = Sum_j xi_j e^{-lambda_j x} with vector coefficients xi_j of a
// common channel dimension.
struct ExpSymbol {
  struct Term {
    cplx lambda;               // Re > 0
    Eigen::VectorXcd xi;       // channel_dim entries
  };
  std::vector<Term> terms;
  int channel_dim = 1;

  void validate() const;  // distinct lambdas, Re > 0, consistent channels
  [[nodiscard]] int size() const { return static_cast<int>(terms.size()); }
};

ExpSymbol make_scalar_symbol(const std::vector<cplx>& lambdas,
                             const std::vector<cplx>& xis);

// phi(x), fixed left-to-right summation order.
Eigen::VectorXcd eval(const ExpSymbol& sym, double x);

// Diagonal system with B = ones column, C[r][j] = xi_j^{(r)}, so that
// C e^{-xA} B reproduces eval exactly.  (Scalar symbols get B = xi,
// C = ones, the transfer-function normal form.)
linsys::DiagonalRealization to_realization(const ExpSymbol& sym);

// det(I - R_t); empty symbols give 1.
cplx tau_det(const ExpSymbol& sym, double t);

// Signed minor expansion of det(I - Hankel^dagger Hankel): sum over pairs of
// equal-cardinality subsets, S over terms and T over flattened
// (term,channel) pairs in row-major order, of
//   (-1)^l  det[ xi_j^(r) e^{-2 lambda_j t} / (lambda_j + conj lambda_k) ]
//         * det[ conj(xi_k^(r)) e^{-2 conj(lambda_k) t}
//                                / (lambda_m + conj lambda_k) ]
// with rows j,m in S and columns (k,r) in T.  For scalar symbols this is the
// squared-Cauchy-determinant form.  max_order caps l = #S = #T; pass the
// term count for the exact value.
cplx tau_squared_series(const ExpSymbol& sym, double t, int max_order);

// Difference-quotient replacement of polynomial-weighted terms: t^k e^{-lt}
// is rendered as k! (-Delta_eps)^k e^{-lt} / k!-normalized, i.e. the k+1
// exponentials eps^{-k} (-1)^i C(k,i) e^{-(l+i eps)t}.
struct PolyTerm {
  cplx lambda;
  int k = 0;          // polynomial degree: t^k e^{-lambda t}
  cplx coeff{1.0, 0.0};
};
ExpSymbol resolve_higher_poles(const std::vector<PolyTerm>& terms, double eps);

// ---- partitions -------------------------------------------------------------

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  [[nodiscard]] int weight() const;
  [[nodiscard]] int rank() const;  // Durfee length
  [[nodiscard]] std::vector<int> conjugate() const;
  // arm/leg coordinates a_i = parts[i]-1-i, b_i = conj[i]-1-i, i < rank
  [[nodiscard]] std::pair<std::vector<int>, std::vector<int>> frobenius() const;
  void validate() const;
};

// Number of standard Young tableaux, exact (hook length formula).
bigint dimension(const Partition& p);

// All partitions of n, newest-part-first lexicographic order.
std::vector<Partition> partitions_of(int n);

// ---- Gram data for exponential families --------------------------------------

struct GramBounds {
  double det = 0.0;      // det[1/(lambda_j + conj(lambda_k))]
  double min_eig = 0.0;
  double max_eig = 0.0;
};
GramBounds gram_bounds(const std::vector<cplx>& lambdas);

// Truncated bilateral sum  Sum_{|k| <= M} 1/|lambda_j + lambda_k|^2  for the
// progression lambda_k = (2 pi i k + beta)/(2K), plus an integral tail
// estimate; the closed form is K^2 Re(coth beta) / Re(beta), independent
// of j.
double bilateral_gram_sum(cplx beta, double K, int M);
double bilateral_gram_closed_form(cplx beta, double K);

}  // namespace taulab::expsymbol
