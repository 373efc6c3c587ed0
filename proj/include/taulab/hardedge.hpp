#pragma once

#include "taulab/expsymbol.hpp"

#include <Eigen/Dense>

namespace taulab::hardedge {

struct BesselParams {
  double nu = 0.0;     // order, > -1
  int truncation = 30; // number of exponential terms kept in the symbol
  int weight_cap = 10; // partition-series weight cutoff

  void validate() const;
};

// Ascending series for J_nu(z), summed to machine plateau.  Intended for the
// z = 2 e^{-x/2} <= 2 range where the series converges in a handful of terms.
double bessel_j(double nu, double z);

// Exponential expansion of the hard-edge symbol: term n has
// lambda_n = (2n + nu + 1)/2 and xi_n = (-1)^n / (n! Gamma(nu+n+1)).
expsymbol::ExpSymbol bessel_symbol(const BesselParams& p);

// Sign conventions for the partition series.  by_weight ((-1)^{|lambda|}) is
// the convention the determinant oracle validates; by_length
// ((-1)^{#parts}) is kept so its deviation can be reported.
enum class SignMode { by_weight, by_length };

// Partition series
//   tau(x) = Sum_lambda sign(lambda) (dim S_lambda / |lambda|!)^2
//            e^{-2 |lambda| x}
// truncated at |lambda| <= weight_cap.
double tau_partition_series(const BesselParams& p, double x,
                            SignMode mode = SignMode::by_weight);

// Closed form of the unweighted inner sum
//   Sum_{k>=0} 1/((j+k+c)(m+k+c)) = (psi(j+c) - psi(m+c))/(j - m),
// trigamma on the diagonal.
double hill_inner_sum(int j, int m, double c);

// n x n section of the Hill-type matrix representing the squared Hankel
// operator on the exponential basis: (D G)^2 with D = diag(xi_j e^{-2
// lambda_j x}) and G = [1/(j+m+nu+1)]; the inner index is summed to machine
// plateau.  det(I - hill_matrix) -> tau(x) as n grows.
Eigen::MatrixXd hill_matrix(const BesselParams& p, double x, int n);

// det(I - hill_matrix(p, x, n)).
double hill_det(const BesselParams& p, double x, int n);

// Variant with the column weight pulled out of the inner sum, i.e. entries
// xi_j xi_m e^{-2(lambda_j+lambda_m)x} * hill_inner_sum(j, m, nu+1).  Its
// determinant converges as n grows but NOT to tau; exposed so the deviation
// can be measured rather than silently corrected.
double hill_det_unweighted(const BesselParams& p, double x, int n);

// Quadrature route: Fredholm determinant of the squared Hankel kernel on
// (x, inf), discretized by numkit.
double tau_quadrature(const BesselParams& p, double x);

}  // namespace taulab::hardedge
