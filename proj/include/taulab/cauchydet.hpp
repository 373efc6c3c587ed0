#pragma once

#include "taulab/numkit.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace taulab::cauchydet {

// Arithmetic progression lambda_j = (2 pi i j + beta)/(2K), j = 0..N-1.
struct ProgressionSpec {
  cplx beta{1.0, 0.0};  // Re beta > 0
  double K = 1.0;       // > 0
  int N = 1;

  void validate() const;
  [[nodiscard]] Eigen::VectorXcd lambdas() const;
};

// det[1/(lambda_j + conj lambda_k)], real and positive for distinct lambdas
// in the right half plane.  Product formula up to N = 64, LU above.
double cauchy_det(const Eigen::VectorXcd& lambdas);

// log of the product-formula value; safe where the raw products overflow.
double cauchy_det_log(const Eigen::VectorXcd& lambdas);

// Independent LU evaluation of the same determinant (cross-check route).
double cauchy_det_lu(const Eigen::VectorXcd& lambdas);

// Toeplitz section a_{j-k} with a_m = 2K/(2 Re beta + 2 pi i m), together
// with the generating symbol f(u) = 2K e^{-2 Re beta u}/(1 - e^{-2 Re beta})
// on (0,1) whose Fourier coefficients the a_m are.
struct ToeplitzForm {
  double K = 1.0;
  double re_beta = 1.0;
  Eigen::MatrixXcd matrix;
  double det = 1.0;

  [[nodiscard]] cplx a(int m) const;
  [[nodiscard]] double symbol(double u) const;
};

ToeplitzForm toeplitz_form(const ProgressionSpec& spec);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

// Monte Carlo average of (2K/(1-e^{-2 Re beta}))^N exp(-(Re beta/pi) Sum
// theta_j) over Haar unitaries, theta_j the eigenvalue arguments in (0, 2pi).
// Unitaries come from QR of complex Gaussian matrices with the R-diagonal
// phase correction; streams are split per sample off the seed, so the result
// is reproducible and independent of the thread count.
McEstimate haar_mc(const ProgressionSpec& spec, int samples,
                   std::uint64_t seed);

struct GrowthReport {
  std::vector<int> Ns;
  std::vector<double> roots;  // D_N^{1/N}
  std::vector<double> gaps;   // |log D_N^{1/N} - log limit|
  double limit = 0.0;         // K / sinh(Re beta)
  double fitted_C = 0.0;      // envelope of gap * N^{1/3}
  bool monotone = false;      // gaps strictly decreasing along Ns
};

// Tabulates D_N^{1/N} for the progression across the given N values and
// measures convergence toward K/sinh(Re beta).
GrowthReport growth_check(cplx beta, double K, const std::vector<int>& Ns);

}  // namespace taulab::cauchydet
