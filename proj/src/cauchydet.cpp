#include "taulab/cauchydet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace taulab::cauchydet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_lambdas(const Eigen::VectorXcd& lambdas) {
  for (int j = 0; j < lambdas.size(); ++j) {
    if (!(lambdas[j].real() > 0.0))
      throw std::invalid_argument("cauchy_det: need Re lambda > 0");
    for (int k = j + 1; k < lambdas.size(); ++k)
      if (lambdas[j] == lambdas[k])
        throw std::invalid_argument("cauchy_det: duplicate lambda");
  }
}

Eigen::MatrixXcd cauchy_matrix(const Eigen::VectorXcd& lambdas) {
  const int n = static_cast<int>(lambdas.size());
  Eigen::MatrixXcd M(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      M(j, k) = 1.0 / (lambdas[j] + std::conj(lambdas[k]));
  return M;
}

}  // namespace

void ProgressionSpec::validate() const {
  if (!(beta.real() > 0.0))
    throw std::invalid_argument("progression: need Re beta > 0");
  if (!(K > 0.0)) throw std::invalid_argument("progression: need K > 0");
  if (N < 1) throw std::invalid_argument("progression: need N >= 1");
}

Eigen::VectorXcd ProgressionSpec::lambdas() const {
  validate();
  Eigen::VectorXcd lam(N);
  for (int j = 0; j < N; ++j) lam[j] = (cplx(0.0, kTwoPi * j) + beta) / (2.0 * K);
  return lam;
}

double cauchy_det_log(const Eigen::VectorXcd& lambdas) {
  check_lambdas(lambdas);
  const int n = static_cast<int>(lambdas.size());
  // log D = Sum_{j<k} log |l_j - l_k|^2 - Sum_{j,k} log |l_j + conj l_k|;
  // the denominator phases cancel in conjugate pairs, so only moduli count.
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      acc += 2.0 * std::log(std::abs(lambdas[j] - lambdas[k]));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      acc -= std::log(std::abs(lambdas[j] + std::conj(lambdas[k])));
  return acc;
}

double cauchy_det(const Eigen::VectorXcd& lambdas) {
  if (lambdas.size() <= 64) return std::exp(cauchy_det_log(lambdas));
  return cauchy_det_lu(lambdas);
}

double cauchy_det_lu(const Eigen::VectorXcd& lambdas) {
  check_lambdas(lambdas);
  const auto d = numkit::det_lu(cauchy_matrix(lambdas));
  return std::exp(d.log_abs) * std::cos(d.arg);
}

cplx ToeplitzForm::a(int m) const {
  return 2.0 * K / cplx(2.0 * re_beta, kTwoPi * m);
}

double ToeplitzForm::symbol(double u) const {
  return 2.0 * K * std::exp(-2.0 * re_beta * u) /
         (1.0 - std::exp(-2.0 * re_beta));
}

ToeplitzForm toeplitz_form(const ProgressionSpec& spec) {
  spec.validate();
  ToeplitzForm form;
  form.K = spec.K;
  form.re_beta = spec.beta.real();
  form.matrix.resize(spec.N, spec.N);
  for (int j = 0; j < spec.N; ++j)
    for (int k = 0; k < spec.N; ++k) form.matrix(j, k) = form.a(j - k);
  const auto d = numkit::det_lu(form.matrix);
  form.det = std::exp(d.log_abs) * std::cos(d.arg);
  return form;
}

McEstimate haar_mc(const ProgressionSpec& spec, int samples,
                   std::uint64_t seed) {
  spec.validate();
  if (samples < 1) throw std::invalid_argument("haar_mc: need samples >= 1");
  const int n = spec.N;
  const double b = spec.beta.real();
  std::vector<double> values(samples);

  numkit::parallel_for(samples, [&](int i) {
    // hash the (seed, sample index) pair so streams never overlap
    std::uint64_t s =
        seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(i) + 1));
    numkit::NormalSource gauss(numkit::splitmix64(s));
    Eigen::MatrixXcd G(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        G(r, c) = cplx(gauss.next(), gauss.next()) / std::sqrt(2.0);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd U = qr.householderQ();
    const Eigen::MatrixXcd R = qr.matrixQR();
    for (int c = 0; c < n; ++c) {
      const cplx r = R(c, c);
      U.col(c) *= (std::abs(r) > 0.0) ? r / std::abs(r) : cplx(1.0);
    }
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(U, false);
    double theta_sum = 0.0;
    for (int c = 0; c < n; ++c) {
      double th = std::arg(eig.eigenvalues()[c]);
      if (th <= 0.0) th += kTwoPi;
      theta_sum += th;
    }
    values[i] = std::exp(-(b / std::numbers::pi) * theta_sum);
  });

  // fixed-order reduction: thread count never changes the result
  double mean = 0.0;
  for (int i = 0; i < samples; ++i) mean += values[i];
  mean /= samples;
  double var = 0.0;
  for (int i = 0; i < samples; ++i)
    var += (values[i] - mean) * (values[i] - mean);
  var /= (samples > 1) ? (samples - 1.0) : 1.0;

  const double pref =
      std::pow(2.0 * spec.K / (1.0 - std::exp(-2.0 * b)), spec.N);
  McEstimate est;
  est.value = pref * mean;
  est.std_error = pref * std::sqrt(var / samples);
  est.samples = samples;
  return est;
}

GrowthReport growth_check(cplx beta, double K, const std::vector<int>& Ns) {
  GrowthReport rep;
  rep.Ns = Ns;
  rep.limit = K / std::sinh(beta.real());
  const double log_limit = std::log(rep.limit);
  double prev_gap = std::numeric_limits<double>::infinity();
  rep.monotone = true;
  for (int n : Ns) {
    ProgressionSpec spec{beta, K, n};
    const double log_root = cauchy_det_log(spec.lambdas()) / n;
    rep.roots.push_back(std::exp(log_root));
    const double gap = std::abs(log_root - log_limit);
    rep.gaps.push_back(gap);
    if (!(gap < prev_gap)) rep.monotone = false;
    prev_gap = gap;
    const double c = gap * std::cbrt(static_cast<double>(n));
    rep.fitted_C = std::max(rep.fitted_C, c);
  }
  return rep;
}

}  // namespace taulab::cauchydet
