#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace taulab {

using cplx = std::complex<double>;

// Thrown when a linear solve or determinant meets a matrix that is singular
// to working precision; distinct from argument/domain errors so callers can
// map it to a dedicated exit path.
struct near_singular_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace numkit {

struct QuadGrid {
  std::vector<double> nodes;    // strictly increasing, inside (a,b)
  std::vector<double> weights;  // all positive, sum to b-a
  double a = 0.0;
  double b = 0.0;

  [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
};

// Gauss-Legendre rule on (a,b): integrates polynomials of degree <= 2n-1
// exactly.  Nodes by Newton iteration on the Legendre recurrence.
QuadGrid gauss_legendre(int n, double a, double b);

// `panels` consecutive Gauss-Legendre panels of `per_panel` points each.
// Geometric spacing puts short panels near `a`, which suits kernels with
// power-law decay; linear spacing suits exponential decay.
QuadGrid composite_rule(double a, double b, int panels, int per_panel,
                        bool geometric = false);

struct KernelMatrix {
  Eigen::MatrixXcd entries;  // sqrt(w_i) K(x_i,x_j) sqrt(w_j) when symmetrized
  QuadGrid grid;
  bool symmetrized = true;
};

using Kernel2 = std::function<cplx(double, double)>;
using Symbol1 = std::function<cplx(double)>;

// Nystrom discretization with the symmetric sqrt-weight scaling.
KernelMatrix kernel_matrix(const Kernel2& K, const QuadGrid& grid);

// Hankel discretization: entries phi(x_i + x_j), same scaling.  Non-finite
// symbol values abort with the offending node pair in the message.
KernelMatrix hankel_matrix(const Symbol1& phi, const QuadGrid& grid);

// LU determinant with pivot bookkeeping.  log_abs/arg accumulate Sum log of
// pivots so tiny/huge determinants stay representable; `singular` flags a
// pivot ratio below working precision.
struct LuDet {
  cplx value{1.0, 0.0};
  double log_abs = 0.0;
  double arg = 0.0;
  double min_pivot_ratio = 1.0;  // min |pivot| / max |pivot|
  [[nodiscard]] bool singular() const { return min_pivot_ratio < 1e-14; }
};

LuDet det_lu(const Eigen::MatrixXcd& A);

// det(I + z * K_sym) for an explicit discretization.
cplx det_id_plus(const KernelMatrix& K, cplx z);

// Fredholm determinant det(I + z K P_(t,inf)).  The caller supplies the
// exponential decay rate of the kernel diagonal; the domain is truncated
// where the tail bound drops below 1e-14 and covered by 64-node panels.
cplx fredholm_det(const Kernel2& K, double t, double decay_rate, cplx z);

// Grid used by fredholm_det for the given decay rate (exposed so oracles and
// manifests can report the automatic truncation).
QuadGrid fredholm_grid(double t, double decay_rate);

namespace detail {
double log_derivative_impl(const std::function<double(double)>& f, double t,
                           double h);
cplx log_derivative_impl(const std::function<cplx(double)>& f, double t,
                         double h);
}  // namespace detail

// Centered finite difference of log f at t; error O(h^2).  Works for real
// f (throws std::domain_error when f <= 0 at a stencil point) and for
// complex f (principal branch on each stencil value).
template <class F>
auto log_derivative(F&& f, double t, double h) {
  using R = decltype(f(t));
  return detail::log_derivative_impl(std::function<R(double)>(std::forward<F>(f)),
                                     t, h);
}

// SplitMix64: seed expansion / per-sample stream derivation.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic standard normal pair via Box-Muller on the raw bit stream;
// independent of library distribution internals so seeded runs are
// bit-identical across toolchains.
struct NormalSource {
  explicit NormalSource(std::uint64_t seed) : state_(seed) {}
  double next();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Number of worker threads: min(TAULAB_THREADS, hardware), at least 1.
int thread_budget();

// Index-parallel map with deterministic output slots (no reduction order to
// perturb); falls back to serial when the budget is 1.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace numkit
}  // namespace taulab
