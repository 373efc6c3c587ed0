#include "taulab/numkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace taulab::numkit {

QuadGrid gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");

  QuadGrid g;
  g.a = a;
  g.b = b;
  g.nodes.resize(n);
  g.weights.resize(n);

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = mid - half * x;
    g.nodes[n - 1 - i] = mid + half * x;
    g.weights[i] = half * w;
    g.weights[n - 1 - i] = half * w;
  }
  if (n == 1) {
    g.nodes[0] = mid;
    g.weights[0] = b - a;
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  return g;
}

QuadGrid composite_rule(double a, double b, int panels, int per_panel,
                        bool geometric) {
  if (panels < 1 || per_panel < 1)
    throw std::invalid_argument("composite_rule: need panels, per_panel >= 1");
  if (!(a < b)) throw std::invalid_argument("composite_rule: need a < b");
  if (geometric && !(a > 0.0))
    throw std::invalid_argument("composite_rule: geometric spacing needs a > 0");

  std::vector<double> edges(panels + 1);
  if (geometric) {
    const double r = std::pow(b / a, 1.0 / panels);
    for (int i = 0; i <= panels; ++i) edges[i] = a * std::pow(r, i);
  } else {
    for (int i = 0; i <= panels; ++i)
      edges[i] = a + (b - a) * static_cast<double>(i) / panels;
  }
  edges.front() = a;
  edges.back() = b;

  QuadGrid g;
  g.a = a;
  g.b = b;
  g.nodes.reserve(static_cast<std::size_t>(panels) * per_panel);
  g.weights.reserve(static_cast<std::size_t>(panels) * per_panel);
  for (int i = 0; i < panels; ++i) {
    QuadGrid p = gauss_legendre(per_panel, edges[i], edges[i + 1]);
    g.nodes.insert(g.nodes.end(), p.nodes.begin(), p.nodes.end());
    g.weights.insert(g.weights.end(), p.weights.begin(), p.weights.end());
  }
  return g;
}

KernelMatrix kernel_matrix(const Kernel2& K, const QuadGrid& grid) {
  const int n = grid.size();
  KernelMatrix M;
  M.grid = grid;
  M.entries.resize(n, n);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(grid.weights[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx v = K(grid.nodes[i], grid.nodes[j]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream oss;
        oss << "kernel_matrix: non-finite value at (" << grid.nodes[i] << ", "
            << grid.nodes[j] << ")";
        throw std::domain_error(oss.str());
      }
      M.entries(i, j) = sw[i] * v * sw[j];
    }
  return M;
}

KernelMatrix hankel_matrix(const Symbol1& phi, const QuadGrid& grid) {
  return kernel_matrix(
      [&phi](double x, double y) { return phi(x + y); }, grid);
}

LuDet det_lu(const Eigen::MatrixXcd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("det_lu: square only");
  LuDet r;
  if (A.rows() == 0) return r;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const auto& diag = lu.matrixLU().diagonal();
  double max_p = 0.0, min_p = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double m = std::abs(diag[i]);
    max_p = std::max(max_p, m);
    min_p = std::min(min_p, m);
    r.log_abs += std::log(m);
    r.arg += std::arg(diag[i]);
  }
  const int perm_sign = static_cast<int>(lu.permutationP().determinant());
  if (perm_sign < 0) r.arg += M_PI;
  r.min_pivot_ratio = (max_p > 0.0) ? min_p / max_p : 0.0;
  r.value = std::exp(cplx(r.log_abs, 0.0)) * std::exp(cplx(0.0, r.arg));
  return r;
}

cplx det_id_plus(const KernelMatrix& K, cplx z) {
  Eigen::MatrixXcd A =
      Eigen::MatrixXcd::Identity(K.entries.rows(), K.entries.cols()) +
      z * K.entries;
  LuDet d = det_lu(A);
  if (d.singular())
    throw near_singular_error("det_id_plus: matrix singular to working precision");
  return d.value;
}

QuadGrid fredholm_grid(double t, double decay_rate) {
  if (!(decay_rate > 0.0))
    throw std::invalid_argument("fredholm_grid: need a positive decay rate");
  // e^{-rate (L - t)} <= 1e-14  =>  L - t >= 14 ln 10 / rate; add margin.
  const double span = (14.0 * std::log(10.0) + 4.0) / decay_rate;
  const int panels = std::max(2, static_cast<int>(std::ceil(span * decay_rate / 8.0)));
  return composite_rule(t, t + span, panels, 64, false);
}

cplx fredholm_det(const Kernel2& K, double t, double decay_rate, cplx z) {
  return det_id_plus(kernel_matrix(K, fredholm_grid(t, decay_rate)), z);
}

namespace detail {

double log_derivative_impl(const std::function<double(double)>& f, double t,
                           double h) {
  if (!(h > 0.0)) throw std::invalid_argument("log_derivative: need h > 0");
  const double fp = f(t + h), fm = f(t - h);
  if (!(fp > 0.0) || !(fm > 0.0))
    throw std::domain_error("log_derivative: f <= 0 at a stencil point");
  return (std::log(fp) - std::log(fm)) / (2.0 * h);
}

cplx log_derivative_impl(const std::function<cplx(double)>& f, double t,
                         double h) {
  if (!(h > 0.0)) throw std::invalid_argument("log_derivative: need h > 0");
  const cplx fp = f(t + h), fm = f(t - h);
  if (std::abs(fp) == 0.0 || std::abs(fm) == 0.0)
    throw std::domain_error("log_derivative: f = 0 at a stencil point");
  return (std::log(fp) - std::log(fm)) / (2.0 * h);
}

}  // namespace detail

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double NormalSource::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // uniforms in (0,1] from the top 53 bits
  const double u1 =
      (static_cast<double>(splitmix64(state_) >> 11) + 1.0) / 9007199254740993.0;
  const double u2 =
      (static_cast<double>(splitmix64(state_) >> 11) + 1.0) / 9007199254740993.0;
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("TAULAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(thread_budget(), std::max(1, n));
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace taulab::numkit
