#include "taulab/expsymbol.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace taulab::expsymbol {

void ExpSymbol::validate() const {
  for (const auto& t : terms) {
    if (!(t.lambda.real() > 0.0))
      throw std::invalid_argument("symbol: need Re lambda > 0");
    if (t.xi.size() != channel_dim)
      throw std::invalid_argument("symbol: channel dimension mismatch");
  }
  for (std::size_t j = 0; j < terms.size(); ++j)
    for (std::size_t k = j + 1; k < terms.size(); ++k)
      if (terms[j].lambda == terms[k].lambda)
        throw std::invalid_argument("symbol: duplicate lambda");
}

ExpSymbol make_scalar_symbol(const std::vector<cplx>& lambdas,
                             const std::vector<cplx>& xis) {
  if (lambdas.size() != xis.size())
    throw std::invalid_argument("make_scalar_symbol: length mismatch");
  ExpSymbol s;
  s.channel_dim = 1;
  s.terms.reserve(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    ExpSymbol::Term t;
    t.lambda = lambdas[j];
    t.xi = Eigen::VectorXcd::Constant(1, xis[j]);
    s.terms.push_back(std::move(t));
  }
  s.validate();
  return s;
}

Eigen::VectorXcd eval(const ExpSymbol& sym, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("eval: need x >= 0");
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(sym.channel_dim);
  for (const auto& t : sym.terms) acc += t.xi * std::exp(-t.lambda * x);
  return acc;
}

linsys::DiagonalRealization to_realization(const ExpSymbol& sym) {
  sym.validate();
  const int n = sym.size();
  linsys::DiagonalRealization sys;
  sys.lambdas.resize(n);
  for (int j = 0; j < n; ++j) sys.lambdas[j] = sym.terms[j].lambda;
  if (sym.channel_dim == 1) {
    sys.b.resize(n, 1);
    for (int j = 0; j < n; ++j) sys.b(j, 0) = sym.terms[j].xi[0];
    sys.c = Eigen::MatrixXcd::Ones(1, n);
  } else {
    sys.b = Eigen::MatrixXcd::Ones(n, 1);
    sys.c.resize(sym.channel_dim, n);
    for (int j = 0; j < n; ++j) sys.c.col(j) = sym.terms[j].xi;
  }
  return sys;
}

cplx tau_det(const ExpSymbol& sym, double t) {
  if (sym.terms.empty()) return 1.0;
  return linsys::tau_det(to_realization(sym), t);
}

namespace {

// next k-subset of {0..n-1} in lexicographic order; false when exhausted
bool next_subset(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

cplx tau_squared_series(const ExpSymbol& sym, double t, int max_order) {
  sym.validate();
  const int n = sym.size();
  const int nu = sym.channel_dim;
  const int nflat = n * nu;
  const int cap = std::min(max_order, n);

  // Row sets S range over terms; column sets T over flattened
  // (term, channel) pairs in row-major order.  Each (S, T) pair contributes
  // (-1)^l det[xi_j^(r) e^{-2 l_j t} / (l_j + conj l_k)]_{j in S, (k,r) in T}
  //       * det[conj(xi_k^(r)) e^{-2 conj(l_k) t} / (l_m + conj l_k)]_{m,(k,r)}.
  // In the scalar case both column factors collapse and this is the familiar
  // squared-Cauchy-determinant expansion.
  cplx total = 1.0;
  for (int l = 1; l <= cap; ++l) {
    cplx level = 0.0;
    std::vector<int> S(l);
    std::iota(S.begin(), S.end(), 0);
    do {
      std::vector<int> T(l);
      std::iota(T.begin(), T.end(), 0);
      do {
        Eigen::MatrixXcd A(l, l), B(l, l);
        for (int a = 0; a < l; ++a) {
          const auto& row = sym.terms[S[a]];
          const cplx erow = std::exp(-2.0 * row.lambda * t);
          for (int b = 0; b < l; ++b) {
            const int k = T[b] / nu, r = T[b] % nu;
            const auto& col = sym.terms[k];
            const cplx den = row.lambda + std::conj(col.lambda);
            A(a, b) = row.xi[r] * erow / den;
            B(a, b) = std::conj(col.xi[r]) *
                      std::exp(-2.0 * std::conj(col.lambda) * t) / den;
          }
        }
        level += A.determinant() * B.determinant();
      } while (next_subset(T, nflat));
    } while (next_subset(S, n));
    total += ((l % 2 == 0) ? 1.0 : -1.0) * level;
  }
  return total;
}

ExpSymbol resolve_higher_poles(const std::vector<PolyTerm>& terms,
                               double eps) {
  if (!(eps > 0.0))
    throw std::invalid_argument("resolve_higher_poles: need eps > 0");
  std::vector<cplx> lambdas, xis;
  for (const auto& pt : terms) {
    if (pt.k < 0) throw std::invalid_argument("resolve_higher_poles: k >= 0");
    // t^k e^{-lt} ~ eps^{-k} (1 - e^{-eps t})^k e^{-lt}
    //            = eps^{-k} Sum_i (-1)^i C(k,i) e^{-(l + i eps)t}
    double binom = 1.0;
    for (int i = 0; i <= pt.k; ++i) {
      const cplx shifted = pt.lambda + cplx(i * eps, 0.0);
      const cplx coeff = pt.coeff * ((i % 2 == 0) ? 1.0 : -1.0) * binom /
                         std::pow(eps, pt.k);
      auto it = std::find(lambdas.begin(), lambdas.end(), shifted);
      if (it != lambdas.end()) {
        if (pt.k > 0)
          throw std::invalid_argument(
              "resolve_higher_poles: lambda collision after offsetting");
        xis[static_cast<std::size_t>(it - lambdas.begin())] += coeff;
      } else {
        lambdas.push_back(shifted);
        xis.push_back(coeff);
      }
      binom = binom * (pt.k - i) / (i + 1);
    }
  }
  return make_scalar_symbol(lambdas, xis);
}

// ---- partitions -------------------------------------------------------------

void Partition::validate() const {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument("partition: positive parts");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition: weakly decreasing parts");
  }
}

int Partition::weight() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

std::vector<int> Partition::conjugate() const {
  if (parts.empty()) return {};
  std::vector<int> conj(parts[0], 0);
  for (int p : parts)
    for (int i = 0; i < p; ++i) ++conj[i];
  return conj;
}

int Partition::rank() const {
  int r = 0;
  while (r < static_cast<int>(parts.size()) && parts[r] >= r + 1) ++r;
  return r;
}

std::pair<std::vector<int>, std::vector<int>> Partition::frobenius() const {
  const auto conj = conjugate();
  const int r = rank();
  std::vector<int> a(r), b(r);
  for (int i = 0; i < r; ++i) {
    a[i] = parts[i] - i - 1;
    b[i] = conj[i] - i - 1;
  }
  return {a, b};
}

bigint dimension(const Partition& p) {
  p.validate();
  const int n = p.weight();
  if (n == 0) return 1;
  const auto conj = p.conjugate();
  // dim = n! / prod hooks
  bigint num = 1;
  for (int i = 2; i <= n; ++i) num *= i;
  bigint den = 1;
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    for (int j = 0; j < p.parts[i]; ++j) {
      const int hook = (p.parts[i] - j) + (conj[j] - static_cast<int>(i)) - 1;
      den *= hook;
    }
  if (num % den != 0)
    throw std::logic_error("dimension: hook product does not divide n!");
  return num / den;
}

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: need n >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  // depth-first with non-increasing parts
  std::function<void(int, int)> rec = [&](int rem, int max_part) {
    if (rem == 0) {
      out.push_back(Partition{cur});
      return;
    }
    for (int p = std::min(rem, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

GramBounds gram_bounds(const std::vector<cplx>& lambdas) {
  const int n = static_cast<int>(lambdas.size());
  for (int j = 0; j < n; ++j) {
    if (!(lambdas[j].real() > 0.0))
      throw std::invalid_argument("gram_bounds: need Re lambda > 0");
    for (int k = j + 1; k < n; ++k)
      if (lambdas[j] == lambdas[k])
        throw std::invalid_argument("gram_bounds: duplicate lambda");
  }
  Eigen::MatrixXcd G(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      G(j, k) = 1.0 / (lambdas[j] + std::conj(lambdas[k]));
  GramBounds out;
  out.det = numkit::det_lu(G).value.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  out.min_eig = es.eigenvalues().minCoeff();
  out.max_eig = es.eigenvalues().maxCoeff();
  return out;
}

double bilateral_gram_closed_form(cplx beta, double K) {
  const double a = beta.real();
  const cplx coth = std::cosh(beta) / std::sinh(beta);
  return K * K * coth.real() / a;
}

double bilateral_gram_sum(cplx beta, double K, int M) {
  if (!(beta.real() > 0.0))
    throw std::invalid_argument("bilateral_gram_sum: need Re beta > 0");
  // |lambda_j + lambda_k|^2 = (a^2 + (c + pi n)^2)/K^2,  n = j + k
  const double a = beta.real();
  const double c = beta.imag();
  double s = 0.0;
  for (int n = -M; n <= M; ++n) {
    const double u = c + M_PI * n;
    s += 1.0 / (a * a + u * u);
  }
  // midpoint-rule tails: Sum_{n > M} ~ (1/(pi a)) (pi/2 - atan((pi(M+1/2)+c)/a))
  const double edge = M_PI * (M + 0.5);
  s += (M_PI - std::atan((edge + c) / a) - std::atan((edge - c) / a)) /
       (M_PI * a);
  return K * K * s;
}

}  // namespace taulab::expsymbol
