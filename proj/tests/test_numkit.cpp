#include "taulab/numkit.hpp"

#include "doctest.h"

#include <cmath>

using namespace taulab;
using namespace taulab::numkit;

TEST_CASE("gauss_legendre basic rules") {
  SUBCASE("n=1 on (0,2) is the midpoint rule") {
    const QuadGrid g = gauss_legendre(1, 0.0, 2.0);
    REQUIRE(g.size() == 1);
    CHECK(g.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("n=2 integrates x on (0,1) exactly") {
    const QuadGrid g = gauss_legendre(2, 0.0, 1.0);
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += g.weights[i] * g.nodes[i];
    CHECK(s == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("polynomial exactness at degree 2n-1") {
    const QuadGrid g = gauss_legendre(8, -1.0, 1.0);
    double s = 0.0;  // integral of x^14 over (-1,1) = 2/15
    for (int i = 0; i < g.size(); ++i)
      s += g.weights[i] * std::pow(g.nodes[i], 14);
    CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(4, 1.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("composite rule properties") {
  const QuadGrid g = composite_rule(0.0, 40.0, 64, 8);
  SUBCASE("weights positive, nodes increasing, weights sum to span") {
    double sum = 0.0;
    for (int i = 0; i < g.size(); ++i) {
      CHECK(g.weights[i] > 0.0);
      if (i > 0) CHECK(g.nodes[i] > g.nodes[i - 1]);
      sum += g.weights[i];
    }
    CHECK(sum == doctest::Approx(40.0).epsilon(1e-13));
  }
  SUBCASE("exp integral to 1e-13") {
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i)
      s += g.weights[i] * std::exp(-2.0 * g.nodes[i]);
    CHECK(s == doctest::Approx(0.5).epsilon(1e-13));
  }
  SUBCASE("geometric spacing covers (a,b)") {
    const QuadGrid gg = composite_rule(0.1, 100.0, 16, 6, true);
    double sum = 0.0;
    for (int i = 0; i < gg.size(); ++i) sum += gg.weights[i];
    CHECK(sum == doctest::Approx(99.9).epsilon(1e-13));
    CHECK_THROWS_AS(composite_rule(0.0, 1.0, 4, 4, true),
                    std::invalid_argument);
  }
}

TEST_CASE("fredholm determinant of the rank-one heat kernel") {
  const auto K = [](double x, double y) { return cplx(std::exp(-(x + y))); };
  // single eigenvalue 1/2: det(I + zK) = 1 + z/2
  SUBCASE("z = -1 gives 1/2") {
    const cplx d = fredholm_det(K, 0.0, 2.0, cplx(-1.0, 0.0));
    CHECK(std::abs(d - 0.5) < 1e-12);
  }
  SUBCASE("generic z") {
    const cplx z(0.37, 0.11);
    const cplx d = fredholm_det(K, 0.0, 2.0, z);
    CHECK(std::abs(d - (1.0 + z / 2.0)) < 1e-12);
  }
  SUBCASE("panel doubling plateau") {
    const QuadGrid g1 = fredholm_grid(0.0, 2.0);
    const QuadGrid g2 = composite_rule(g1.a, g1.b, 8, 64);
    const cplx d1 = det_id_plus(kernel_matrix(K, g1), cplx(-1.0, 0.0));
    const cplx d2 = det_id_plus(kernel_matrix(K, g2), cplx(-1.0, 0.0));
    CHECK(std::abs(d1 - d2) < 1e-10);
  }
}

TEST_CASE("hankel matrix discretization") {
  SUBCASE("rank-one symbol determinant equals 1 - sum w e^{-2x}") {
    const QuadGrid g = gauss_legendre(2, 0.0, 1.0);
    const KernelMatrix M =
        hankel_matrix([](double s) { return cplx(std::exp(-s)); }, g);
    double direct = 1.0;
    // rank-one: det(I - M) = 1 - trace
    double tr = 0.0;
    for (int i = 0; i < g.size(); ++i)
      tr += g.weights[i] * std::exp(-2.0 * g.nodes[i]);
    direct -= tr;
    const cplx d = det_id_plus(M, cplx(-1.0, 0.0));
    CHECK(std::abs(d - direct) < 1e-14);
  }
  SUBCASE("zero symbol gives zero matrix") {
    const QuadGrid g = gauss_legendre(4, 0.0, 1.0);
    const KernelMatrix M = hankel_matrix([](double) { return cplx(0.0); }, g);
    CHECK(M.entries.norm() == 0.0);
  }
  SUBCASE("two-exponential symbol converges to 19/72") {
    const auto phi = [](double s) {
      return cplx(std::exp(-s) + std::exp(-2.0 * s));
    };
    const cplx d = fredholm_det(
        [&phi](double x, double y) { return phi(x + y); }, 0.0, 2.0,
        cplx(-1.0, 0.0));
    CHECK(std::abs(d - 19.0 / 72.0) < 1e-10);
  }
  SUBCASE("non-finite symbol value reports the node pair") {
    const QuadGrid g = gauss_legendre(4, 0.0, 1.0);
    CHECK_THROWS_AS(
        hankel_matrix([](double) { return cplx(std::nan("")); }, g),
        std::domain_error);
  }
}

TEST_CASE("determinant factorization det(I-zK)det(I+zK) = det(I-z^2 K^2)") {
  const QuadGrid g = composite_rule(0.0, 20.0, 16, 16);
  const auto phi = [](double s) {
    return cplx(std::exp(-s) - 0.5 * std::exp(-1.7 * s));
  };
  const KernelMatrix M = hankel_matrix(phi, g);
  const KernelMatrix M2{M.entries * M.entries, g, true};
  const cplx z(0.8, 0.0);
  const cplx lhs = det_id_plus(M, -z) * det_id_plus(M, z);
  const cplx rhs = det_id_plus(M2, -z * z);
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("symmetrized Hermitian kernel has real eigenvalues") {
  const QuadGrid g = composite_rule(0.0, 10.0, 8, 12);
  const KernelMatrix M = hankel_matrix(
      [](double s) { return cplx(std::exp(-1.3 * s)); }, g);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M.entries);
  double max_imag = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    max_imag = std::max(max_imag, std::abs(es.eigenvalues()[i].imag()));
  CHECK(max_imag < 1e-10);
}

TEST_CASE("log_derivative stencils") {
  SUBCASE("exponential decay") {
    const double d = log_derivative(
        [](double t) { return std::exp(-t); }, 1.0, 1e-4);
    CHECK(std::abs(d + 1.0) < 1e-8);
  }
  SUBCASE("rank-one tau at t=0") {
    const double d = log_derivative(
        [](double t) { return 1.0 - std::exp(-2.0 * t) / 2.0; }, 0.0, 1e-4);
    CHECK(std::abs(d - 2.0) < 1e-7);
  }
  SUBCASE("constant curve") {
    const double d =
        log_derivative([](double) { return 3.0; }, 0.5, 1e-4);
    CHECK(std::abs(d) < 1e-12);
  }
  SUBCASE("nonpositive value reported") {
    CHECK_THROWS_AS(log_derivative([](double t) { return t; }, 0.0, 1e-2),
                    std::domain_error);
  }
}

TEST_CASE("det_lu pivot bookkeeping") {
  SUBCASE("identity") {
    const LuDet d = det_lu(Eigen::MatrixXcd::Identity(5, 5));
    CHECK(std::abs(d.value - 1.0) < 1e-15);
    CHECK_FALSE(d.singular());
  }
  SUBCASE("singular matrix flagged") {
    Eigen::MatrixXcd A(2, 2);
    A << 1.0, 2.0, 2.0, 4.0;
    CHECK(det_lu(A).singular());
  }
  SUBCASE("matches Eigen determinant on a random complex matrix") {
    std::uint64_t s = 17;
    Eigen::MatrixXcd A(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const double re = static_cast<double>(splitmix64(s) >> 11) / (1ULL << 53);
        const double im = static_cast<double>(splitmix64(s) >> 11) / (1ULL << 53);
        A(i, j) = cplx(2.0 * re - 1.0, 2.0 * im - 1.0);
      }
    CHECK(std::abs(det_lu(A).value - A.determinant()) <
          1e-12 * std::abs(A.determinant()));
  }
}

TEST_CASE("deterministic normal source") {
  NormalSource a(99), b(99);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  // crude moment sanity
  NormalSource c(7);
  double mean = 0.0, var = 0.0;
  const int n = 20000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = c.next();
    mean += xs[i];
  }
  mean /= n;
  for (int i = 0; i < n; ++i) var += (xs[i] - mean) * (xs[i] - mean);
  var /= n - 1;
  CHECK(std::abs(mean) < 0.03);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("parallel_for fills every slot once") {
  std::vector<int> hits(257, 0);
  parallel_for(257, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}
