#include "taulab/cauchydet.hpp"

#include "doctest.h"

#include <cmath>

using namespace taulab;
using namespace taulab::cauchydet;

namespace {

Eigen::VectorXcd random_lambdas(std::uint64_t seed, int n) {
  std::uint64_t s = seed;
  auto u01 = [&s] {
    return static_cast<double>(numkit::splitmix64(s) >> 11) / (1ULL << 53);
  };
  Eigen::VectorXcd lam(n);
  for (int j = 0; j < n; ++j)
    lam[j] = cplx(0.3 + 3.0 * u01(), 2.0 * u01() - 1.0);
  return lam;
}

// random spectra with well-separated imaginary parts; clustered draws send
// the determinant below what double-precision LU can resolve
Eigen::VectorXcd ladder_lambdas(std::uint64_t seed, int n) {
  std::uint64_t s = seed;
  auto u01 = [&s] {
    return static_cast<double>(numkit::splitmix64(s) >> 11) / (1ULL << 53);
  };
  Eigen::VectorXcd lam(n);
  for (int j = 0; j < n; ++j)
    lam[j] = cplx(0.5 + 2.0 * u01(), 8.0 * (j + u01()));
  return lam;
}

}  // namespace

TEST_CASE("cauchy determinant") {
  SUBCASE("closed forms") {
    Eigen::VectorXcd one(1);
    one << cplx(1.0);
    CHECK(cauchy_det(one) == doctest::Approx(0.5).epsilon(1e-15));
    Eigen::VectorXcd two(2);
    two << cplx(1.0), cplx(2.0);
    CHECK(cauchy_det(two) == doctest::Approx(1.0 / 72.0).epsilon(1e-14));
  }
  SUBCASE("product formula against LU, random spectra") {
    for (std::uint64_t seed : {89u, 7u}) {
      const auto lam8 = ladder_lambdas(seed, 8);
      CHECK(std::abs(cauchy_det(lam8) - cauchy_det_lu(lam8)) <=
            1e-12 * cauchy_det_lu(lam8));
      for (int n : {16, 32}) {
        const auto lam = ladder_lambdas(seed, n);
        const double a = cauchy_det(lam);
        const double b = cauchy_det_lu(lam);
        CHECK(std::abs(a - b) <= 1e-11 * std::abs(b));
      }
    }
  }
  SUBCASE("product formula against LU, progressions to N=32") {
    for (int n : {8, 16, 32}) {
      const auto lam = ProgressionSpec{cplx(1.0, 0.4), 1.0, n}.lambdas();
      const double a = cauchy_det(lam);
      const double b = cauchy_det_lu(lam);
      CHECK(std::abs(a - b) <= 1e-11 * std::abs(b));
    }
  }
  SUBCASE("positivity") {
    for (std::uint64_t seed : {3u, 5u, 8u}) {
      CHECK(cauchy_det(random_lambdas(seed, 6)) > 0.0);
    }
    CHECK(cauchy_det(ProgressionSpec{cplx(0.7, 0.0), 2.0, 12}.lambdas()) >
          0.0);
  }
  SUBCASE("argument validation") {
    Eigen::VectorXcd dup(2);
    dup << cplx(1.0), cplx(1.0);
    CHECK_THROWS_AS(cauchy_det(dup), std::invalid_argument);
    Eigen::VectorXcd left(1);
    left << cplx(-1.0);
    CHECK_THROWS_AS(cauchy_det(left), std::invalid_argument);
  }
}

TEST_CASE("Toeplitz section") {
  SUBCASE("N=1 closed form") {
    const auto form = toeplitz_form(ProgressionSpec{cplx(1.0), 1.0, 1});
    CHECK(form.det == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(form.a(0) == cplx(1.0));
  }
  SUBCASE("a_0 is the mean of the symbol") {
    const auto form = toeplitz_form(ProgressionSpec{cplx(0.8, 0.3), 1.7, 4});
    const auto g = numkit::gauss_legendre(48, 0.0, 1.0);
    double mean = 0.0;
    for (int i = 0; i < g.size(); ++i)
      mean += g.weights[i] * form.symbol(g.nodes[i]);
    CHECK(std::abs(form.a(0).real() - mean) < 1e-13);
    CHECK(form.a(0).imag() == 0.0);
    CHECK(std::abs(form.a(0).real() - 1.7 / 0.8) < 1e-13);
  }
  SUBCASE("higher coefficients against quadrature") {
    const auto form = toeplitz_form(ProgressionSpec{cplx(1.0), 1.0, 2});
    for (int m : {1, -2}) {
      const auto g = numkit::gauss_legendre(64, 0.0, 1.0);
      cplx acc = 0.0;
      for (int i = 0; i < g.size(); ++i)
        acc += g.weights[i] * form.symbol(g.nodes[i]) *
               std::exp(cplx(0.0, -2.0 * M_PI * m * g.nodes[i]));
      CHECK(std::abs(form.a(m) - acc) < 1e-13);
    }
  }
  SUBCASE("matches the progression determinant") {
    for (const cplx beta : {cplx(0.5, 0.0), cplx(1.0, 0.0), cplx(2.0, 1.0)}) {
      for (const double K : {0.5, 1.0, 2.0}) {
        for (int N : {3, 8, 16}) {
          const ProgressionSpec spec{beta, K, N};
          const double heine = toeplitz_form(spec).det;
          const double direct = cauchy_det(spec.lambdas());
          CHECK(std::abs(heine - direct) <= 1e-10 * std::abs(direct));
        }
      }
    }
  }
  SUBCASE("only Re beta matters") {
    const double base =
        cauchy_det(ProgressionSpec{cplx(1.0, 0.0), 1.0, 8}.lambdas());
    const double shifted =
        cauchy_det(ProgressionSpec{cplx(1.0, 5.0), 1.0, 8}.lambdas());
    CHECK(std::abs(base - shifted) <= 1e-13 * base);
  }
}

TEST_CASE("Haar Monte Carlo") {
  SUBCASE("N=1 reduces to the one-dimensional integral") {
    const ProgressionSpec spec{cplx(1.0), 1.0, 1};
    const auto est = haar_mc(spec, 20000, 7);
    CHECK(std::abs(est.value - 1.0) < 3.0 * est.std_error);
    CHECK(est.std_error < 0.05);
  }
  SUBCASE("N=2 agrees with the determinant within 3 sigma") {
    const ProgressionSpec spec{cplx(1.0), 1.0, 2};
    const double exact = cauchy_det(spec.lambdas());
    const auto est = haar_mc(spec, 20000, 7);
    CHECK(std::abs(est.value - exact) < 3.0 * est.std_error);
  }
  SUBCASE("seeded reruns are bit-identical") {
    const ProgressionSpec spec{cplx(1.0), 1.0, 2};
    const auto a = haar_mc(spec, 500, 42);
    const auto b = haar_mc(spec, 500, 42);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto c = haar_mc(spec, 500, 43);
    CHECK(a.value != c.value);
  }
}

TEST_CASE("growth toward the Szego limit") {
  const std::vector<int> Ns{4, 8, 16, 32, 64};
  const auto rep = growth_check(cplx(1.0), 1.0, Ns);
  SUBCASE("limit value") {
    CHECK(rep.limit == doctest::Approx(0.8509181282).epsilon(1e-9));
  }
  SUBCASE("gaps decrease and obey the fitted N^{-1/3} envelope") {
    CHECK(rep.monotone);
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      CHECK(rep.gaps[i] <=
            rep.fitted_C * std::pow(static_cast<double>(Ns[i]), -1.0 / 3.0) +
                1e-15);
    }
    CHECK(std::abs(rep.roots.back() - rep.limit) < 0.01);
  }
  SUBCASE("roots scale linearly in K") {
    const auto scaled = growth_check(cplx(1.0), 2.0, Ns);
    for (std::size_t i = 0; i < Ns.size(); ++i)
      CHECK(std::abs(scaled.roots[i] - 2.0 * rep.roots[i]) <=
            1e-12 * scaled.roots[i]);
  }
}
