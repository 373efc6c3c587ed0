#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "taulab/hypergeom.hpp"
#include "taulab/numkit.hpp"

using taulab::hypergeom::HgParams;
using taulab::hypergeom::HgSolution;
using taulab::hypergeom::Vec2;

namespace {

// Off-diagonal coupling with zero drift and a generic exponent pair; the
// weights stay real and positive on (1, inf).
HgParams contraction_params() { return HgParams{1.2, -1.2, 0.48}; }

// Larger coupling: the kernel is trace class here but no longer a
// contraction, which the determinant tests below probe directly.
HgParams strong_params() { return HgParams{1.9, -1.9, 0.45}; }

double q_of(const HgParams& p, double lam) {
  return taulab::hypergeom::q_potential(p, lam);
}

}  // namespace

TEST_CASE("parameter validation enforces the zero-trace window") {
  CHECK_NOTHROW(contraction_params().validate());
  CHECK_NOTHROW(strong_params().validate());
  CHECK_NOTHROW(HgParams{1.3, -1.3, 0.0}.validate());   // endpoint exponents
  CHECK_NOTHROW(HgParams{1.3, -1.3, 1.0}.validate());   // are allowed
  CHECK_THROWS_AS((HgParams{1.2, -1.1, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((HgParams{1.2, -1.2, -0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((HgParams{1.2, -1.2, 1.1}.validate()), std::invalid_argument);
  // -ab must exceed 5/4 so the phase stays elliptic out to infinity
  CHECK_THROWS_AS((HgParams{1.0, -1.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((HgParams{1.1, -1.1, 0.5}.validate()), std::invalid_argument);
  // 2*sqrt(-ab) = 3 here: integer exponent separation is rejected
  CHECK_THROWS_AS((HgParams{1.5, -1.5, 0.5}.validate()), std::invalid_argument);
}

TEST_CASE("coefficient matrix: entries, determinant, and large-lambda limit") {
  const HgParams p{std::sqrt(2.0), -std::sqrt(2.0), 0.5};  // -ab = 2
  const auto W2 = taulab::hypergeom::w_matrix(p, 2.0);
  // c0 = c1 = 1/2 at lambda = 2: both weights collapse to powers of 2
  CHECK(std::abs(W2(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(W2(1, 0) - std::sqrt(2.0)) < 1e-15);
  CHECK(W2(0, 0) == 0.0);
  CHECK(W2(1, 1) == 0.0);

  for (double lam : {1.5, 2.0, 7.0, 40.0}) {
    const auto W = taulab::hypergeom::w_matrix(p, lam);
    const double det = W(0, 0) * W(1, 1) - W(0, 1) * W(1, 0);
    CHECK(std::abs(det - (-2.0) / (lam * (lam - 1.0))) < 1e-14);
  }

  // lambda * W tends to the constant symbol [[0,1],[-ab,0]]
  const double big = 1e4;
  const auto Wb = taulab::hypergeom::w_matrix(p, big);
  CHECK(std::abs(big * Wb(0, 1) - 1.0) < 1e-3);
  CHECK(std::abs(big * Wb(1, 0) - 2.0) < 1e-3);

  CHECK_THROWS_AS(taulab::hypergeom::w_matrix(p, 1.0), std::domain_error);
  CHECK_THROWS_AS(taulab::hypergeom::w_matrix(p, 0.5), std::domain_error);
}

TEST_CASE("scalar potential: frozen value, tail, and reflection symmetry") {
  const HgParams p{std::sqrt(2.0), -std::sqrt(2.0), 0.5};
  CHECK(std::abs(q_of(p, 2.0) - 53.0 / 64.0) < 1e-15);

  // lambda^2 q -> -ab - 1/4; the 1/lambda correction carries an O(1)
  // coefficient, so the window opens up only past lambda ~ 1e4
  CHECK(std::abs(1e8 * q_of(p, 1e4) - 1.75) < 1e-3);
  CHECK(std::abs(1e6 * q_of(p, 1e3) - 1.75) < 3e-3);

  // q(lambda; c) = q(1 - lambda; 1 - c): the two regular singular points
  // trade places under the joint reflection.
  for (double c : {0.0, 0.3, 0.48, 1.0}) {
    const HgParams pc{1.3, -1.3, c};
    const HgParams pr{1.3, -1.3, 1.0 - c};
    for (double lam : {2.0, 3.7, 10.0}) {
      CHECK(q_of(pc, lam) == doctest::Approx(q_of(pr, 1.0 - lam)).epsilon(1e-13));
    }
  }

  // The c = 0 and c = 1 potentials differ near the singular points but
  // agree in the tail: lambda^2 (q0 - q1) -> 0.
  const HgParams p0{1.3, -1.3, 0.0};
  const HgParams p1{1.3, -1.3, 1.0};
  CHECK(std::abs(q_of(p0, 2.0) - q_of(p1, 2.0)) > 1e-3);
  CHECK(std::abs(1e6 * (q_of(p0, 1e3) - q_of(p1, 1e3))) < 1e-3);

  // positivity on [2, inf) is what the phase integral needs
  for (double lam = 2.0; lam < 500.0; lam *= 1.7) {
    CHECK(q_of(strong_params(), lam) > 0.0);
    CHECK(q_of(contraction_params(), lam) > 0.0);
  }
}

TEST_CASE("asymptotic seed and the integrated solution agree") {
  const HgParams p = strong_params();
  const auto sol = taulab::hypergeom::integrate_system(p, 800.0, 1.02);
  REQUIRE(sol.nodes.size() >= 1000);
  CHECK(sol.nodes.front() == doctest::Approx(1.02));
  CHECK(sol.nodes.back() == doctest::Approx(800.0));

  SUBCASE("seed self-consistency over a short hop") {
    // The seed formula drifts off the true flow at a slow power-law rate
    // (regular singular point), so the agreement window is a short step at
    // the seeding scale, not a finite hop.
    const double far = 1e4, h = 0.01;
    const Vec2 seeded = taulab::hypergeom::lg_seed(p, far - h);
    const Vec2 hopped = taulab::hypergeom::integrate_between(
        p, far, far - h, taulab::hypergeom::lg_seed(p, far));
    for (int i = 0; i < 2; ++i)
      CHECK(std::abs(hopped(i) - seeded(i)) < 1e-6 * std::abs(seeded(i)));
  }

  SUBCASE("interpolant satisfies the system to 1e-8") {
    // Richardson-extrapolated central differences on the stored
    // interpolant, compared against W Psi.  This closes the loop without
    // reusing the integrator's own derivative values.
    for (double x : {30.0, 10.0, 3.0, 1.5}) {
      const double h = 5e-4 * x;
      const Vec2 d1 = (sol.psi(x + h) - sol.psi(x - h)) / (2.0 * h);
      const Vec2 d2 = (sol.psi(x + h / 2.0) - sol.psi(x - h / 2.0)) / h;
      const Vec2 deriv = (4.0 * d2 - d1) / 3.0;
      const Vec2 resid = deriv - taulab::hypergeom::w_matrix(p, x) * sol.psi(x);
      CHECK(resid.norm() < 1e-8);
    }
  }

  SUBCASE("out-of-range evaluation throws") {
    CHECK_THROWS_AS((void)sol.psi(1.0), std::domain_error);
    CHECK_THROWS_AS((void)sol.psi(801.0), std::domain_error);
  }
}

TEST_CASE("reverse integration returns to the starting vector") {
  // Decay exponent here is mild enough that the outward (growing) sweep
  // amplifies the inward error by only ~(800/30)^2.4.
  const HgParams p = contraction_params();
  const auto sol = taulab::hypergeom::integrate_system(p, 800.0, 1.05);
  const Vec2 start = sol.psi(800.0);
  const Vec2 back = taulab::hypergeom::integrate_between(p, 30.0, 800.0, sol.psi(30.0));
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(back(i) - start(i)) < 1e-6 * std::abs(start(i)));
}

TEST_CASE("weighted tail mass of the solution saturates") {
  const HgParams p = strong_params();
  const auto sol = taulab::hypergeom::integrate_system(p, 800.0, 1.02);
  auto tail = [&](double top) {
    const auto grid = taulab::numkit::composite_rule(2.0, top, 32, 20, true);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
      const Vec2 v = sol.psi(grid.nodes[i]);
      acc += grid.weights[i] * grid.nodes[i] * v.squaredNorm();
    }
    return acc;
  };
  const double t200 = tail(200.0);
  const double t400 = tail(400.0);
  CHECK(std::abs(t400 - t200) < 1e-2 * t200);
}

TEST_CASE("pole-side integral representation of the weights") {
  // f_c(lambda) = lambda^{-c} (lambda-1)^{c-1}, reproduced by a positive
  // measure on [0, 1] divided by (lambda - v).
  auto direct = [](double c, double lam) {
    return std::pow(lam, -c) * std::pow(lam - 1.0, c - 1.0);
  };
  for (double c : {0.3, 0.5, 0.7})
    for (double lam : {1.1, 2.0, 10.0})
      CHECK(std::abs(taulab::hypergeom::loewner_rep(c, lam) - direct(c, lam)) < 1e-8);

  CHECK(std::abs(taulab::hypergeom::loewner_rep(0.5, 2.0) - 1.0 / std::sqrt(2.0)) < 1e-8);

  // c -> 1 collapses the measure onto the pole at v = 0, i.e. f -> 1/lambda
  CHECK(std::abs(taulab::hypergeom::loewner_rep(0.999, 2.0) - std::pow(2.0, -0.999)) < 1e-8);
  CHECK(std::abs(taulab::hypergeom::loewner_rep(0.9999, 2.0) - 0.5) < 1e-4);

  CHECK_THROWS_AS(taulab::hypergeom::loewner_rep(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(taulab::hypergeom::loewner_rep(1.0, 2.0), std::domain_error);

  SUBCASE("pole-pair kernel matches finite differences of f_c") {
    const HgParams p = contraction_params();
    for (auto [x, y] : {std::pair{2.0, 3.0}, std::pair{1.5, 7.0}, std::pair{2.2, 2.9}}) {
      for (double c : {p.c0(), p.c1()}) {
        const double lhs = (y - x) * taulab::hypergeom::loewner_pole_pair(c, x, y);
        const double rhs = direct(c, x) - direct(c, y);
        CHECK(std::abs(lhs - rhs) < 1e-8);
      }
    }
  }
}

TEST_CASE("integrable kernel: diagonal, symmetry, and the sum rule") {
  const HgParams p = strong_params();
  const auto sol = taulab::hypergeom::integrate_system(p, 800.0, 1.02);

  SUBCASE("numerator vanishes identically on the diagonal") {
    const Eigen::Matrix2d kJ = (Eigen::Matrix2d() << 0.0, -1.0, 1.0, 0.0).finished();
    for (double x : {1.5, 2.0, 5.0}) {
      const Vec2 v = sol.psi(x);
      CHECK((kJ * v).dot(v) == 0.0);
    }
  }

  SUBCASE("kernel is symmetric and continuous across the diagonal") {
    CHECK(taulab::hypergeom::kernel_k5(sol, 2.0, 3.0) ==
          taulab::hypergeom::kernel_k5(sol, 3.0, 2.0));
    const double diag = taulab::hypergeom::kernel_k5(sol, 2.0, 2.0);
    const double near = taulab::hypergeom::kernel_k5(sol, 2.0, 2.0 + 1e-7);
    CHECK(std::abs(near - diag) < 1e-5);
  }

  SUBCASE("mixed-derivative identity holds pointwise") {
    for (const HgParams& q : {strong_params(), contraction_params()}) {
      const auto s = taulab::hypergeom::integrate_system(q, 800.0, 1.05);
      for (auto [x, y] : {std::pair{2.0, 3.0}, std::pair{1.3, 9.0}, std::pair{4.4, 4.5}})
        CHECK(std::abs(taulab::hypergeom::identity_510_residual(s, x, y)) < 1e-8);
    }
  }
}

TEST_CASE("balanced exponents collapse the kernel") {
  // c = 1/2 makes both weights equal up to the coupling constant; the
  // solution direction freezes and the commutator-type numerator dies.
  const HgParams p{1.2, -1.2, 0.5};
  const auto sol = taulab::hypergeom::integrate_system(p, 800.0, 1.05);
  for (auto [x, y] : {std::pair{1.5, 2.7}, std::pair{2.0, 3.0}, std::pair{1.2, 10.0}})
    CHECK(std::abs(taulab::hypergeom::kernel_k5(sol, x, y)) < 1e-8);
  const auto d = taulab::hypergeom::fredholm_det(sol, 0.1, 200.0, 12, 24);
  CHECK(std::abs(d.det - 1.0) < 1e-6);
}

TEST_CASE("Fredholm determinant: contraction regime") {
  const HgParams p = contraction_params();
  const auto sol = taulab::hypergeom::integrate_system(p, 800.0, 1.05);
  const auto d40 = taulab::hypergeom::fredholm_det(sol, 0.1, 400.0, 16, 40);
  const auto d80 = taulab::hypergeom::fredholm_det(sol, 0.1, 400.0, 16, 80);

  // grid-doubling plateau
  CHECK(std::abs(d40.det - d80.det) < 1e-8);
  CHECK(d40.det > 0.27);
  CHECK(d40.det < 0.32);

  // spectrum pinned inside [0, 1): the operator is a strict contraction
  CHECK(d40.ev_max < 0.73);
  CHECK(d40.ev_max > 0.68);
  CHECK(d40.ev_min > -1e-8);
  CHECK(d40.ev_min < 1e-8);

  // second exponent choice stays contractive as well
  const HgParams p2{1.2, -1.2, 0.49};
  const auto sol2 = taulab::hypergeom::integrate_system(p2, 800.0, 1.05);
  const auto e = taulab::hypergeom::fredholm_det(sol2, 0.1, 400.0, 16, 40);
  CHECK(e.det > 0.62);
  CHECK(e.det < 0.67);
  CHECK(e.ev_max < 0.37);
  CHECK(e.ev_max > 0.33);
  CHECK(e.ev_min > -1e-8);
}

TEST_CASE("Fredholm determinant: trace-class but not contractive") {
  const HgParams p = strong_params();
  const auto sol = taulab::hypergeom::integrate_system(p, 800.0, 1.02);
  const auto d40 = taulab::hypergeom::fredholm_det(sol, 0.1, 400.0, 16, 40);
  const auto d80 = taulab::hypergeom::fredholm_det(sol, 0.1, 400.0, 16, 80);
  // stronger coupling pushes an eigenvalue past 1, so det(I - K) < 0
  CHECK(d40.ev_max > 2.0);
  CHECK(d40.det < -1.0);
  CHECK(std::abs(d40.det - d80.det) < 1e-5 * std::abs(d40.det));
}

TEST_CASE("integration guards") {
  const HgParams p = contraction_params();
  CHECK_THROWS_AS(taulab::hypergeom::integrate_system(p, 800.0, 0.9), std::domain_error);
  CHECK_THROWS_AS(taulab::hypergeom::integrate_system(p, 2.0, 5.0), std::invalid_argument);
}
