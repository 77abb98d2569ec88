#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pptes/families.hpp"
#include "pptes/lorentz.hpp"
#include "test_helpers.hpp"

using namespace pptes;
using namespace pptes::testing;

TEST_CASE("epsilon matrices") {
  Matrix2 e;
  e << 0, 1, -1, 0;
  CHECK((epsilon_n(1) - Matrix(e)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((epsilon_n(2) - tensor(Matrix(e), Matrix(e))).cwiseAbs().maxCoeff() ==
        0.0);
  const Matrix e3 = epsilon_n(3);
  CHECK((e3 * e3 + Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((e3.transpose() + e3).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(epsilon_n(0), std::invalid_argument);
}

TEST_CASE("invariant of the maximally mixed three-qubit state is -1/8") {
  const auto inv = lorentz_invariant(Matrix(Matrix::Identity(8, 8) / 8.0));
  CHECK(inv.value == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(inv.imag_residual <= 1e-15);
}

TEST_CASE("canonical family has zero invariant") {
  for (const Complex t :
       {Complex(2, 0), Complex(-3, 0), Complex(0.4, 0), Complex(1, 2)}) {
    const MultiQubitState rho = type2_state(t, /*normalize=*/true);
    CHECK(std::abs(lorentz_invariant(rho).value) <= 1e-10);
  }
}

TEST_CASE("angle-family invariant matches its closed form") {
  for (int rep = 0; rep < 30; ++rep) {
    std::uniform_real_distribution<double> dist(0.05, 1.5);
    const UpbSpec spec{dist(rng()), dist(rng()), dist(rng())};
    const double closed = upb_invariant_closed_form(spec);
    const double direct = lorentz_invariant(upb_state(spec)).value;
    CHECK(std::abs(closed - direct) <= 1e-10);
    CHECK(closed > -0.25);
    CHECK(closed < 0.0);
  }
}

TEST_CASE("invariant rejects non-power-of-two dimensions") {
  CHECK_THROWS_AS(lorentz_invariant(Matrix(Matrix::Identity(6, 6))),
                  std::invalid_argument);
}

TEST_CASE("pure pairwise term: Bell state with itself gives +1") {
  Vector4 phi1;
  phi1 << 1, 0, 0, 1;
  phi1 /= std::sqrt(2.0);
  CHECK(pairwise_pure_invariant(phi1, phi1, 2) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure pairwise term vanishes on product vectors for even n") {
  for (int rep = 0; rep < 20; ++rep) {
    const Vector xi =
        tensor(random_unit_vector(2), random_unit_vector(2));
    CHECK(std::abs(pairwise_pure_invariant(xi, xi, 2)) <= 1e-12);
  }
}

TEST_CASE("pure pairwise self-term vanishes for odd n") {
  for (int n : {1, 3}) {
    const Vector xi = random_unit_vector(1 << n);
    CHECK(std::abs(pairwise_pure_invariant(xi, xi, n)) <= 1e-12);
  }
}

TEST_CASE("pairwise term rejects length mismatch") {
  CHECK_THROWS_AS(
      pairwise_pure_invariant(random_vector(2), random_vector(4), 2),
      std::invalid_argument);
}

TEST_CASE("invariant is unchanged under determinant-one local maps") {
  const Matrix rho = random_density(8, 4);
  const double before = lorentz_invariant(rho).value;
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix v = tensor(tensor(Matrix(random_sl2()), Matrix(random_sl2())),
                            Matrix(random_sl2()));
    const Matrix conj = v * rho * v.adjoint();
    const double after = lorentz_invariant(conj).value;
    const double scale =
        (1 + rho.squaredNorm()) * std::pow(v.operatorNorm(), 4);
    CHECK(std::abs(after - before) <= 1e-8 * scale);
  }
}

TEST_CASE("invariant is unchanged under transposition") {
  const Matrix rho = random_density(8, 5);
  CHECK(lorentz_invariant(rho).value ==
        doctest::Approx(lorentz_invariant(Matrix(rho.transpose())).value)
            .epsilon(1e-12));
}

TEST_CASE("pure-state invariant ranges by parity") {
  for (int n : {2, 3, 4}) {
    for (int rep = 0; rep < 500; ++rep) {
      const Vector xi = random_unit_vector(1 << n);
      const double v = lorentz_invariant(Matrix(xi * xi.adjoint())).value;
      if (n % 2 == 1) {
        CHECK(std::abs(v) <= 1e-12);
      } else {
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("rank-two mixture invariant ranges by parity") {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 500; ++rep) {
      const Vector a = random_unit_vector(1 << n);
      const Vector b = random_unit_vector(1 << n);
      const double w = unit(rng());
      const Matrix rho = w * (a * a.adjoint()) + (1 - w) * (b * b.adjoint());
      const double v = lorentz_invariant(rho).value;
      if (n % 2 == 1) {
        CHECK(v >= -0.5 - 1e-12);
        CHECK(v <= 1e-12);
      } else {
        CHECK(v >= -1e-12);
        CHECK(v < 1.0);  // the top of the range is unattainable at rank two
      }
    }
  }
}

TEST_CASE("states with vanishing invariant have rank at most half") {
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 200; ++rep) {
      const Vector xi = random_unit_vector(1 << n);
      const Matrix rho = xi * xi.adjoint();
      if (std::abs(lorentz_invariant(rho).value) <= 1e-12)
        CHECK(numeric_rank(rho) <= (1 << (n - 1)));
    }
  }
}

TEST_CASE("single-qubit extremal mixture reaches -1/2") {
  Vector xi1(2);
  xi1 << 1, 0;
  const MultiQubitState rho = extremal_rank2_mixture(1, 2, xi1);
  CHECK(lorentz_invariant(rho).value ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("three-qubit extremal mixtures reach -1/2 for every size") {
  for (int m = 2; m <= 12; ++m) {
    const MultiQubitState rho = extremal_rank2_mixture(3, m);
    CHECK(std::abs(lorentz_invariant(rho).value + 0.5) <= 1e-10);
    CHECK(numeric_rank(rho.matrix()) <= 2);
  }
}

TEST_CASE("extremal mixture rejects even qubit count") {
  CHECK_THROWS_AS(extremal_rank2_mixture(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(extremal_rank2_mixture(3, 1), std::invalid_argument);
}
