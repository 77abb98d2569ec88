#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "pptes/classify.hpp"
#include "pptes/families.hpp"
#include "pptes/lorentz.hpp"
#include "test_helpers.hpp"

using namespace pptes;
using namespace pptes::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Vector2 v2(Complex a, Complex b) {
  Vector2 v;
  v << a, b;
  return v;
}

QpSpec pinned_qp_spec(double p1) {
  return QpSpec{{p1, 0.2, 0.2, 0.2, 0.4 - p1},
                QpAlphaFormula::kHalfCoefficients};
}

UpbSpec random_upb_spec() {
  std::uniform_real_distribution<double> dist(0.05, kPi / 2 - 0.05);
  return {dist(rng()), dist(rng()), dist(rng())};
}

Matrix orthonormal_columns(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

/// Four general-position product vectors spanning a 4-dim subspace of C^8,
/// with party-1 slopes drawn to be pairwise distinct.
Matrix random_product_span(std::array<Vector, 4>* out = nullptr) {
  Matrix span(8, 4);
  for (int i = 0; i < 4; ++i) {
    Vector a = random_unit_vector(2);
    Vector psi = random_unit_vector(4);
    // Keep the remote factor entangled so the quartic stays degree four.
    while (std::abs(matrixize(Vector4(psi)).determinant()) < 0.1)
      psi = random_unit_vector(4);
    const Vector prod = tensor(a, psi);
    span.col(i) = prod;
    if (out) (*out)[i] = prod;
  }
  return span;
}

}  // namespace

TEST_CASE("range of the canonical family yields its defining product vectors") {
  const Complex t(2, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(type2_state(t).matrix());
  Matrix range4(8, 4);
  range4 << es.eigenvectors().rightCols(4);
  const auto recs = bipartite_products_in_subspace(range4, Partition::A_BC);
  REQUIRE(recs.size() == 4);
  Eigen::Matrix<Complex, 2, 4> a;
  a << 1, 0, 1, t, 0, 1, 1, 1;
  for (const auto& rec : recs) {
    CHECK(rec.residual <= 1e-8);
    bool local_matched = false;
    for (int i = 0; i < 4; ++i) {
      const Vector2 cand = a.col(i).normalized();
      if (std::abs(std::abs(rec.local.normalized().dot(cand)) - 1.0) <= 1e-7)
        local_matched = true;
    }
    CHECK(local_matched);
    // Remote factor is proportional to a Bell vector.
    bool bell_matched = false;
    for (int i = 0; i < 4; ++i) {
      const Vector4 phi = bell_columns().col(i).normalized();
      if (std::abs(std::abs(rec.remote.normalized().dot(phi)) - 1.0) <= 1e-7)
        bell_matched = true;
    }
    CHECK(bell_matched);
  }
}

TEST_CASE("pinned six-vector family: slopes of the range product vectors") {
  const MultiQubitState rho = qp_state(pinned_qp_spec(0.35651164020026005));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const Matrix range = es.eigenvectors().rightCols(4);
  const auto recs = bipartite_products_in_subspace(range, Partition::A_BC);
  REQUIRE(recs.size() == 4);
  const std::array<Complex, 4> expected{
      Complex(-8.843514882184724, 0), Complex(0.19237140417058013, 0),
      Complex(1, 0), Complex(0, 0)};
  for (const Complex a : expected) {
    bool found = false;
    for (const auto& rec : recs) {
      // slope a means local ~ (a, 1)
      if (std::abs(rec.local(1)) > 1e-12 &&
          std::abs(rec.local(0) / rec.local(1) - a) <= 1e-6)
        found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("kernel of the angle-family state returns the basis members") {
  const UpbSpec spec{0.7, 1.0, 0.4};
  const auto xs = upb_vectors(spec);
  const Matrix kernel = kernel_basis_matrix(upb_state(spec).matrix());
  const auto recs = bipartite_products_in_subspace(kernel, Partition::A_BC);
  REQUIRE(recs.size() == 4);
  for (const auto& rec : recs) {
    REQUIRE(rec.tripartite.has_value());
    bool matched = false;
    for (const auto& xi : xs)
      if (std::abs(std::abs(rec.vector.normalized().dot(xi)) - 1.0) <= 1e-8)
        matched = true;
    CHECK(matched);
  }
}

TEST_CASE("product search on known spans recovers exactly the four vectors") {
  int done = 0;
  while (done < 200) {
    std::array<Vector, 4> known;
    const Matrix span = random_product_span(&known);
    if (numeric_rank(span, 1e-6) < 4) continue;
    ++done;
    const Matrix basis = orthonormal_columns(span);
    const auto recs = bipartite_products_in_subspace(basis, Partition::A_BC);
    REQUIRE(recs.size() == 4);
    for (const auto& rec : recs) {
      CHECK(rec.residual <= 1e-8);
      bool matched = false;
      for (const auto& k : known)
        if (std::abs(std::abs(rec.vector.normalized().dot(k.normalized())) -
                     1.0) <= 1e-7)
          matched = true;
      CHECK(matched);
    }
  }
}

TEST_CASE("subspaces of the wrong dimension are rejected") {
  CHECK_THROWS_AS(
      bipartite_products_in_subspace(random_matrix(8, 3), Partition::A_BC),
      std::invalid_argument);
}

TEST_CASE("tripartite factor test") {
  Vector e000 = Vector::Zero(8);
  e000(0) = 1.0;
  const auto f = is_tripartite_product(e000);
  REQUIRE(f.has_value());
  const Vector rebuilt =
      tensor(Vector((*f)[0]), Vector((*f)[1]), Vector((*f)[2]));
  CHECK((rebuilt.normalized() - e000).norm() <= 1e-12);

  const Vector bell_remote =
      tensor(Vector(random_unit_vector(2)),
             Vector(Vector4(bell_columns().col(0)).normalized()));
  CHECK_FALSE(is_tripartite_product(bell_remote).has_value());
  CHECK_THROWS_AS(is_tripartite_product(Vector(Vector::Zero(8))),
                  std::invalid_argument);
}

TEST_CASE("range of the canonical family is completely entangled") {
  Eigen::SelfAdjointEigenSolver<Matrix> es(type2_state(Complex(2, 0)).matrix());
  const Matrix range = es.eigenvectors().rightCols(4);
  for (int rep = 0; rep < 100; ++rep) {
    const Vector v = range * random_vector(4);
    CHECK_FALSE(is_tripartite_product(v).has_value());
  }
}

TEST_CASE("general position predicate") {
  const auto xs = upb_vectors(UpbSpec{0.3, 0.8, 1.2});
  std::array<std::array<Vector2, 3>, 4> factors;
  for (int i = 0; i < 4; ++i) factors[i] = *is_tripartite_product(xs[i]);
  CHECK(general_position(factors));

  // Computational basis vectors repeat party factors.
  std::array<std::array<Vector2, 3>, 4> repeated;
  const std::array<int, 4> indices{0, 1, 6, 7};
  for (int i = 0; i < 4; ++i) {
    Vector e = Vector::Zero(8);
    e(indices[i]) = 1.0;
    repeated[i] = *is_tripartite_product(e);
  }
  CHECK_FALSE(general_position(repeated));
}

TEST_CASE("characteristic set of the canonical family is the orbit of t") {
  for (const Complex t : {Complex(2, 0), Complex(-0.4, 0), Complex(0.3, 0.9)}) {
    const CharacteristicSet cs = characteristic_set(type2_state(t));
    CHECK(cs.contains(t));
    CHECK(cs.equals(t_orbit(t)));
  }
}

TEST_CASE("pinned six-vector states map to their pinned orbits") {
  const CharacteristicSet cs1 =
      characteristic_set(qp_state(pinned_qp_spec(0.35651164020026005)));
  CHECK(cs1.contains(Complex(-0.2651270982388964, 0)));
  const CharacteristicSet cs2 =
      characteristic_set(qp_state(pinned_qp_spec(0.3943325092488642)));
  CHECK(cs2.contains(Complex(-0.036855353393877174, 0)));
  CHECK_FALSE(cs1.equals(cs2));
}

TEST_CASE("characteristic set of the symmetric angle-family state") {
  const CharacteristicSet cs =
      characteristic_set(upb_state(UpbSpec{kPi / 4, kPi / 4, kPi / 4}));
  CHECK(cs.contains(Complex(-1, 0)));
}

TEST_CASE("interval-distinctness predicate") {
  CHECK(upb_constructible(Complex(-1, 0), Complex(2, 0), Complex(0.5, 0)));
  CHECK_FALSE(
      upb_constructible(Complex(-1, 0), Complex(-2, 0), Complex(0.5, 0)));
  CHECK_FALSE(
      upb_constructible(Complex(0, 1), Complex(2, 0), Complex(0.5, 0)));
  CHECK_THROWS_AS(
      upb_constructible(Complex(0, 0), Complex(2, 0), Complex(0.5, 0)),
      std::invalid_argument);
}

TEST_CASE("biseparable decomposition of the canonical family") {
  const Complex t(2, 0);
  const MultiQubitState rho = type2_state(t, /*normalize=*/true);
  const auto terms = decompose_biseparable(rho);
  Matrix recon = Matrix::Zero(8, 8);
  for (const auto& term : terms) {
    CHECK(term.weight > 0.0);
    CHECK(std::abs(matrixize(term.remote).determinant()) > 1e-6);
    recon += term.weight *
             tensor(Matrix(term.local * term.local.adjoint()),
                    Matrix(term.remote * term.remote.adjoint()));
  }
  CHECK((recon - rho.matrix()).cwiseAbs().maxCoeff() <=
        1e-8 * rho.matrix().cwiseAbs().maxCoeff());
  // Normalizing the factors folds |a_i|^2 |phi_i|^2 into the weights:
  // (2*1*2, 1*1*2, 2*2*2, 1*5*2) = (4, 2, 8, 10) at t = 2.
  std::vector<double> weights;
  for (const auto& term : terms) weights.push_back(term.weight);
  std::sort(weights.begin(), weights.end());
  const std::vector<double> expected{2, 4, 8, 10};
  for (int i = 1; i < 4; ++i)
    CHECK(weights[i] / weights[0] ==
          doctest::Approx(expected[i] / expected[0]).epsilon(1e-8));
}

TEST_CASE("verification battery accepts the canonical family") {
  const auto report = verify_rank4_pptes(type2_state(Complex(2, 0)));
  CHECK(report.hermitian_psd);
  CHECK(report.rank4);
  CHECK(report.ppt);
  for (bool b : report.pt_rank4) CHECK(b);
  CHECK(report.range_ces);
  CHECK(report.entangled_rank4_pptes);
  CHECK(report.failures.empty());
}

TEST_CASE("verification battery rejects a separable rank-four state") {
  // Orthogonal tripartite product vectors -> separable, range has products.
  Matrix rho = Matrix::Zero(8, 8);
  for (int i : {0, 3, 5, 6}) rho(i, i) = 0.25;
  const auto report = verify_rank4_pptes(MultiQubitState(3, rho));
  CHECK_FALSE(report.entangled_rank4_pptes);
  CHECK_FALSE(report.range_ces);
}

TEST_CASE("verification battery rejects the GHZ state") {
  Vector ghz = Vector::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  const auto report =
      verify_rank4_pptes(MultiQubitState(3, Matrix(ghz * ghz.adjoint())));
  CHECK_FALSE(report.ppt);
  CHECK_FALSE(report.entangled_rank4_pptes);
}

TEST_CASE("classification: angle-family states are constructible") {
  for (int rep = 0; rep < 5; ++rep) {
    const auto report = classify(upb_state(random_upb_spec()));
    CHECK(report.type == StateType::TypeI);
    CHECK(report.upb_verdict == UpbVerdict::UpbConstructible);
    REQUIRE(report.t_triple.has_value());
    CHECK(report.in_general_position == true);
  }
}

TEST_CASE("classification: six-vector family is not constructible") {
  for (const double p1 : {0.35651164020026005, 0.3943325092488642}) {
    const auto report = classify(qp_state(pinned_qp_spec(p1)));
    CHECK(report.type == StateType::TypeI);
    CHECK(report.upb_verdict == UpbVerdict::NotUpbConstructible);
  }
}

TEST_CASE("classification: canonical and split families agree") {
  const Complex t(0.5, 0);
  const auto r1 = classify(type2_state(t));
  const auto r2 = classify(example10_state(t));
  CHECK(r1.type == StateType::TypeII);
  CHECK(r2.type == StateType::TypeII);
  REQUIRE(r1.canonical_t_orbit.has_value());
  REQUIRE(r2.canonical_t_orbit.has_value());
  CHECK(r1.canonical_t_orbit->equals(*r2.canonical_t_orbit));
  CHECK(r1.canonical_t_orbit->contains(t));
}

TEST_CASE("classification survives random local transformations") {
  const Complex t(2.5, 0);
  const MultiQubitState rho = type2_state(t, /*normalize=*/true);
  const auto base = classify(rho);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix v =
        tensor(tensor(Matrix(random_invertible2()), Matrix(random_invertible2())),
               Matrix(random_invertible2()));
    Matrix conj = v * rho.matrix() * v.adjoint();
    conj /= conj.trace().real();
    const auto moved = classify(MultiQubitState(3, conj));
    CHECK(moved.type == base.type);
    REQUIRE(moved.canonical_t_orbit.has_value());
    CHECK(moved.canonical_t_orbit->equals(*base.canonical_t_orbit));
  }
}

TEST_CASE("characteristic set is invariant under local transformations") {
  const MultiQubitState rho = upb_state(UpbSpec{0.9, 0.5, 1.1});
  const CharacteristicSet base = characteristic_set(rho);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix v =
        tensor(tensor(Matrix(random_invertible2()), Matrix(random_invertible2())),
               Matrix(random_invertible2()));
    Matrix conj = v * rho.matrix() * v.adjoint();
    conj /= conj.trace().real();
    CHECK(characteristic_set(MultiQubitState(3, conj)).equals(base));
  }
}

TEST_CASE("equivalence comparison across the canonical family") {
  const MultiQubitState a = type2_state(Complex(2, 0));
  const MultiQubitState b = type2_state(Complex(0.5, 0));
  CHECK(slocc_compare(a, b) == SloccVerdict::Equivalent);
}

TEST_CASE("the two pinned six-vector states are not equivalent") {
  const MultiQubitState a = qp_state(pinned_qp_spec(0.35651164020026005));
  const MultiQubitState b = qp_state(pinned_qp_spec(0.3943325092488642));
  CHECK(slocc_compare(a, b) == SloccVerdict::NotEquivalent);
}

TEST_CASE("self-comparison never reports NotEquivalent") {
  const MultiQubitState a = qp_state(pinned_qp_spec(0.37));
  CHECK(slocc_compare(a, a) != SloccVerdict::NotEquivalent);
  const MultiQubitState c = type2_state(Complex(0, 1));
  CHECK(slocc_compare(c, c) == SloccVerdict::Equivalent);
}

TEST_CASE("interval predicate is stable under shared reordering") {
  // Simultaneous Moebius action maps the triple but keeps the verdict.
  std::array<Vector2, 4> base{v2(1, 0), v2(0, 1), v2(1, 1), v2(-1, 1)};
  const std::array<Complex, 3> ts{Complex(-2, 0), Complex(0.3, 0),
                                  Complex(5, 0)};
  std::array<int, 4> perm{0, 1, 2, 3};
  const bool base_verdict = upb_constructible(ts[0], ts[1], ts[2]);
  do {
    std::array<Complex, 3> moved;
    for (int k = 0; k < 3; ++k) {
      VectorQuadruple q{{v2(1, 0), v2(0, 1), v2(1, 1), v2(ts[k], 1)}};
      VectorQuadruple p;
      for (int i = 0; i < 4; ++i) p.x[i] = q.x[perm[i]];
      moved[k] = standard_form(p).t;
    }
    CHECK(upb_constructible(moved[0], moved[1], moved[2]) == base_verdict);
  } while (std::next_permutation(perm.begin(), perm.end()));
}
