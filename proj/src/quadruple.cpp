#include "pptes/quadruple.hpp"

#include <algorithm>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

#include "pptes/lorentz.hpp"

namespace pptes {

namespace {

Complex det2(const Vector2& a, const Vector2& b) {
  return a(0) * b(1) - a(1) * b(0);
}

constexpr double kDegenerateTol = 1e-8;

void check_t_admissible(Complex t) {
  if (std::abs(t) < kDegenerateTol || std::abs(t - 1.0) < kDegenerateTol)
    throw std::invalid_argument("cross ratio too close to 0 or 1");
}

bool is_real(Complex t, double tol = 1e-8) {
  return std::abs(t.imag()) <= tol * (1.0 + std::abs(t.real()));
}

}  // namespace

bool VectorQuadruple::pairwise_independent(double tol) const {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(det2(x[i], x[j])) <= tol * x[i].norm() * x[j].norm())
        return false;
  return true;
}

Complex cross_ratio(const VectorQuadruple& q) {
  return det2(q.x[0], q.x[2]) * det2(q.x[1], q.x[3]) /
         (det2(q.x[0], q.x[3]) * det2(q.x[1], q.x[2]));
}

StandardForm standard_form(const VectorQuadruple& q) {
  if (!q.pairwise_independent())
    throw std::invalid_argument("quadruple has a linearly dependent pair");
  const Complex t = cross_ratio(q);
  check_t_admissible(t);
  // Send x1, x2 to the coordinate axes, then rescale rows so x3 -> (1,1).
  Matrix2 basis;
  basis.col(0) = q.x[0];
  basis.col(1) = q.x[1];
  const Matrix2 w0 = basis.inverse();
  const Vector2 y3 = w0 * q.x[2];
  Matrix2 w = Matrix2::Zero();
  w.row(0) = w0.row(0) / y3(0);
  w.row(1) = w0.row(1) / y3(1);
  const Vector2 y4 = w * q.x[3];
  Vector4 d;
  d << y3(0), y3(1), Complex(1.0), Complex(1.0) / y4(1);
  return {w, d, y4(0) / y4(1)};
}

CharacteristicSet::CharacteristicSet(Complex t) : t_(t) {
  check_t_admissible(t);
  orbit_ = {t,           1.0 / t,       1.0 - t,
            1.0 / (1.0 - t), 1.0 - 1.0 / t, t / (t - 1.0)};
}

bool CharacteristicSet::contains(Complex value, double tol) const {
  double scale = 1.0 + std::abs(value);
  for (const Complex& o : orbit_)
    if (std::abs(o - value) <= tol * (scale + std::abs(o))) return true;
  return false;
}

bool CharacteristicSet::equals(const CharacteristicSet& other,
                               double tol) const {
  for (const Complex& o : orbit_)
    if (!other.contains(o, tol)) return false;
  for (const Complex& o : other.orbit_)
    if (!contains(o, tol)) return false;
  return true;
}

CharacteristicSet t_orbit(Complex t) { return CharacteristicSet(t); }

Orthogonalizability orthogonalizability(Complex t, double tol) {
  check_t_admissible(t);
  if (!is_real(t, tol)) return Orthogonalizability::None;
  const double r = t.real();
  if (r < 0) return Orthogonalizability::PairingA;
  if (r < 1) return Orthogonalizability::PairingB;
  return Orthogonalizability::PairingC;
}

std::optional<Matrix2> orthogonalizing_transform(const VectorQuadruple& q) {
  const Complex t = standard_form(q).t;
  const auto pairing = orthogonalizability(t);
  if (pairing == Orthogonalizability::None) return std::nullopt;

  std::array<std::array<int, 2>, 2> pairs;
  switch (pairing) {
    case Orthogonalizability::PairingA: pairs = {{{0, 1}, {2, 3}}}; break;
    case Orthogonalizability::PairingB: pairs = {{{0, 3}, {1, 2}}}; break;
    default: pairs = {{{0, 2}, {1, 3}}}; break;
  }

  // Permute the quadruple until the cross ratio is negative; then
  // Diag(1, sqrt(-t_sigma)) composed with the standard-form transform
  // orthogonalizes the leading and trailing pairs.
  std::array<int, 4> perm = {0, 1, 2, 3};
  std::sort(perm.begin(), perm.end());
  do {
    VectorQuadruple p{{q.x[perm[0]], q.x[perm[1]], q.x[perm[2]], q.x[perm[3]]}};
    const StandardForm sf = standard_form(p);
    if (!is_real(sf.t) || sf.t.real() >= 0) continue;
    Matrix2 scale = Matrix2::Identity();
    scale(1, 1) = std::sqrt(-sf.t);
    const Matrix2 v = scale * sf.W;
    // Accept only if it realizes the pairing dictated by the trichotomy.
    bool ok = true;
    for (const auto& pr : pairs) {
      const Vector2 a = v * q.x[pr[0]];
      const Vector2 b = v * q.x[pr[1]];
      if (std::abs(a.dot(b)) > 1e-8 * a.norm() * b.norm()) ok = false;
    }
    if (ok) return v;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

Matrix2 matrixize(const Vector4& v) {
  Matrix2 m;
  m << v(0), v(1), v(2), v(3);
  return m;
}

Vector4 vectorize(const Matrix2& m) {
  Vector4 v;
  v << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return v;
}

Matrix4 bell_columns() {
  Matrix4 b;
  b << 1, 1, 0, 0,
       0, 0, 1, 1,
       0, 0, 1, -1,
       1, -1, 0, 0;
  return b;
}

PairwiseConditionError::PairwiseConditionError(int i_, int j_, double r)
    : std::runtime_error("pairwise condition violated for pair (" +
                         std::to_string(i_ + 1) + "," + std::to_string(j_ + 1) +
                         "), residual " + std::to_string(r)),
      i(i_), j(j_), residual(r) {}

BellTransform bell_transform(const std::array<Vector4, 4>& psi, double tol) {
  std::array<Matrix2, 4> A;
  for (int i = 0; i < 4; ++i) {
    A[i] = matrixize(psi[i]);
    if (std::abs(A[i].determinant()) <= tol * psi[i].squaredNorm())
      throw std::invalid_argument("input vector " + std::to_string(i + 1) +
                                  " is a product vector");
  }
  const Matrix4 ee = tensor(Matrix(epsilon()), Matrix(epsilon()));
  int worst_i = 0, worst_j = 1;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double r = std::abs(Complex(psi[i].transpose() * ee * psi[j])) /
                       (psi[i].norm() * psi[j].norm());
      if (r > worst) { worst = r; worst_i = i; worst_j = j; }
    }
  if (worst > tol) throw PairwiseConditionError(worst_i, worst_j, worst);

  // Normalize A1 to the identity, then diagonalize A2 by similarity.
  const Matrix2 p0 = A[0].inverse();
  std::array<Matrix2, 4> Ap;
  for (int i = 0; i < 4; ++i) Ap[i] = p0 * A[i];

  Eigen::ComplexEigenSolver<Matrix2> es(Ap[1]);
  const Complex ev0 = es.eigenvalues()(0);
  const Complex ev1 = es.eigenvalues()(1);
  if (std::abs(ev0 - ev1) <= 1e-10 * std::max(std::abs(ev0), std::abs(ev1)))
    throw std::runtime_error(
        "second vector is numerically degenerate (non-diagonalizable branch)");
  const Matrix2 p1 = es.eigenvectors().inverse();

  std::array<Matrix2, 4> App;
  for (int i = 0; i < 4; ++i) App[i] = p1 * Ap[i] * p1.inverse();

  const Complex s1 = App[1](0, 0);
  const Complex b3 = App[2](0, 1);
  const Complex c3 = App[2](1, 0);
  const Complex b4 = App[3](0, 1);
  const Complex s = c3 / b3;
  const Complex rs = std::sqrt(s);

  Matrix2 p2 = Matrix2::Identity(), q2 = Matrix2::Identity();
  p2(0, 0) = rs;
  q2(1, 1) = rs;

  const Matrix2 P = p2 * p1 * p0;
  const Matrix2 Qright = p1.inverse() * q2;  // right factor in P A_i Qright

  Vector4 d;
  d << 1.0 / rs, 1.0 / (s1 * rs), 1.0 / (b3 * s), 1.0 / (b4 * s);
  return {P, Qright.transpose(), d};
}

namespace {

struct PermEntry {
  Matrix2 P;
  Matrix2 Q;
};

// All 24 Bell-permutation unitaries, generated from three local-unitary
// moves: diag(1,i) x diag(1,i) swaps the first two Bell states, H x H swaps
// the middle two, and sigma_z x I swaps both outer pairs at once.
const std::map<std::array<int, 4>, PermEntry>& permutation_table() {
  static const std::map<std::array<int, 4>, PermEntry> table = [] {
    const Complex im(0, 1);
    Matrix2 di, h, sz;
    di << 1, 0, 0, im;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    sz << 1, 0, 0, -1;
    struct Gen { std::array<int, 4> perm; Matrix2 P, Q; };
    const std::array<Gen, 3> gens = {{
        {{1, 0, 2, 3}, di, di},
        {{0, 2, 1, 3}, h, h},
        {{1, 0, 3, 2}, sz, Matrix2::Identity()},
    }};
    std::map<std::array<int, 4>, PermEntry> t;
    t[{0, 1, 2, 3}] = {Matrix2::Identity(), Matrix2::Identity()};
    std::vector<std::array<int, 4>> frontier = {{0, 1, 2, 3}};
    while (!frontier.empty()) {
      std::vector<std::array<int, 4>> next;
      for (const auto& p : frontier) {
        const PermEntry& cur = t.at(p);
        for (const Gen& g : gens) {
          std::array<int, 4> np;
          for (int j = 0; j < 4; ++j) np[j] = g.perm[p[j]];
          if (t.count(np)) continue;
          t[np] = {g.P * cur.P, g.Q * cur.Q};
          next.push_back(np);
        }
      }
      frontier = std::move(next);
    }
    return t;
  }();
  return table;
}

}  // namespace

BellPermutation bell_permutation_unitary(const std::array<int, 4>& sigma) {
  std::array<int, 4> seen = sigma;
  std::sort(seen.begin(), seen.end());
  if (seen != std::array<int, 4>{0, 1, 2, 3})
    throw std::invalid_argument("not a permutation of {0,1,2,3}");
  const PermEntry& e = permutation_table().at(sigma);
  const Matrix bigu = tensor(Matrix(e.P), Matrix(e.Q));
  const Matrix4 bell = bell_columns();
  std::array<double, 4> phases{};
  for (int j = 0; j < 4; ++j) {
    const Vector4 out = bigu * bell.col(j);
    const Complex overlap =
        bell.col(sigma[j]).dot(out) / bell.col(sigma[j]).squaredNorm();
    phases[j] = std::arg(overlap);
  }
  return {e.P, e.Q, phases};
}

}  // namespace pptes
