#include "pptes/families.hpp"

#include <cmath>
#include <numbers>

#include "pptes/lorentz.hpp"
#include "pptes/quadruple.hpp"

namespace pptes {

namespace {

constexpr double kDegenerateTol = 1e-8;

void check_t(Complex t) {
  if (std::abs(t) < kDegenerateTol || std::abs(t - 1.0) < kDegenerateTol)
    throw std::invalid_argument("t must differ from 0 and 1");
}

Vector2 e0() { return Vector2(1, 0); }
Vector2 e1() { return Vector2(0, 1); }

}  // namespace

void UpbSpec::validate() const {
  constexpr double half_pi = std::numbers::pi / 2;
  for (double th : {theta1, theta2, theta3})
    if (!(th > 0.0 && th < half_pi))
      throw std::invalid_argument("theta must lie in the open (0, pi/2)");
}

std::array<Vector, 4> upb_vectors(const UpbSpec& spec) {
  spec.validate();
  const std::array<double, 3> th = {spec.theta1, spec.theta2, spec.theta3};
  std::array<Vector2, 3> x, xp;
  for (int k = 0; k < 3; ++k) {
    x[k] = Vector2(std::cos(th[k]), std::sin(th[k]));
    xp[k] = Vector2(-std::sin(th[k]), std::cos(th[k]));
  }
  return {tensor(Vector(e0()), Vector(e0()), Vector(e0())),
          tensor(Vector(e1()), Vector(x[1]), Vector(x[2])),
          tensor(Vector(x[0]), Vector(e1()), Vector(xp[2])),
          tensor(Vector(xp[0]), Vector(xp[1]), Vector(e1()))};
}

MultiQubitState upb_state(const UpbSpec& spec) {
  Matrix proj = Matrix::Zero(8, 8);
  for (const Vector& xi : upb_vectors(spec)) proj += xi * xi.adjoint();
  return MultiQubitState(3, (Matrix::Identity(8, 8) - proj) / 4.0);
}

double upb_invariant_closed_form(const UpbSpec& spec) {
  spec.validate();
  const double c1 = std::cos(spec.theta1), s1 = std::sin(spec.theta1);
  const double c2 = std::cos(spec.theta2), s2 = std::sin(spec.theta2);
  const double c3 = std::cos(spec.theta3), s3 = std::sin(spec.theta3);
  return -0.25 * (c1 * c1 * c2 * c2 + s1 * s1 * c3 * c3 + s2 * s2 * s3 * s3);
}

Type2Spec::Type2Spec(Complex t_)
    : t(t_), weights{std::abs(t_ * t_ - t_), std::abs(t_ - 1.0), std::abs(t_),
                     1.0} {
  check_t(t);
}

Type2Spec::Type2Spec(Complex t_, std::array<double, 4> w)
    : t(t_), weights(w) {
  check_t(t);
  for (double l : weights)
    if (l <= 0.0) throw std::invalid_argument("weights must be positive");
}

MultiQubitState type2_state(const Type2Spec& spec, bool normalize) {
  Eigen::Matrix<Complex, 2, 4> a;
  a << 1, 0, 1, spec.t,
       0, 1, 1, 1;
  const Matrix4 bell = bell_columns();
  Matrix rho = Matrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i) {
    const Vector e = tensor(Vector(a.col(i)), Vector(bell.col(i)));
    rho += spec.weights[i] * (e * e.adjoint()).eval();
  }
  if (normalize) rho /= rho.trace().real();
  return MultiQubitState(3, std::move(rho));
}

MultiQubitState type2_state(Complex t, bool normalize) {
  return type2_state(Type2Spec(t), normalize);
}

Matrix type2_kernel_basis(Complex t) {
  check_t(t);
  const double at2 = std::norm(t);
  // Free parameters (a,b,c,d) of the kernel, one column each.
  Matrix k = Matrix::Zero(8, 4);
  k(0, 0) = 1;  k(3, 0) = -1;
  k(4, 1) = 1;  k(7, 1) = 1;
  k(1, 2) = -(at2 + t) / (2 * at2);
  k(2, 2) = -(at2 - t) / (2 * at2);
  k(5, 2) = 1;
  k(1, 3) = -(at2 - t) / (2 * at2);
  k(2, 3) = -(at2 + t) / (2 * at2);
  k(6, 3) = 1;
  // Orthonormalize.
  Eigen::HouseholderQR<Matrix> qr(k);
  return Matrix(qr.householderQ()) * Matrix::Identity(8, 4);
}

std::pair<Matrix2, Matrix2> type2_ppt_blocks(double l1, double l2, double l3,
                                             Complex t) {
  if (l1 <= 0 || l2 <= 0 || l3 <= 0)
    throw std::invalid_argument("weights must be positive");
  const Complex tb = std::conj(t);
  const double at2 = std::norm(t);
  if (l3 + at2 <= 0 || l3 + 1 <= 0)
    throw std::invalid_argument("vanishing denominator");
  Matrix2 p, q;
  p(0, 0) = l3 + at2 - l1 * l1 / (l3 + at2) - (l3 + t) * (l3 + tb) / (l3 + 1);
  p(0, 1) = l2 * (l3 + t) / (l3 + 1) - l1 * (l3 + t) / (l3 + at2);
  p(1, 0) = l2 * (l3 + tb) / (l3 + 1) - l1 * (l3 + tb) / (l3 + at2);
  p(1, 1) = l3 * (1.0 - t) * (1.0 - tb) / (l3 + at2) - l2 * l2 / (l3 + 1);
  q(0, 0) = l1 - (l3 - at2) * (l3 - at2) / l1 - (l3 - t) * (l3 - tb) / l2;
  q(0, 1) = (l3 - t) * (1.0 - l3) / l2 - (l3 - at2) * (l3 - t) / l1;
  q(1, 0) = (l3 - tb) * (1.0 - l3) / l2 - (l3 - at2) * (l3 - tb) / l1;
  q(1, 1) = l2 - (l3 - t) * (l3 - tb) / l1 - (l3 - 1.0) * (l3 - 1.0) / l2;
  return {p, q};
}

void QpSpec::validate() const {
  double sum = 0.0;
  for (double pi : p) {
    if (pi <= 0.0) throw std::invalid_argument("weights must be positive");
    sum += pi;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("weights must sum to 1");
}

std::array<Vector, 6> qp_vectors() {
  const Vector a = e0(), b = e1();
  return {tensor(b, Vector(a + 2 * b), a),
          tensor(b, Vector(a + b), Vector(a + b)),
          tensor(a, b, Vector(a - b)),
          tensor(Vector(a + b), b, Vector(a + b)),
          tensor(Vector(a + 2 * b), a, b),
          tensor(Vector(a + b), Vector(a - 2 * b), b)};
}

double qp_alpha(const QpSpec& spec) {
  spec.validate();
  const auto& p = spec.p;
  if (spec.alpha_formula == QpAlphaFormula::kHalfCoefficients)
    return 1 / (2 * p[0]) + 2 / (5 * p[1]) + 1 / (5 * p[2]) + 2 / (5 * p[3]) +
           1 / (2 * p[4]);
  return 2 / (9 * p[0]) + 2 / (9 * p[1]) + 2 / (9 * p[2]) + 8 / (81 * p[3]) +
         125 / (81 * p[4]);
}

MultiQubitState qp_state(const QpSpec& spec) {
  const double alpha = qp_alpha(spec);
  const auto z = qp_vectors();
  Matrix rho = Matrix::Zero(8, 8);
  for (int i = 0; i < 5; ++i) {
    const Vector zi = z[i].normalized();
    rho += alpha * spec.p[i] * (zi * zi.adjoint()).eval();
  }
  const Vector z6 = z[5].normalized();
  rho -= z6 * z6.adjoint();
  rho /= alpha - 1.0;
  MultiQubitState state(3, std::move(rho));
  if (numeric_rank(state.matrix()) != 4)
    throw std::runtime_error(
        "state is not rank four; alpha formula invalid for these weights");
  return state;
}

MultiQubitState example10_state(Complex t) {
  check_t(t);
  Eigen::Matrix<Complex, 2, 4> b;
  b << 1, 0, 1, -t,
       0, 1, -1, 1;
  Eigen::Matrix<Complex, 4, 4> u;
  u << 0, -t, -t, -t,
       1, 0, 1, t,
       -1, 0, 1, t,
       0, 1, -1, -1;
  const double at2 = std::norm(t);
  const double a1mt2 = std::norm(1.0 - t);
  const std::array<double, 4> lam = {at2 * a1mt2, a1mt2, at2, 1.0};
  const double alpha =
      1.0 / (5 * at2 * at2 + 10 * at2 + 1 + (3 * at2 + 1) * a1mt2);
  Matrix rho = Matrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i) {
    const Vector e = tensor(Vector(b.col(i)), Vector(u.col(i)));
    rho += alpha * lam[i] * (e * e.adjoint()).eval();
  }
  return MultiQubitState(3, std::move(rho));
}

Matrix example10_connecting_transform(Complex t) {
  check_t(t);
  if (std::abs(t.imag()) > 1e-12 || t.real() <= 0.0 || t.real() >= 1.0)
    throw std::invalid_argument(
        "transform is only validated for real t in (0,1)");
  const Complex st = std::sqrt(t);
  const Complex s1t = std::sqrt(1.0 - t);
  Matrix2 w1, w2, w3;
  w1 << 1, 0,
        0, -1;
  w2 << (st - 1.0) / s1t, (st - t) / s1t,
        1, st;
  w3 << 1, st,
        (1.0 - st) / s1t, (t - st) / s1t;
  return tensor(tensor(Matrix(w1), Matrix(w2)), Matrix(w3));
}

}  // namespace pptes
