#include "pptes/lorentz.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace pptes {

Matrix2 epsilon() {
  Matrix2 e;
  e << 0, 1, -1, 0;
  return e;
}

Matrix epsilon_n(int n) {
  if (n < 1) throw std::invalid_argument("epsilon_n needs n >= 1");
  Matrix out = epsilon();
  for (int i = 1; i < n; ++i) out = tensor(out, Matrix(epsilon()));
  return out;
}

LorentzInvariantValue lorentz_invariant(const Matrix& rho) {
  const Eigen::Index d = rho.rows();
  if (d != rho.cols()) throw std::invalid_argument("matrix must be square");
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d)
    throw std::invalid_argument("dimension is not a power of two");
  const Matrix en = epsilon_n(n);
  const Complex tr = (rho.transpose() * en * rho * en).trace();
  return {tr.real(), std::abs(tr.imag())};
}

LorentzInvariantValue lorentz_invariant(const MultiQubitState& state) {
  return lorentz_invariant(state.matrix());
}

double pairwise_pure_invariant(const Vector& xi1, const Vector& xi2, int n) {
  if (xi1.size() != xi2.size())
    throw std::invalid_argument("vector length mismatch");
  if (xi1.size() != (Eigen::Index{1} << n))
    throw std::invalid_argument("vector length does not match qubit count");
  const Complex overlap = xi1.transpose() * epsilon_n(n) * xi2;
  const double mag2 = std::norm(overlap);
  return (n % 2 == 0) ? mag2 : -mag2;
}

MultiQubitState extremal_rank2_mixture(int n, int m, const Vector& xi1) {
  if (n % 2 == 0) throw std::invalid_argument("n must be odd");
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  const Eigen::Index d = Eigen::Index{1} << n;
  if (xi1.size() != d) throw std::invalid_argument("xi1 has wrong length");
  const Vector a = xi1.normalized();
  // For odd n, eps_n conj(a) is a unit vector orthogonal to a.
  Vector b = epsilon_n(n) * a.conjugate();
  b.normalize();
  Matrix rho = Matrix::Zero(d, d);
  for (int k = 0; k < m; ++k) {
    const double th = k * std::numbers::pi / m;
    const Vector xi = std::cos(th) * a + std::sin(th) * b;
    rho += xi * xi.adjoint() / static_cast<double>(m);
  }
  return MultiQubitState(n, std::move(rho));
}

MultiQubitState extremal_rank2_mixture(int n, int m, unsigned seed) {
  if (n % 2 == 0) throw std::invalid_argument("n must be odd");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vector xi(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = Complex(g(rng), g(rng));
  return extremal_rank2_mixture(n, m, xi);
}

}  // namespace pptes
