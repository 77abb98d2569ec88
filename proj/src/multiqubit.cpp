#include "pptes/multiqubit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pptes {

MultiQubitState::MultiQubitState(int n_qubits, Matrix matrix, double tol)
    : n_(n_qubits), matrix_(std::move(matrix)), tol_(tol) {
  if (n_ < 1) throw std::invalid_argument("state needs at least one qubit");
  const int d = 1 << n_;
  if (matrix_.rows() != d || matrix_.cols() != d)
    throw std::invalid_argument("matrix size does not match qubit count");
  if (!matrix_.allFinite())
    throw std::invalid_argument("matrix has non-finite entries");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if (!is_hermitian(matrix_, tol_ * scale))
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
  if (min_eigenvalue(matrix_) < -tol_ * scale)
    throw std::invalid_argument("matrix is not PSD within tolerance");
  if (matrix_.trace().real() <= 0.0)
    throw std::invalid_argument("trace must be positive");
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b, const Vector& c) {
  return tensor(a, tensor(b, c));
}

Matrix split_tensor(const Matrix2& p, const Matrix4& q) {
  Matrix out(8, 8);
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj)
      out.block(4 * bi, 4 * bj, 4, 4) =
          tensor(Matrix(p), Matrix(q.block<2, 2>(2 * bi, 2 * bj)));
  return out;
}

namespace {

// Swap the bits of `idx` named in `mask` between row and column index.
inline int swap_bits(int idx, int other, int mask) {
  return (idx & ~mask) | (other & mask);
}

}  // namespace

Matrix partial_transpose(const Matrix& m, int n_qubits,
                         const std::vector<int>& parties) {
  const int d = 1 << n_qubits;
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument("matrix size does not match qubit count");
  if (parties.empty()) throw std::invalid_argument("empty party set");
  int mask = 0;
  for (int p : parties) {
    if (p < 1 || p > n_qubits)
      throw std::invalid_argument("party index out of range");
    mask |= 1 << (n_qubits - p);  // party 1 is the most significant bit
  }
  Matrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out(swap_bits(i, j, mask), swap_bits(j, i, mask)) = m(i, j);
  return out;
}

Matrix partial_transpose(const MultiQubitState& state,
                         const std::vector<int>& parties) {
  return partial_transpose(state.matrix(), state.qubits(), parties);
}

int numeric_rank(const Matrix& m, double rel_tol) {
  if (rel_tol <= 0) throw std::invalid_argument("rel_tol must be positive");
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

std::vector<Vector> kernel_basis(const Matrix& m, double rel_tol) {
  Matrix k = kernel_basis_matrix(m, rel_tol);
  std::vector<Vector> out;
  out.reserve(k.cols());
  for (Eigen::Index i = 0; i < k.cols(); ++i) out.push_back(k.col(i));
  return out;
}

Matrix kernel_basis_matrix(const Matrix& m, double rel_tol) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_hermitian(m, 1e-8 * scale))
    throw std::invalid_argument("kernel_basis expects a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const auto& ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  if (emax == 0.0) return Matrix::Identity(m.rows(), m.cols());
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) <= rel_tol * emax) idx.push_back(i);
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(idx[i]);
  return out;
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

PptReport is_ppt(const MultiQubitState& state, double tol) {
  PptReport report;
  report.ppt = true;
  const double tr = state.matrix().trace().real();
  const int n = state.qubits();
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<int> parties;
    for (int p = 1; p <= n; ++p)
      if (mask & (1 << (p - 1))) parties.push_back(p);
    const double lmin =
        min_eigenvalue(partial_transpose(state, parties));
    report.partitions.emplace_back(parties, lmin);
    if (lmin < -tol * tr) report.ppt = false;
  }
  return report;
}

}  // namespace pptes
