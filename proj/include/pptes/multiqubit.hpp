#ifndef PPTES_MULTIQUBIT_HPP
#define PPTES_MULTIQUBIT_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace pptes {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector2 = Eigen::Vector2cd;
using Vector4 = Eigen::Vector4cd;

/// Default relative cutoff for rank/kernel decisions.
inline constexpr double kRankTol = 1e-10;

/// Density matrix of an n-qubit system. The matrix is kept unnormalized;
/// Hermiticity and positivity are checked at construction within `tol`.
class MultiQubitState {
public:
  MultiQubitState(int n_qubits, Matrix matrix, double tol = 1e-8);

  int qubits() const { return n_; }
  int dim() const { return 1 << n_; }
  const Matrix& matrix() const { return matrix_; }
  double tol() const { return tol_; }

  /// Trace-normalized copy of the matrix.
  Matrix normalized() const { return matrix_ / matrix_.trace().real(); }

private:
  int n_;
  Matrix matrix_;
  double tol_;
};

/// Kronecker product, row-major block convention.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);
Vector tensor(const Vector& a, const Vector& b, const Vector& c);

/// Split tensor product: interleaves P between the two factors of Q,
/// so split_tensor(P, V (x) W) = V (x) P (x) W.
Matrix split_tensor(const Matrix2& p, const Matrix4& q);

/// Transpose the tensor indices of the qubits in `parties` (1-based).
Matrix partial_transpose(const Matrix& m, int n_qubits,
                         const std::vector<int>& parties);
Matrix partial_transpose(const MultiQubitState& state,
                         const std::vector<int>& parties);

/// Number of singular values above rel_tol * sigma_max.
int numeric_rank(const Matrix& m, double rel_tol = kRankTol);

/// Orthonormal basis of the numerical null space of a Hermitian matrix;
/// eigenvectors with |eigenvalue| <= rel_tol * max|eigenvalue|.
std::vector<Vector> kernel_basis(const Matrix& m, double rel_tol = kRankTol);

/// Columns of `basis` are an orthonormal kernel basis (convenience form).
Matrix kernel_basis_matrix(const Matrix& m, double rel_tol = kRankTol);

double min_eigenvalue(const Matrix& m);

struct PptReport {
  bool ppt = false;
  /// One entry per nonempty proper party subset, with the minimum
  /// eigenvalue of the corresponding partial transpose.
  std::vector<std::pair<std::vector<int>, double>> partitions;
};

/// PPT check over all nonempty proper party subsets.
PptReport is_ppt(const MultiQubitState& state, double tol = 1e-10);

inline bool is_hermitian(const Matrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace pptes

#endif
