#ifndef PPTES_QUADRUPLE_HPP
#define PPTES_QUADRUPLE_HPP

#include <array>
#include <optional>

#include "pptes/multiqubit.hpp"

namespace pptes {

/// Four pairwise linearly independent vectors in C^2.
struct VectorQuadruple {
  std::array<Vector2, 4> x;

  /// |det(x_i,x_j)| > tol * |x_i||x_j| for every i != j.
  bool pairwise_independent(double tol = 1e-12) const;
};

/// W (x1,x2,x3,x4) diag(d) = ((1,0,1,t),(0,1,1,1)).
struct StandardForm {
  Matrix2 W;
  Vector4 d;
  Complex t;
};

/// The six-element Moebius orbit of a cross ratio t.
class CharacteristicSet {
public:
  explicit CharacteristicSet(Complex t);

  Complex representative() const { return t_; }
  const std::array<Complex, 6>& orbit() const { return orbit_; }

  bool contains(Complex value, double tol = 1e-6) const;
  /// Set equality up to tolerance (duplicates collapse).
  bool equals(const CharacteristicSet& other, double tol = 1e-6) const;

private:
  Complex t_;
  std::array<Complex, 6> orbit_;
};

/// Cross ratio det(x1,x3)det(x2,x4) / (det(x1,x4)det(x2,x3)).
Complex cross_ratio(const VectorQuadruple& q);

StandardForm standard_form(const VectorQuadruple& q);

CharacteristicSet t_orbit(Complex t);

enum class Orthogonalizability { PairingA, PairingB, PairingC, None };

/// PairingA: x1|x2, x3|x4 for t < 0; PairingB: x1|x4, x2|x3 for t in (0,1);
/// PairingC: x1|x3, x2|x4 for t > 1; None for non-real t.
Orthogonalizability orthogonalizability(Complex t, double tol = 1e-8);

/// Invertible V realizing the pairing dictated by orthogonalizability(t);
/// absent when t is not real.
std::optional<Matrix2> orthogonalizing_transform(const VectorQuadruple& q);

/// Bijection (x,y,z,w) <-> ((x,y),(z,w)) with (P (x) Q) v =
/// vectorize(P matrixize(v) Q^T).
Matrix2 matrixize(const Vector4& v);
Vector4 vectorize(const Matrix2& m);

/// Columns are the unnormalized Bell vectors
/// (1,0,0,1),(1,0,0,-1),(0,1,1,0),(0,1,-1,0).
Matrix4 bell_columns();

struct BellTransform {
  Matrix2 P;
  Matrix2 Q;
  Vector4 d;  // diagonal of D
};

/// Thrown when four entangled vectors fail the pairwise condition
/// psi_i^T (eps (x) eps) psi_j = 0.
struct PairwiseConditionError : std::runtime_error {
  PairwiseConditionError(int i, int j, double residual);
  int i, j;
  double residual;
};

/// Product transform carrying four entangled two-qubit vectors with
/// vanishing pairwise eps-overlaps onto the Bell columns:
/// (P (x) Q)(psi1..psi4) diag(d) = bell_columns().
BellTransform bell_transform(const std::array<Vector4, 4>& psi,
                             double tol = 1e-8);

struct BellPermutation {
  Matrix2 P;
  Matrix2 Q;
  std::array<double, 4> phases;  // (P (x) Q) phi_j = e^{i phase_j} phi_sigma(j)
};

/// Local unitary realizing a permutation of the four Bell states.
/// `sigma` maps j -> sigma[j], zero-based.
BellPermutation bell_permutation_unitary(const std::array<int, 4>& sigma);

}  // namespace pptes

#endif
