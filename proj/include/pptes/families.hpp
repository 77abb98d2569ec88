#ifndef PPTES_FAMILIES_HPP
#define PPTES_FAMILIES_HPP

#include <array>

#include "pptes/multiqubit.hpp"

namespace pptes {

/// Angles of the three-qubit UPB, each in the open interval (0, pi/2).
struct UpbSpec {
  double theta1, theta2, theta3;
  void validate() const;
};

/// The four pairwise orthogonal product vectors of the UPB.
std::array<Vector, 4> upb_vectors(const UpbSpec& spec);

/// rho = (I8 - sum_i xi_i xi_i^dagger) / 4; a rank-four PPTES whose kernel
/// is the span of the UPB.
MultiQubitState upb_state(const UpbSpec& spec);

/// Closed form of the Lorentz invariant of upb_state; always in (-1/4, 0).
double upb_invariant_closed_form(const UpbSpec& spec);

/// One-parameter canonical family with zero Lorentz invariant: Bell-state
/// remote factors with local factors ((1,0),(0,1),(1,1),(t,1)).
struct Type2Spec {
  Complex t;
  std::array<double, 4> weights;  // defaults keep the partial transpose rank 4

  explicit Type2Spec(Complex t_);
  Type2Spec(Complex t_, std::array<double, 4> w);
};

MultiQubitState type2_state(const Type2Spec& spec, bool normalize = false);
MultiQubitState type2_state(Complex t, bool normalize = false);

/// Columns parametrize the kernel of type2_state(t) (orthonormalized).
Matrix type2_kernel_basis(Complex t);

/// The two 2x2 blocks left over after congruence-reducing the partial
/// transpose of the weighted family; both vanish iff it has rank four.
std::pair<Matrix2, Matrix2> type2_ppt_blocks(double l1, double l2, double l3,
                                             Complex t);

/// Mixing weight normalizer for the six-product-vector family. The
/// half-coefficient form is the exact value making the state rank four;
/// the ninth-coefficient variant is kept for comparison and generally
/// produces a rank-five state.
enum class QpAlphaFormula { kHalfCoefficients, kNinthCoefficients };

struct QpSpec {
  std::array<double, 5> p;  // positive, summing to 1
  QpAlphaFormula alpha_formula = QpAlphaFormula::kHalfCoefficients;
  void validate() const;
};

/// The six (unnormalized) product vectors spanning the family's support.
std::array<Vector, 6> qp_vectors();

double qp_alpha(const QpSpec& spec);

/// Q_p = (alpha sum_{i<6} p_i z_i z_i^dagger - z_6 z_6^dagger) / (alpha - 1)
/// over normalized z_i. Throws if the result fails PSD/rank-4 within
/// tolerance (wrong alpha formula for these weights).
MultiQubitState qp_state(const QpSpec& spec);

/// Split-tensor family with zero Lorentz invariant. All three tensor
/// orderings of the defining sum coincide.
MultiQubitState example10_state(Complex t);

/// Product transform V with V rho V^dagger proportional to type2_state(t);
/// valid for real t in (0,1) where the square-root branches are safe.
Matrix example10_connecting_transform(Complex t);

}  // namespace pptes

#endif
