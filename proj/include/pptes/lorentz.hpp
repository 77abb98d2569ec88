#ifndef PPTES_LORENTZ_HPP
#define PPTES_LORENTZ_HPP

#include "pptes/multiqubit.hpp"

namespace pptes {

struct LorentzInvariantValue {
  double value = 0.0;          // real part of Tr(rho^T eps_n rho eps_n)
  double imag_residual = 0.0;  // magnitude of the discarded imaginary part
};

/// The 2x2 Levi-Civita matrix ((0,1),(-1,0)).
Matrix2 epsilon();

/// n-fold tensor power of epsilon. eps_n^T = (-1)^n eps_n, eps_n^2 = (-1)^n I.
Matrix epsilon_n(int n);

/// Tr(rho^T eps_n rho eps_n); invariant under SLOCC with unit-determinant
/// local operators and under transposition.
LorentzInvariantValue lorentz_invariant(const MultiQubitState& state);
LorentzInvariantValue lorentz_invariant(const Matrix& rho);

/// (-1)^n |xi1^T eps_n xi2|^2 for pure-state cross terms.
double pairwise_pure_invariant(const Vector& xi1, const Vector& xi2, int n);

/// Rank-<=2 equal-weight mixture of m vectors in span{xi1, eps_n conj(xi1)}
/// at angles k*pi/m; for odd n its invariant is -1/2 for every m >= 2.
MultiQubitState extremal_rank2_mixture(int n, int m, const Vector& xi1);
MultiQubitState extremal_rank2_mixture(int n, int m, unsigned seed = 7);

}  // namespace pptes

#endif
