#ifndef PPTES_CLASSIFY_HPP
#define PPTES_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "pptes/lorentz.hpp"
#include "pptes/multiqubit.hpp"
#include "pptes/quadruple.hpp"

namespace pptes {

/// Bipartite cut of a three-qubit system: the named party against the rest.
enum class Partition { A_BC, B_AC, C_AB };

struct ProductVectorRecord {
  Vector vector;   // unit 8-vector in the original party order
  Partition partition = Partition::A_BC;
  Vector2 local;   // factor of the singled-out party
  Vector4 remote;  // factor of the remaining two parties, original order
  std::optional<std::array<Vector2, 3>> tripartite;  // per-party factors
  double residual = 0.0;  // norm of the component outside the subspace
};

/// All product vectors a (x) psi (up to scalar) in the span of `basis`
/// (8 x 4, any spanning set) under the chosen partition. The determinant of
/// the pencil built from the orthogonal complement is a quartic in the
/// local-factor parameter; its roots are found by companion matrix plus one
/// Newton step, with the point at infinity handled separately.
std::vector<ProductVectorRecord> bipartite_products_in_subspace(
    const Matrix& basis, Partition partition, double tol = 1e-8);

/// Factors v as a (x) b (x) c if possible.
std::optional<std::array<Vector2, 3>> is_tripartite_product(const Vector& v,
                                                            double tol = 1e-8);

/// True iff for each party every pair of local factors is linearly
/// independent.
bool general_position(const std::array<std::array<Vector2, 3>, 4>& factors,
                      double tol = 1e-8);

/// Moebius orbit of the cross ratio of the four party-1 local factors of the
/// range's bipartite product vectors.
CharacteristicSet characteristic_set(const MultiQubitState& state);

/// Decision of whether a state with kernel cross ratios (t1,t2,t3) is
/// SLOCC-equivalent to a UPB state: all real, none 0 or 1, and pairwise in
/// distinct intervals among (-inf,0), (0,1), (1,inf).
bool upb_constructible(Complex t1, Complex t2, Complex t3, double tol = 1e-8);

struct BiseparableTerm {
  Vector2 local;   // unit
  Vector4 remote;  // unit, entangled
  double weight;   // positive
};

/// Unique decomposition rho = sum_i w_i |a_i><a_i| (x) |psi_i><psi_i| across
/// the A|BC cut of a rank-four PPTES.
std::array<BiseparableTerm, 4> decompose_biseparable(
    const MultiQubitState& state);

struct VerificationReport {
  bool hermitian_psd = false;
  bool rank4 = false;
  bool ppt = false;
  std::array<bool, 3> pt_rank4 = {false, false, false};
  bool range_ces = false;  // no tripartite product vector in the range
  std::array<int, 3> range_product_counts = {0, 0, 0};
  std::array<int, 3> kernel_product_counts = {0, 0, 0};
  bool entangled_rank4_pptes = false;  // all checks pass
  std::vector<std::string> failures;
};

/// Full battery of rank-four PPTES checks; failures are report entries,
/// never exceptions.
VerificationReport verify_rank4_pptes(const MultiQubitState& state);

enum class StateType { TypeI, TypeII };
enum class UpbVerdict { UpbConstructible, NotUpbConstructible };

struct ClassificationReport {
  LorentzInvariantValue invariant;
  StateType type = StateType::TypeI;
  std::vector<ProductVectorRecord> kernel_products;
  std::optional<bool> in_general_position;
  std::optional<std::array<Complex, 3>> t_triple;
  UpbVerdict upb_verdict = UpbVerdict::NotUpbConstructible;
  std::optional<CharacteristicSet> canonical_t_orbit;
  std::vector<std::string> diagnostics;
};

/// The full classification pipeline for a verified rank-four PPTES:
/// invariant, type, kernel product-vector analysis, UPB decision, and the
/// canonical one-parameter orbit for zero-invariant states.
ClassificationReport classify(const MultiQubitState& state);

enum class SloccVerdict { Equivalent, NotEquivalent, Inconclusive };

/// Characteristic-set comparison; a full iff only within the zero-invariant
/// family, a necessary condition otherwise.
SloccVerdict slocc_compare(const MultiQubitState& a, const MultiQubitState& b);

}  // namespace pptes

#endif
