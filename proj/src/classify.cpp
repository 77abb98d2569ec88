#include "pptes/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pptes {

namespace {

// Basis permutation that moves the singled-out party to the most
// significant qubit, keeping the other two in original order.
std::array<int, 8> front_permutation(Partition part) {
  const int local = static_cast<int>(part);  // 0,1,2
  std::array<int, 8> perm{};
  for (int idx = 0; idx < 8; ++idx) {
    const std::array<int, 3> bits = {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
    int out = bits[local] << 2;
    int shift = 1;
    for (int q = 0; q < 3; ++q) {
      if (q == local) continue;
      out |= bits[q] << shift;
      --shift;
    }
    perm[idx] = out;
  }
  return perm;
}

Vector permute_to_front(const Vector& v, Partition part) {
  const auto perm = front_permutation(part);
  Vector out(8);
  for (int i = 0; i < 8; ++i) out(perm[i]) = v(i);
  return out;
}

Vector permute_from_front(const Vector& v, Partition part) {
  const auto perm = front_permutation(part);
  Vector out(8);
  for (int i = 0; i < 8; ++i) out(i) = v(perm[i]);
  return out;
}

// Degree-4 polynomial through 5 sample points of s -> det M(s).
Eigen::Matrix<Complex, 5, 1> fit_quartic(
    const std::function<Complex(Complex)>& f) {
  Eigen::Matrix<Complex, 5, 5> vand;
  Eigen::Matrix<Complex, 5, 1> vals;
  for (int k = 0; k < 5; ++k) {
    const double th = 2.0 * std::numbers::pi * k / 5.0;
    const Complex node(1.37 * std::cos(th), 1.37 * std::sin(th));
    Complex pw = 1.0;
    for (int j = 0; j < 5; ++j) {
      vand(k, j) = pw;
      pw *= node;
    }
    vals(k) = f(node);
  }
  return vand.fullPivLu().solve(vals);
}

Complex poly_eval(const Eigen::Matrix<Complex, 5, 1>& c, Complex s) {
  Complex acc = 0.0;
  for (int j = 4; j >= 0; --j) acc = acc * s + c(j);
  return acc;
}

Complex poly_deriv(const Eigen::Matrix<Complex, 5, 1>& c, Complex s) {
  Complex acc = 0.0;
  for (int j = 4; j >= 1; --j) acc = acc * s + double(j) * c(j);
  return acc;
}

std::vector<Complex> poly_roots(const Eigen::Matrix<Complex, 5, 1>& coeff,
                                double rel_tol) {
  const double scale = coeff.cwiseAbs().maxCoeff();
  int deg = 4;
  while (deg > 0 && std::abs(coeff(deg)) <= rel_tol * scale) --deg;
  std::vector<Complex> roots;
  if (deg == 0) return roots;
  Matrix companion = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeff(i) / coeff(deg);
  Eigen::ComplexEigenSolver<Matrix> es(companion);
  for (int i = 0; i < deg; ++i) {
    Complex r = es.eigenvalues()(i);
    const Complex dp = poly_deriv(coeff, r);
    if (std::abs(dp) > 0) r -= poly_eval(coeff, r) / dp;  // one Newton polish
    roots.push_back(r);
  }
  // Merge near-coincident roots.
  std::vector<Complex> merged;
  for (const Complex& r : roots) {
    bool dup = false;
    for (const Complex& m : merged)
      if (std::abs(r - m) <= 1e-7 * (1.0 + std::abs(m))) dup = true;
    if (!dup) merged.push_back(r);
  }
  return merged;
}

std::optional<std::pair<Vector2, Vector2>> split_two_qubit(const Vector4& v,
                                                           double tol) {
  Matrix2 m = matrixize(v);
  Eigen::JacobiSVD<Matrix2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(1) > tol * svd.singularValues()(0))
    return std::nullopt;
  Vector2 a = svd.matrixU().col(0);
  Vector2 b = svd.matrixV().col(0).conjugate();
  // Scale so that a (x) b reproduces v.
  a *= svd.singularValues()(0);
  return std::make_pair(a, b);
}

std::array<Vector2, 3> assemble_tripartite(Partition part, const Vector2& local,
                                           const Vector2& rem1,
                                           const Vector2& rem2) {
  switch (part) {
    case Partition::A_BC: return {local, rem1, rem2};
    case Partition::B_AC: return {rem1, local, rem2};
    default: return {rem1, rem2, local};
  }
}

VectorQuadruple local_quadruple(const std::vector<ProductVectorRecord>& recs) {
  if (recs.size() != 4)
    throw std::runtime_error("expected exactly four product vectors, got " +
                             std::to_string(recs.size()));
  VectorQuadruple q;
  for (int i = 0; i < 4; ++i) q.x[i] = recs[i].local;
  return q;
}

Matrix range_basis(const MultiQubitState& state) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(state.matrix());
  const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<int> idx;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > kRankTol * emax) idx.push_back(i);
  Matrix out(8, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(idx[i]);
  return out;
}

constexpr std::array<Partition, 3> kPartitions = {
    Partition::A_BC, Partition::B_AC, Partition::C_AB};

}  // namespace

std::vector<ProductVectorRecord> bipartite_products_in_subspace(
    const Matrix& basis, Partition partition, double tol) {
  if (basis.rows() != 8)
    throw std::invalid_argument("basis must consist of 8-vectors");
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix full = Matrix(qr.householderQ());
  if (numeric_rank(basis) != 4)
    throw std::invalid_argument("basis does not span a 4-dimensional subspace");
  const Matrix span = full.leftCols(4);
  const Matrix compl4 = full.rightCols(4);

  // Complement rows in local-first coordinates, split into 4-blocks.
  std::array<Vector4, 4> u, w;
  for (int i = 0; i < 4; ++i) {
    const Vector r = permute_to_front(compl4.col(i), partition);
    u[i] = r.head<4>();
    w[i] = r.tail<4>();
  }
  const auto pencil = [&](Complex s) {
    Matrix4 m;
    for (int i = 0; i < 4; ++i)
      m.row(i) = s * u[i].adjoint() + w[i].adjoint();
    return m;
  };
  const auto coeff = fit_quartic(
      [&](Complex s) -> Complex { return pencil(s).determinant(); });
  const double cscale = coeff.cwiseAbs().maxCoeff();
  if (cscale <= 1e-13)
    throw std::runtime_error(
        "determinant pencil vanishes identically: continuum of product "
        "vectors");

  const Matrix proj = span * span.adjoint();
  std::vector<ProductVectorRecord> records;
  const auto emit = [&](const Vector2& a, const Matrix4& m) {
    Eigen::JacobiSVD<Matrix4> svd(m, Eigen::ComputeFullV);
    const Vector4 psi = svd.matrixV().col(3);
    Vector v = permute_from_front(tensor(Vector(a), Vector(psi)), partition);
    v.normalize();
    const double residual = (v - proj * v).norm();
    if (residual > tol) return;
    ProductVectorRecord rec;
    rec.vector = v;
    rec.partition = partition;
    rec.local = a.normalized();
    // Remote factor in original order of the two remaining parties.
    rec.remote = psi;
    rec.residual = residual;
    if (auto split = split_two_qubit(psi, 1e-8)) {
      rec.tripartite = assemble_tripartite(partition, rec.local,
                                           split->first.normalized(),
                                           split->second.normalized());
    }
    records.push_back(rec);
  };

  // Point at infinity: local factor (1,0).
  if (std::abs(coeff(4)) <= tol * cscale) {
    Matrix4 m;
    for (int i = 0; i < 4; ++i) m.row(i) = u[i].adjoint();
    emit(Vector2(1, 0), m);
  }
  for (const Complex& s : poly_roots(coeff, tol)) {
    emit(Vector2(s, 1).normalized(), pencil(s));
  }
  return records;
}

std::optional<std::array<Vector2, 3>> is_tripartite_product(const Vector& v,
                                                            double tol) {
  if (v.norm() == 0.0) throw std::invalid_argument("zero vector");
  const Vector n = v.normalized();
  // Party 1 against the rest.
  Eigen::Matrix<Complex, 2, 4> m;
  m << n(0), n(1), n(2), n(3),
       n(4), n(5), n(6), n(7);
  Eigen::JacobiSVD<Eigen::Matrix<Complex, 2, 4>> svd(
      m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(1) > tol * svd.singularValues()(0))
    return std::nullopt;
  const Vector2 a = svd.matrixU().col(0);
  const Vector4 rest = svd.matrixV().col(0).conjugate() * svd.singularValues()(0);
  const auto split = split_two_qubit(rest, tol);
  if (!split) return std::nullopt;
  return std::array<Vector2, 3>{a, split->first.normalized(),
                                split->second.normalized()};
}

bool general_position(const std::array<std::array<Vector2, 3>, 4>& factors,
                      double tol) {
  for (int party = 0; party < 3; ++party)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const Vector2& a = factors[i][party];
        const Vector2& b = factors[j][party];
        const Complex det = a(0) * b(1) - a(1) * b(0);
        if (std::abs(det) <= tol * a.norm() * b.norm()) return false;
      }
  return true;
}

CharacteristicSet characteristic_set(const MultiQubitState& state) {
  const auto recs =
      bipartite_products_in_subspace(range_basis(state), Partition::A_BC);
  return t_orbit(cross_ratio(local_quadruple(recs)));
}

bool upb_constructible(Complex t1, Complex t2, Complex t3, double tol) {
  std::array<int, 3> interval{};
  const std::array<Complex, 3> ts = {t1, t2, t3};
  for (int k = 0; k < 3; ++k) {
    switch (orthogonalizability(ts[k], tol)) {
      case Orthogonalizability::PairingA: interval[k] = 0; break;
      case Orthogonalizability::PairingB: interval[k] = 1; break;
      case Orthogonalizability::PairingC: interval[k] = 2; break;
      case Orthogonalizability::None: return false;
    }
  }
  return interval[0] != interval[1] && interval[0] != interval[2] &&
         interval[1] != interval[2];
}

std::array<BiseparableTerm, 4> decompose_biseparable(
    const MultiQubitState& state) {
  const auto recs =
      bipartite_products_in_subspace(range_basis(state), Partition::A_BC);
  if (recs.size() != 4)
    throw std::runtime_error("range does not carry exactly four bipartite "
                             "product vectors in the A|BC cut");
  // Weights from the 4x4 Gram system <e_i e_i^+, e_j e_j^+> w = <e_i e_i^+, rho>.
  Eigen::Matrix4d gram;
  Eigen::Vector4d rhs;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      gram(i, j) = std::norm(Complex(recs[i].vector.dot(recs[j].vector)));
    rhs(i) = (recs[i].vector.adjoint() * state.matrix() * recs[i].vector)
                 .value()
                 .real();
  }
  Eigen::Vector4d wts = gram.ldlt().solve(rhs);
  Matrix recon = Matrix::Zero(8, 8);
  std::array<BiseparableTerm, 4> terms;
  for (int i = 0; i < 4; ++i) {
    if (wts(i) < -1e-10 * state.matrix().trace().real())
      throw std::runtime_error(
          "negative weight: state is not a rank-four PPTES in this cut");
    const double wi = std::max(wts(i), 0.0);
    terms[i] = {recs[i].local.normalized(), recs[i].remote.normalized(), wi};
    recon += wi * (recs[i].vector * recs[i].vector.adjoint()).eval();
  }
  const double res = (recon - state.matrix()).norm();
  if (res > 1e-8 * state.matrix().norm())
    throw std::runtime_error("reconstruction residual too large: " +
                             std::to_string(res));
  return terms;
}

VerificationReport verify_rank4_pptes(const MultiQubitState& state) {
  VerificationReport rep;
  const Matrix& rho = state.matrix();
  const double scale = rho.cwiseAbs().maxCoeff();
  rep.hermitian_psd = is_hermitian(rho, 1e-10 * scale) &&
                      min_eigenvalue(rho) >= -1e-10 * scale &&
                      rho.trace().real() > 0;
  if (!rep.hermitian_psd) rep.failures.push_back("not Hermitian PSD");

  rep.rank4 = numeric_rank(rho) == 4;
  if (!rep.rank4) rep.failures.push_back("rank is not four");

  rep.ppt = is_ppt(state).ppt;
  if (!rep.ppt) rep.failures.push_back("a partial transpose is not PSD");

  for (int p = 1; p <= 3; ++p) {
    rep.pt_rank4[p - 1] = numeric_rank(partial_transpose(state, {p})) == 4;
    if (!rep.pt_rank4[p - 1])
      rep.failures.push_back("partial transpose " + std::to_string(p) +
                             " is not rank four");
  }

  if (rep.rank4) {
    const Matrix range = range_basis(state);
    const Matrix kernel = kernel_basis_matrix(rho);
    rep.range_ces = true;
    for (int k = 0; k < 3; ++k) {
      try {
        const auto rrecs = bipartite_products_in_subspace(range, kPartitions[k]);
        rep.range_product_counts[k] = static_cast<int>(rrecs.size());
        for (const auto& r : rrecs)
          if (r.tripartite) rep.range_ces = false;
        const auto krecs =
            bipartite_products_in_subspace(kernel, kPartitions[k]);
        rep.kernel_product_counts[k] = static_cast<int>(krecs.size());
      } catch (const std::exception& e) {
        rep.failures.push_back(std::string("product-vector search failed: ") +
                               e.what());
        rep.range_ces = false;
      }
      if (rep.range_product_counts[k] != 4)
        rep.failures.push_back("range does not have exactly four product "
                               "vectors in partition " + std::to_string(k));
      if (rep.kernel_product_counts[k] != 4)
        rep.failures.push_back("kernel does not have exactly four product "
                               "vectors in partition " + std::to_string(k));
    }
    if (!rep.range_ces)
      rep.failures.push_back("range contains a tripartite product vector");
  }

  rep.entangled_rank4_pptes = rep.failures.empty();
  return rep;
}

ClassificationReport classify(const MultiQubitState& state) {
  ClassificationReport rep;
  const MultiQubitState normalized(state.qubits(), state.normalized(),
                                   state.tol());
  rep.invariant = lorentz_invariant(normalized);
  const double ai = std::abs(rep.invariant.value);
  if (ai > 1e-9 && ai < 1e-6)
    rep.diagnostics.push_back("invariant in the borderline band (1e-9,1e-6)");

  if (ai <= 1e-9) {
    rep.type = StateType::TypeII;
    rep.upb_verdict = UpbVerdict::NotUpbConstructible;
    rep.canonical_t_orbit = characteristic_set(normalized);
    return rep;
  }

  rep.type = StateType::TypeI;
  rep.kernel_products = bipartite_products_in_subspace(
      kernel_basis_matrix(normalized.matrix()), Partition::A_BC);
  if (rep.kernel_products.size() != 4) {
    rep.diagnostics.push_back(
        "kernel search returned " +
        std::to_string(rep.kernel_products.size()) +
        " product vectors instead of four");
    rep.upb_verdict = UpbVerdict::NotUpbConstructible;
    return rep;
  }
  bool all_tripartite = true;
  for (const auto& r : rep.kernel_products)
    if (!r.tripartite) all_tripartite = false;
  if (!all_tripartite) {
    rep.upb_verdict = UpbVerdict::NotUpbConstructible;
    rep.diagnostics.push_back(
        "kernel product vectors are not all tripartite");
    return rep;
  }
  std::array<std::array<Vector2, 3>, 4> factors;
  for (int i = 0; i < 4; ++i) factors[i] = *rep.kernel_products[i].tripartite;
  rep.in_general_position = general_position(factors);
  if (!*rep.in_general_position) {
    rep.upb_verdict = UpbVerdict::NotUpbConstructible;
    rep.diagnostics.push_back(
        "tripartite kernel product vectors are not in general position");
    return rep;
  }
  std::array<Complex, 3> ts;
  for (int party = 0; party < 3; ++party) {
    VectorQuadruple q;
    for (int i = 0; i < 4; ++i) q.x[i] = factors[i][party];
    ts[party] = cross_ratio(q);
  }
  rep.t_triple = ts;
  rep.upb_verdict = upb_constructible(ts[0], ts[1], ts[2])
                        ? UpbVerdict::UpbConstructible
                        : UpbVerdict::NotUpbConstructible;
  return rep;
}

SloccVerdict slocc_compare(const MultiQubitState& a,
                           const MultiQubitState& b) {
  const CharacteristicSet orbit_a = characteristic_set(a);
  const CharacteristicSet orbit_b = characteristic_set(b);
  if (!orbit_a.equals(orbit_b)) return SloccVerdict::NotEquivalent;
  const double ia = std::abs(lorentz_invariant(a.normalized()).value);
  const double ib = std::abs(lorentz_invariant(b.normalized()).value);
  if (ia <= 1e-9 && ib <= 1e-9) return SloccVerdict::Equivalent;
  return SloccVerdict::Inconclusive;
}

}  // namespace pptes
