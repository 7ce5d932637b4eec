#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "qfree/selfdual.hpp"

// Brute-force Fock spaces used as an independent check of the charge data.
namespace qfree {

using SparseMatrix = Eigen::SparseMatrix<cplx>;
using MultiIndex = std::vector<Index>;

/// Antisymmetric Fock space over n <= 12 modes in the occupation-subset
/// basis: basis state s has mode i occupied iff bit i of s is set, and
/// a*(e_i) picks up (-1)^{#occupied modes below i}.
class FermiFock {
 public:
  explicit FermiFock(Index modes, Index cap = 4096);

  Index modes() const { return modes_; }
  Index dim() const { return Index{1} << modes_; }
  const SelfDualSpace& space() const { return space_; }

  const SparseMatrix& annihilator(Index i) const;
  SparseMatrix creator(Index i) const;
  /// a*(P1 f) + a(P1 f*): coefficients f_i on a*_i and f_{n+i} on a_i.
  SparseMatrix pi(const Eigen::Ref<const Vector>& f) const;
  /// Diagonal of Gamma(-1) = (-1)^N.
  const RealVector& grading() const { return grading_; }
  /// (1 - i Gamma(-1)) / sqrt 2, diagonal.
  Vector theta_diagonal() const;
  /// theta pi(f) theta* = i pi(f) Gamma(-1).
  SparseMatrix psi(const Eigen::Ref<const Vector>& f) const;
  /// (+)_k Lambda^k(U11); NotGaugeCompatible unless U commutes with P1 and J.
  Matrix gamma(const BlockOperator& u, double tol = 1e-10) const;
  Vector vacuum() const;

 private:
  Index modes_;
  SelfDualSpace space_;
  std::vector<SparseMatrix> annihilators_;
  RealVector grading_;
};

/// Symmetric Fock space over n <= 4 modes with per-mode occupation cutoff
/// M <= 8; basis index sum_i m_i (M+1)^i.
class BoseFock {
 public:
  BoseFock(Index modes, Index cutoff);

  Index modes() const { return modes_; }
  Index cutoff() const { return cutoff_; }
  Index dim() const { return dim_; }
  const SelfDualSpace& space() const { return space_; }

  const SparseMatrix& annihilator(Index i) const;
  SparseMatrix creator(Index i) const;
  SparseMatrix pi(const Eigen::Ref<const Vector>& f) const;
  Index occupation(Index state, Index mode) const;
  Index total_number(Index state) const;
  /// States with every occupation below the cutoff, where [a_i, a_j*] is exact.
  std::vector<char> interior_mask() const;
  /// Second quantisation of U11.  Exact on the whole truncated space when U11
  /// is diagonal; otherwise computed on total particle number <= M (other
  /// columns are zero).
  SparseMatrix gamma(const BlockOperator& u, double tol = 1e-10) const;
  Vector vacuum() const;

 private:
  Index modes_, cutoff_, dim_;
  SelfDualSpace space_;
  std::vector<SparseMatrix> annihilators_;
};

// ------------------------------------------------------------ fermionic

/// det(1 + t*t)^{-1/4} psi(e_1)..psi(e_L) exp(1/2 sum conj(t_ik) a*_i a*_k) Omega,
/// with t the K1 -> K2 block of T and e_j the frame of h.
Vector omega_P_fermi(const FermiFock& f, const Subspace& h, const BlockOperator& t);

/// max over an orthonormal frame x of ran(1 - P) of ||pi(x) omega||.
double annihilation_residual(const FermiFock& f, const BlockOperator& p, const Vector& omega);

struct OmegaSet {
  std::vector<MultiIndex> labels;
  std::vector<Vector> vectors;
  double gram_defect = 0.0;      // max |<Omega_a, Omega_b> - delta_ab|
};

/// Omega_alpha = psi(g_a1) .. psi(g_al) Omega_P over increasing multi-indices
/// (by level, then lexicographic).  OrthonormalityFailure above tol.
OmegaSet omega_alpha_fermi(const FermiFock& f, const Vector& omega_p, const Subspace& k,
                           double tol = 1e-10);

struct ImplementerSet {
  std::vector<MultiIndex> labels;
  std::vector<Matrix> psi;        // codomain.dim() x domain.dim()
  double isometry_defect = 0.0;   // max ||Psi_a* Psi_a - 1||
  double orthogonality = 0.0;     // max_{a != b} ||Psi_a* Psi_b||
  double completeness = 0.0;      // ||sum Psi_a Psi_a* - 1||
  double imp_residual = 0.0;      // max_f ||sum Psi_a pi(f) Psi_a* - pi(V f)||
};

/// Psi_a |S> = pi(V e_s1) .. pi(V e_sk) Omega_a.  ImplementationDefect when
/// any residual exceeds tol.
ImplementerSet implementers_from_omegas(const FermiFock& domain, const FermiFock& codomain,
                                        const BlockOperator& v, const OmegaSet& omegas,
                                        double tol = 1e-10);

// -------------------------------------------------------------- bosonic

struct BoseOmega {
  Vector omega;
  double tail = 0.0;  // 1 - ||truncated Omega_P||^2
};

/// det(1 - t*t)^{1/4} exp(-1/2 sum conj(t_ik) a*_i a*_k) Omega on the
/// truncation; CutoffTooSmall when the tail exceeds tail_limit.
BoseOmega omega_P_bose(const BoseFock& f, const BlockOperator& t, double tail_limit = 1e-8);

struct BoseOmegaSet {
  std::vector<MultiIndex> labels;    // non-decreasing multi-indices by level
  std::vector<Vector> polar;         // psi_a1 .. psi_al Omega_P, psi_j polar part of pi(g_j)
  std::vector<Vector> direct;        // normalised pi(g_a1) .. pi(g_al) exp(..) Omega
  std::vector<cplx> constants;       // polar = c * unnormalised direct vector
  double proportionality = 0.0;      // max ||polar - c * raw||
  double gram_defect = 0.0;          // of the polar family
};

BoseOmegaSet omega_alpha_bose(const BoseFock& f, const BoseOmega& omega_p, const BlockOperator& t,
                              const Subspace& k, Index max_level, double tol);

// ---------------------------------------------------------------- shared

/// <Omega_a, G Omega_b>; NotInvariant unless unitary to tol.
Matrix charge_rep_matrix(const std::vector<Vector>& omegas, const Matrix& g, double tol);
Matrix charge_rep_matrix(const std::vector<Vector>& omegas, const SparseMatrix& g, double tol);

/// Traces of the diagonal blocks of `rep` grouped by label length.
std::vector<cplx> level_traces(const Matrix& rep, const std::vector<MultiIndex>& labels,
                               Index levels);

/// ||(1 - Pi) G Pi|| for Pi the projection onto span{omegas}.
double invariance_residual(const std::vector<Vector>& omegas, const Matrix& g);

/// max_a of the distance of Gamma_c Psi_a Gamma_d* from span{Psi_b}, using
/// the Hilbert-Schmidt inner product tr(A* B) / dim.
double implementer_gauge_residual(const ImplementerSet& s, const Matrix& gamma_codomain,
                                  const Matrix& gamma_domain);

}  // namespace qfree
