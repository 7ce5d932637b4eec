#pragma once

#include "qfree/car_charge.hpp"

namespace qfree {

struct CcrIsometry {
  BlockOperator v;
  DeclaredIndex declared;
};

/// Residuals of the self-tests in compute_p / compute_P_ccr.
struct CcrChecks {
  double a_split = 0.0;         // ||A+ conj(A+)||
  double p_idempotence = 0.0;   // ||p^2 - p||
  double p_kappa_adjoint = 0.0; // ||p+ - p||
  double p_support = 0.0;       // ||(1 - E) p||
  double idempotence = 0.0;     // ||P^2 - P||
  double kappa_adjoint = 0.0;   // ||P+ - P||
  double conjugation = 0.0;     // ||conj(P) + P - 1||
  double min_positivity = 0.0;  // smallest eigenvalue of F* C F over an orthonormal frame F of ran P
  double t_symmetry = 0.0;      // ||T - conj(T*)||
};

struct CcrChargeData {
  MembershipRecord membership;
  BlockOperator E;  // [ker V+]
  BlockOperator p;
  BlockOperator P;
  BlockOperator T;
  Subspace k;       // kappa-orthonormal frame
  ExtendedIndex ind;
  ExtendedCount stat_dim;
  double hs_defect = 0.0;
  double t_norm = 0.0;
  CcrChecks checks;
};

/// A+ = C_domain A* C_codomain (maps codomain to domain).
BlockOperator kappa_adjoint(const BlockOperator& a);

MembershipRecord ccr_membership(const BlockOperator& v, double tol = kTol);

/// dim ker V+, structural count audited against the numerical kernel.
Index ccr_truncation_index(const BlockOperator& v, double tol = kTol);

/// p = A+^-1 C with A = E C E and E = [ker V+].  DegenerateForm when kappa is
/// (numerically) degenerate on ker V+ or the spectral split fails.
BlockOperator compute_p(const BlockOperator& v, double tol = kTol, CcrChecks* checks = nullptr);

/// P = V P1 V+ + p, with the basis-projection identities checked.
BlockOperator compute_P_ccr(const BlockOperator& v, const BlockOperator& p, double tol = kTol,
                            CcrChecks* checks = nullptr);

/// T = P21 P11^-1; symmetric, NormBoundViolation unless ||T|| < 1 - 1e-8.
BlockOperator compute_T_ccr(const BlockOperator& P, double tol = kTol, CcrChecks* checks = nullptr);

/// Kappa-orthonormal frame of P(ker V+), Gram-Schmidt in kappa pivoting on
/// the largest kappa-norm.
Subspace compute_k_ccr(const BlockOperator& v, const BlockOperator& P, Index ind,
                       double tol = kTol);

ExtendedCount statistics_dimension_ccr(ExtendedIndex ind);

CcrChargeData analyze_ccr(const CcrIsometry& iso, double tol = kTol);

}  // namespace qfree
