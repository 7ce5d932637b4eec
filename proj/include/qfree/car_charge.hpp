#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfree/selfdual.hpp"

namespace qfree {

/// Index of a quasi-free endomorphism: a finite even count or infinite.
struct ExtendedIndex {
  bool infinite = false;
  Index value = 0;

  static ExtendedIndex finite(Index v) { return {false, v}; }
  static ExtendedIndex unbounded() { return {true, 0}; }
  std::string str() const { return infinite ? "infinite" : std::to_string(value); }
  bool operator==(const ExtendedIndex&) const = default;
};

/// Either an explicit index or "take it from the truncation".
struct DeclaredIndex {
  bool from_truncation = true;
  ExtendedIndex index;

  static DeclaredIndex truncation() { return {}; }
  static DeclaredIndex of(ExtendedIndex i) { return {false, i}; }
};

/// Statistics dimension, possibly infinite.
struct ExtendedCount {
  bool infinite = false;
  std::uint64_t value = 0;

  std::string str() const { return infinite ? "infinite" : std::to_string(value); }
  bool operator==(const ExtendedCount&) const = default;
};

struct MembershipRecord {
  bool is_isometry = false;
  bool is_real = false;
  bool implementable = false;
  double isometry_defect = 0.0;  // ||V*V - 1|| (CAR) or ||V+V - 1|| (CCR)
  double reality_defect = 0.0;   // ||conj(V) - V||
  double hs_defect = 0.0;        // ||[P1, V]||_HS
  double tol = kTol;
};

struct CarIsometry {
  BlockOperator v;
  DeclaredIndex declared;
};

/// Residuals of the self-tests run on the basis projection P.
struct ProjectionChecks {
  double idempotence = 0.0;     // ||P^2 - P||
  double self_adjoint = 0.0;    // ||P - P*||  (CAR) or ||P - P+|| (CCR)
  double conjugation = 0.0;     // ||conj(P) - (1 - P)||
  double h_recovery = 0.0;      // ||[ker P11] - [h]||
  double t_recovery = 0.0;      // ||P21 P11^-1 - T||
};

struct CarChargeData {
  MembershipRecord membership;
  Subspace h;
  BlockOperator T;
  BlockOperator P;
  Subspace k;
  ExtendedIndex ind;
  ExtendedCount stat_dim;
  double hs_defect = 0.0;
  double t_norm = 0.0;
  ProjectionChecks checks;
};

MembershipRecord car_membership(const BlockOperator& v, double tol = kTol);

/// dim ker V*, from the structural shape of a truncation and audited against
/// the numerical kernel; DimensionMismatch when they disagree.
Index car_truncation_index(const BlockOperator& v, double tol = kTol);

/// h = V12(ker V22)
Subspace compute_h(const BlockOperator& v, double tol = kTol);
/// T = V21 V11^-1 - V22^-1* V12* [ker V11*], as an operator on the codomain.
BlockOperator compute_T_car(const BlockOperator& v, double tol = kTol);
/// P = (P1 + T)(P1 + T*T)^-1 (P1 + T*) - [h] + [h*]; self-tested.
BlockOperator compute_P_car(const Subspace& h, const BlockOperator& t, double tol = kTol,
                            ProjectionChecks* checks = nullptr);
/// k = P(ker V*), with dim k = ind / 2 enforced.
Subspace compute_k_car(const BlockOperator& v, const BlockOperator& p, Index ind,
                       double tol = kTol);

ExtendedCount statistics_dimension_car(ExtendedIndex ind);

/// (-1)^{dim ker V11}; requires index zero.
int z2_index(const BlockOperator& v, double tol = kTol);

struct U1Charge {
  Index index = 0;             // dim ker V++* - dim ker V++
  Index det_h_exponent = 0;    // det_h(U_lambda) = exp(i lambda * exponent)
  std::string convention;      // how the two relate, see u1_charge
};

/// Fredholm index of the charge-(+) block of V11.  Charges are +1/-1 labels
/// per K1 mode of the domain and codomain.  The det_h character on h is
/// computed independently and the report says whether it equals
/// exp(+i lambda ind), exp(-i lambda ind), both (ind = 0), or neither.
U1Charge u1_charge(const BlockOperator& v, const std::vector<int>& domain_charges,
                   const std::vector<int>& codomain_charges, double tol = kTol);

/// Membership, h, T, P, k, index and statistics dimension in one pass.
/// Throws NotInSemigroup when membership fails.
CarChargeData analyze_car(const CarIsometry& iso, double tol = kTol);

}  // namespace qfree
