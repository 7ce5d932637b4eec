#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qfree/selfdual.hpp"

namespace qfree {

enum class GroupTag { U1, UN, SUN, Z2, Custom };

std::string to_string(GroupTag tag);
GroupTag group_tag_from_string(const std::string& s);

/// How one K1 mode transforms.  Conjugate modes K2 follow through J.
struct ModeLabel {
  int charge = 1;          // U(1): U e_i = exp(i charge lambda) e_i
  int multiplet = -1;      // U(N)/SU(N): modes sharing an id carry one copy of C^N
  int component = 0;       // position inside the multiplet
  bool conjugate = false;  // multiplet carries the conjugate representation
};

/// A gauge group together with its action on the domain and codomain modes.
struct GaugeAction {
  GroupTag group = GroupTag::U1;
  int n = 1;  // N for U(N)/SU(N)
  std::vector<ModeLabel> domain;
  std::vector<ModeLabel> codomain;
  /// Custom groups: explicit (domain U11, codomain U11) pairs.
  std::vector<std::pair<Matrix, Matrix>> custom;

  static GaugeAction u1(std::vector<int> domain_charges, std::vector<int> codomain_charges);
  static GaugeAction z2(Index domain_modes, Index codomain_modes);
  /// Every `n` consecutive modes form a multiplet (defining representation).
  static GaugeAction un(int n, Index domain_modes, Index codomain_modes, bool special = false);
};

/// One group element represented on both spaces.
struct GroupElement {
  Matrix abstract;           // e^{i lambda} (1x1), +-1 (1x1) or an N x N unitary
  BlockOperator on_domain;   // diag(u11, conj(u11))
  BlockOperator on_codomain;
  std::string label;
};

GroupElement make_element(const GaugeAction& action, const Matrix& abstract);

/// Default sample: lambda grid of `count` points (U1, default 64), the full
/// group (Z2), `count` Haar-random elements from `seed` (U(N), SU(N), default
/// 50) or the stored list (Custom).
std::vector<GroupElement> sample_elements(const GaugeAction& action, int count, std::uint64_t seed);
int default_sample_size(GroupTag tag);

/// Haar-random U(N) (or SU(N) when `special`).
Matrix haar_unitary(int n, bool special, std::mt19937_64& rng);

/// Compression F* U F of U to a subspace, with the invariance defect
/// ||(1 - FF*) U F|| checked against tol (NotInvariant).
Matrix compress(const Subspace& s, const BlockOperator& u, double tol);
/// Same for a kappa-orthonormal frame: (F* C U F).
Matrix compress_kappa(const Subspace& s, const BlockOperator& u, double tol);

/// det(U|_h); NotInvariant when h is not U-invariant.
cplx char_det_h(const Subspace& h, const BlockOperator& u, double tol = 1e-8);

/// Eigenvalues of a compressed action by Schur decomposition; fails with
/// NotInvariant if the compression is not normal to tol.
Vector compressed_eigenvalues(const Matrix& c, double tol = 1e-8);

/// Elementary symmetric polynomial e_l; zero for l > eigs.size().
cplx elementary_symmetric(const Vector& eigs, Index l);
/// Character of Lambda^l: e_l, with LevelOutOfRange unless 0 <= l <= dim.
cplx char_lambda(const Vector& eigs, Index l);
/// Complete homogeneous symmetric polynomial h_l (character of Sym^l).
cplx char_sym(const Vector& eigs, Index l);

/// Lambda^l(u) in the basis of increasing l-subsets (lexicographic).
Matrix lambda_power(const Matrix& u, Index l);

/// Increasing multi-indices of length 0..k over {0..k-1}: by length, then
/// lexicographically.
std::vector<std::vector<Index>> subsets_by_level(Index k);
/// Non-decreasing multi-indices of length 0..max_level over {0..k-1}.
std::vector<std::vector<Index>> multisets_by_level(Index k, Index max_level);

Index binomial(Index n, Index k);
Index multiset_count(Index n, Index k);

enum class Algebra { Car, Ccr };
std::string to_string(Algebra a);

struct CharacterSample {
  cplx det_h{1.0, 0.0};
  Vector k_eigs;
  std::string label;
};

struct SectorRow {
  Index level = 0;
  Index dimension = 0;
  std::vector<cplx> characters;
  int class_label = 0;
};

struct SectorTable {
  Algebra algebra = Algebra::Car;
  GroupTag group = GroupTag::U1;
  int n = 1;
  Index k_dim = 0;
  Index sample_size = 0;
  std::uint64_t seed = 0;
  double tol_char = 1e-9;
  std::vector<SectorRow> rows;
  std::vector<std::string> annotations;
};

/// Per-level characters chi_l(U) = det_h(U) e_l(U|k) (CAR) or h_l(U|k) (CCR)
/// on the sample; levels are grouped into classes by character equality.
SectorTable sector_table(Algebra algebra, GroupTag group, int n, Index k_dim,
                         const std::vector<CharacterSample>& samples, Index max_level,
                         std::uint64_t seed, double tol_char = 1e-9);

struct OracleComparison {
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Index worst_sample = -1;
  Index worst_level = -1;
};

/// Compares traces of the per-level oracle blocks with the table characters.
/// `oracle_traces[s][l]` is the trace of level l for sample s.
OracleComparison oracle_compare(const SectorTable& table,
                                const std::vector<std::vector<cplx>>& oracle_traces,
                                double tolerance);
/// Same, raising Mismatch on failure.
void require_oracle_match(const SectorTable& table,
                          const std::vector<std::vector<cplx>>& oracle_traces, double tolerance);

}  // namespace qfree
