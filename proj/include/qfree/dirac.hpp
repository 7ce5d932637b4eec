#pragma once

#include <string>
#include <vector>

#include "qfree/selfdual.hpp"

// The chiral Dirac example on the circle.  Vectors live on the Fourier window
// e_n, |n| <= W, stored at offset n + W; inner products use d lambda / 2 pi.
// I is the arc pi/2 <= lambda <= 3 pi/2 and f_m = sqrt2 (-1)^m z^{2m} chi_I.
namespace qfree::dirac {

/// <e_n, f_m> in closed form.
cplx overlap(Index m, Index n);
/// <e_n, chi_I e_k>.
cplx arc_coefficient(Index k, Index n);

/// Columns f_m, m = m_lo..m_hi, truncated to the window.
Matrix overlap_table(Index w, Index m_lo, Index m_hi);

/// 4 / (pi^2 W / 2): bound on the Fourier mass of f_m outside the window.
double tail_bound(Index w);

struct OverlapChecks {
  Index w = 0;
  Index m_loc = 0;
  double row_deviation = 0.0;  // max_m | sum_n |<e_n, f_m>|^2 - 1 |, |m| <= m_loc
  double orthogonality = 0.0;  // max_{m != m'} |<f_m, f_m'>_window|
  double tail_bound = 0.0;
};
OverlapChecks overlap_checks(Index w, Index m_loc);

/// Window matrix of v = 1 + sum_{m=start}^{m_loc-1} (f_{m+1} - f_m) <f_m, .>.
struct VWindow {
  Index w = 0;
  Index m_loc = 0;
  Index start = 0;
  Matrix f;  // f_0 .. f_{m_loc}
  Matrix v;
};
/// WindowTooSmall unless 1 <= m_loc <= W/4 and 0 <= start < m_loc.
VWindow build_v(Index w, Index m_loc, Index start = 0);

/// Restriction of v to the window minus the last local vector f_{m_loc}, whose
/// image is cut off by the truncated sum.
struct RectangularV {
  Matrix domain;  // orthonormal frame of window (-) f_{m_loc}
  Matrix vb;      // v * domain
};
RectangularV rectangular(const VWindow& v);

struct WindowChecks {
  Index w = 0;
  double isometry_defect = 0.0;  // ||(vB)*(vB) - 1||
  double shift_defect = 0.0;     // max_{0 <= m < m_loc/2} |<f_{m+1}, v f_m> - 1|
  double fixed_defect = 0.0;     // ||v f_{-1} - f_{-1}|| / ||f_{-1}||
};
WindowChecks window_checks(const VWindow& v);

/// Partial sums over nested windows, their increments and a power-law fit.
struct TrendRecord {
  std::string name;
  std::vector<double> partial;
  std::vector<double> increments;
  double slope = 0.0;
  bool increments_positive = false;
  bool increments_decreasing = false;
  bool consistent = false;
};

struct HsStudy {
  std::vector<Index> cutoffs;
  Index w_max = 0;
  Index m_loc = 0;
  std::vector<TrendRecord> records;  // commutator, E+ v E-, E- v E+
  std::string verdict;               // "consistent-with-HS" or "not-consistent-with-HS"
};

inline constexpr double kSlopeThreshold = -0.5;

/// Partial HS norms of [E+, v] (= -[E-, v]) and its two off-diagonal blocks
/// over the sub-windows |n| <= W_k of v built once at the largest cutoff.
/// Cutoffs must be strictly ascending (MalformedInput); NonMonotone when a
/// partial sum decreases.
HsStudy hs_commutator_study(const std::vector<Index>& cutoffs, Index start = 0);
/// Same detector on the Toeplitz matrix of u(lambda) = e^{i lambda/2},
/// -pi < lambda < pi: a unitary multiplier with a jump, whose commutator with
/// E+ is not HS.
HsStudy control_study(const std::vector<Index>& cutoffs);
/// Fourier coefficient of the control multiplier.
cplx control_multiplier(Index d);

struct IndexSample {
  Index w = 0;
  Index m_loc = 0;
  Index cokernel = 0;            // eigenvalues of (vB)(vB)* below 1/4
  Index kernel = 0;              // eigenvalues of (vB)*(vB) below 1/4
  double gap = 0.0;              // smallest singular value of vB
  double cokernel_overlap = 0.0; // |<c, f_start>| / ||f_start|| for the cokernel vector c
};
struct IndexEstimate {
  std::vector<IndexSample> samples;
  Index index = 0;
};
inline constexpr double kIndexThreshold = 0.5;
/// cokernel - kernel per cutoff (M_loc = W/4); Unstable unless the two largest
/// cutoffs agree.
IndexEstimate index_estimate(const std::vector<Index>& cutoffs, Index start = 0);

/// V = (v (x) 1_N) (+) (conj v (x) 1_N): half index N * ind v, stat_dim 2^{N ind v}.
struct Assembly {
  int species = 1;
  Index index_v = 1;
  Index half_index = 0;
  Index index = 0;
  Index stat_dim = 0;
};
Assembly assemble(int species, Index index_v);

/// chi_{S^1 \ I} e_k for k = -kmax..kmax.
std::vector<Vector> complement_family(Index w, Index kmax);

struct LocalPhase {
  cplx tau{1.0, 0.0};
  double residual = 0.0;  // max_g ||v g - tau g|| / ||g||
};
/// One complement component: least-squares unimodular phase for the family;
/// NoCommonPhase when the residual exceeds tol.
LocalPhase prop_loc_check(const Matrix& v, const std::vector<Vector>& family, double tol);

}  // namespace qfree::dirac
