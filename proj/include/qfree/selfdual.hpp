#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qfree/errors.hpp"

namespace qfree {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default absolute tolerance for isometry / reality / projection checks.
inline constexpr double kTol = 1e-10;

/// Truncated self-dual space K = K1 (+) K2.
///
/// Coordinates are ordered (e_1..e_n, e_1*..e_n*).  The conjugation J swaps
/// the two halves and complex-conjugates entries, so J P1 J = 1 - P1 holds
/// exactly.
class SelfDualSpace {
 public:
  SelfDualSpace() = default;
  explicit SelfDualSpace(Index modes);

  Index modes() const { return modes_; }
  Index dim() const { return 2 * modes_; }

  /// J x
  Vector conj(const Eigen::Ref<const Vector>& x) const;
  /// J applied column-wise.
  Matrix conj_columns(const Eigen::Ref<const Matrix>& x) const;

  Matrix p1() const;
  Matrix p2() const;
  /// C = P1 - P2, the form defining kappa(f, g) = <f, C g>.
  Matrix kappa() const;
  /// Coordinate vector of e_i (particle == true) or e_i*.
  Vector basis(Index mode, bool particle = true) const;

  bool operator==(const SelfDualSpace&) const = default;

 private:
  Index modes_ = 0;
};

/// Dense operator between self-dual spaces, codomain.dim() x domain.dim().
///
/// The domain may be smaller than the codomain; such rectangular operators
/// model truncations of non-surjective isometries.
class BlockOperator {
 public:
  BlockOperator() = default;
  BlockOperator(SelfDualSpace domain, SelfDualSpace codomain, Matrix entries);

  static BlockOperator identity(const SelfDualSpace& space);
  static BlockOperator zero(const SelfDualSpace& domain, const SelfDualSpace& codomain);
  /// Assemble from the four blocks A_mn = P_m A P_n.
  static BlockOperator from_blocks(const SelfDualSpace& domain, const SelfDualSpace& codomain,
                                   const Matrix& a11, const Matrix& a12, const Matrix& a21,
                                   const Matrix& a22);

  const SelfDualSpace& domain() const { return domain_; }
  const SelfDualSpace& codomain() const { return codomain_; }
  const Matrix& matrix() const { return m_; }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }

  /// A_mn for m, n in {1, 2}, as a codomain.modes() x domain.modes() matrix.
  Matrix block(int m, int n) const;
  /// P_m A P_n embedded back into the full shape.
  BlockOperator embedded_block(int m, int n) const;

  BlockOperator adjoint() const;
  Vector apply(const Eigen::Ref<const Vector>& x) const;

  BlockOperator operator*(const BlockOperator& rhs) const;
  BlockOperator operator+(const BlockOperator& rhs) const;
  BlockOperator operator-(const BlockOperator& rhs) const;
  BlockOperator operator*(cplx s) const;

 private:
  SelfDualSpace domain_;
  SelfDualSpace codomain_;
  Matrix m_;
};

/// Subspace of a self-dual space carried by an orthonormal column frame.
class Subspace {
 public:
  Subspace() = default;
  Subspace(SelfDualSpace ambient, Matrix frame);

  static Subspace empty(const SelfDualSpace& ambient);

  const SelfDualSpace& ambient() const { return ambient_; }
  const Matrix& frame() const { return frame_; }
  Index dim() const { return frame_.cols(); }
  bool is_empty() const { return frame_.cols() == 0; }

  /// The conjugate subspace J S.
  Subspace conj() const;
  /// max |F*F - 1| entry.
  double orthonormality_defect() const;

 private:
  SelfDualSpace ambient_;
  Matrix frame_;
};

/// A-bar = J A J.
BlockOperator conjugate_op(const BlockOperator& a);

/// Frobenius / Hilbert-Schmidt norm with a fixed accumulation order.
double hs_norm(const BlockOperator& a);
double hs_norm(const Matrix& a);

/// Largest singular value.
double op_norm(const Matrix& a);
inline double op_norm(const BlockOperator& a) { return op_norm(a.matrix()); }

/// 1e-10 * max(1, sigma_max(a)).
double default_rank_tol(const Matrix& a);

/// Orthonormal basis of the span of right-singular vectors with singular
/// value <= tol.  Clusters of equal singular values are canonicalised by
/// pivoted Gram-Schmidt on the cluster projector, so the frame does not
/// depend on the rotation the SVD happened to return.
Subspace kernel_basis(const BlockOperator& a, double tol);
Subspace kernel_basis(const BlockOperator& a);
/// Same, for a raw matrix whose columns live in `ambient` coordinates.
Matrix kernel_frame(const Matrix& a, double tol);

/// Moore-Penrose pseudoinverse with singular values <= tol treated as zero.
BlockOperator pinv_on_range(const BlockOperator& a, double tol);
BlockOperator pinv_on_range(const BlockOperator& a);
Matrix pinv(const Matrix& a, double tol);

BlockOperator orthoprojection(const Subspace& s);

/// Orthonormalise the columns of `m` (rank-revealing), canonical frame of
/// their span.
Matrix orthonormal_span(const Matrix& m, double tol);

/// [P1, A] = P1_codomain A - A P1_domain.
BlockOperator commutator_p1(const BlockOperator& a);

}  // namespace qfree
