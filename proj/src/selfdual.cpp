#include "qfree/selfdual.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "qfree/kernels.hpp"

namespace qfree {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotInSemigroup: return "NotInSemigroup";
    case ErrorKind::AntisymmetryViolation: return "AntisymmetryViolation";
    case ErrorKind::RecoveryMismatch: return "RecoveryMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OddIndex: return "OddIndex";
    case ErrorKind::NonzeroIndex: return "NonzeroIndex";
    case ErrorKind::NotChargeDiagonal: return "NotChargeDiagonal";
    case ErrorKind::DegenerateForm: return "DegenerateForm";
    case ErrorKind::NormBoundViolation: return "NormBoundViolation";
    case ErrorKind::NotGaugeCompatible: return "NotGaugeCompatible";
    case ErrorKind::OrthonormalityFailure: return "OrthonormalityFailure";
    case ErrorKind::ImplementationDefect: return "ImplementationDefect";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::NoCommonPhase: return "NoCommonPhase";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- space

SelfDualSpace::SelfDualSpace(Index modes) : modes_(modes) {
  require(modes >= 0, ErrorKind::ShapeMismatch, "negative mode count");
}

Vector SelfDualSpace::conj(const Eigen::Ref<const Vector>& x) const {
  require(x.size() == dim(), ErrorKind::ShapeMismatch, "conj: vector size");
  Vector y(dim());
  y.head(modes_) = x.tail(modes_).conjugate();
  y.tail(modes_) = x.head(modes_).conjugate();
  return y;
}

Matrix SelfDualSpace::conj_columns(const Eigen::Ref<const Matrix>& x) const {
  require(x.rows() == dim(), ErrorKind::ShapeMismatch, "conj_columns: row count");
  Matrix y(x.rows(), x.cols());
  y.topRows(modes_) = x.bottomRows(modes_).conjugate();
  y.bottomRows(modes_) = x.topRows(modes_).conjugate();
  return y;
}

Matrix SelfDualSpace::p1() const {
  Matrix p = Matrix::Zero(dim(), dim());
  p.topLeftCorner(modes_, modes_).setIdentity();
  return p;
}

Matrix SelfDualSpace::p2() const {
  Matrix p = Matrix::Zero(dim(), dim());
  p.bottomRightCorner(modes_, modes_).setIdentity();
  return p;
}

Matrix SelfDualSpace::kappa() const { return p1() - p2(); }

Vector SelfDualSpace::basis(Index mode, bool particle) const {
  require(mode >= 0 && mode < modes_, ErrorKind::ShapeMismatch, "basis: mode out of range");
  Vector e = Vector::Zero(dim());
  e[particle ? mode : modes_ + mode] = 1.0;
  return e;
}

// ------------------------------------------------------------- operator

BlockOperator::BlockOperator(SelfDualSpace domain, SelfDualSpace codomain, Matrix entries)
    : domain_(domain), codomain_(codomain), m_(std::move(entries)) {
  require(m_.rows() == codomain_.dim() && m_.cols() == domain_.dim(), ErrorKind::ShapeMismatch,
          "matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
              ", spaces need " + std::to_string(codomain_.dim()) + "x" +
              std::to_string(domain_.dim()));
}

BlockOperator BlockOperator::identity(const SelfDualSpace& space) {
  return {space, space, Matrix::Identity(space.dim(), space.dim())};
}

BlockOperator BlockOperator::zero(const SelfDualSpace& domain, const SelfDualSpace& codomain) {
  return {domain, codomain, Matrix::Zero(codomain.dim(), domain.dim())};
}

BlockOperator BlockOperator::from_blocks(const SelfDualSpace& domain,
                                         const SelfDualSpace& codomain, const Matrix& a11,
                                         const Matrix& a12, const Matrix& a21,
                                         const Matrix& a22) {
  const Index r = codomain.modes(), c = domain.modes();
  for (const Matrix* b : {&a11, &a12, &a21, &a22})
    require(b->rows() == r && b->cols() == c, ErrorKind::ShapeMismatch, "from_blocks: block shape");
  Matrix m(2 * r, 2 * c);
  m << a11, a12, a21, a22;
  return {domain, codomain, std::move(m)};
}

Matrix BlockOperator::block(int m, int n) const {
  require((m == 1 || m == 2) && (n == 1 || n == 2), ErrorKind::ShapeMismatch, "block index");
  const Index r = codomain_.modes(), c = domain_.modes();
  return m_.block(m == 1 ? 0 : r, n == 1 ? 0 : c, r, c);
}

BlockOperator BlockOperator::embedded_block(int m, int n) const {
  const Index r = codomain_.modes(), c = domain_.modes();
  Matrix out = Matrix::Zero(m_.rows(), m_.cols());
  out.block(m == 1 ? 0 : r, n == 1 ? 0 : c, r, c) = block(m, n);
  return {domain_, codomain_, std::move(out)};
}

BlockOperator BlockOperator::adjoint() const { return {codomain_, domain_, m_.adjoint()}; }

Vector BlockOperator::apply(const Eigen::Ref<const Vector>& x) const {
  require(x.size() == m_.cols(), ErrorKind::ShapeMismatch, "apply: vector size");
  return m_ * x;
}

BlockOperator BlockOperator::operator*(const BlockOperator& rhs) const {
  require(domain_ == rhs.codomain_, ErrorKind::ShapeMismatch, "product: spaces do not chain");
  return {rhs.domain_, codomain_, m_ * rhs.m_};
}

BlockOperator BlockOperator::operator+(const BlockOperator& rhs) const {
  require(domain_ == rhs.domain_ && codomain_ == rhs.codomain_, ErrorKind::ShapeMismatch,
          "sum: spaces differ");
  return {domain_, codomain_, m_ + rhs.m_};
}

BlockOperator BlockOperator::operator-(const BlockOperator& rhs) const {
  require(domain_ == rhs.domain_ && codomain_ == rhs.codomain_, ErrorKind::ShapeMismatch,
          "difference: spaces differ");
  return {domain_, codomain_, m_ - rhs.m_};
}

BlockOperator BlockOperator::operator*(cplx s) const { return {domain_, codomain_, m_ * s}; }

// ------------------------------------------------------------- subspace

Subspace::Subspace(SelfDualSpace ambient, Matrix frame)
    : ambient_(ambient), frame_(std::move(frame)) {
  if (frame_.size() == 0) frame_.resize(ambient_.dim(), 0);
  require(frame_.rows() == ambient_.dim(), ErrorKind::ShapeMismatch, "subspace frame rows");
}

Subspace Subspace::empty(const SelfDualSpace& ambient) {
  return {ambient, Matrix(ambient.dim(), 0)};
}

Subspace Subspace::conj() const { return {ambient_, ambient_.conj_columns(frame_)}; }

double Subspace::orthonormality_defect() const {
  if (is_empty()) return 0.0;
  const Matrix g = frame_.adjoint() * frame_ - Matrix::Identity(dim(), dim());
  return g.cwiseAbs().maxCoeff();
}

// ----------------------------------------------------------- primitives

namespace {

// Pivoted Gram-Schmidt on the columns of the projector K K^H.  The result
// spans the same space as K and depends only on that space.
Matrix canonical_frame(const Matrix& k) {
  const Index n = k.rows(), r = k.cols();
  if (r == 0) return Matrix(n, 0);
  Matrix residual = k * k.adjoint();
  Matrix out(n, r);
  for (Index c = 0; c < r; ++c) {
    Index pivot = 0;
    double best = -1.0;
    for (Index j = 0; j < n; ++j) {
      const double nj = residual.col(j).norm();
      if (nj > best * (1.0 + 1e-12)) {
        best = nj;
        pivot = j;
      }
    }
    Vector q = residual.col(pivot) / best;
    const cplx lead = q[pivot];
    if (std::abs(lead) > 0.0) q *= std::conj(lead) / std::abs(lead);
    out.col(c) = q;
    residual -= q * (q.adjoint() * residual);
  }
  return out;
}

struct Svd {
  RealVector sigma;  // length cols, descending, zero-padded
  Matrix u;
  Matrix v;          // full right singular vectors
};

Svd full_svd(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Svd out;
  out.sigma = RealVector::Zero(std::max(a.rows(), a.cols()));
  out.sigma.head(svd.singularValues().size()) = svd.singularValues();
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  return out;
}

}  // namespace

double hs_norm(const Matrix& a) { return std::sqrt(kernels::sum_abs2(a)); }
double hs_norm(const BlockOperator& a) { return hs_norm(a.matrix()); }

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

double default_rank_tol(const Matrix& a) { return 1e-10 * std::max(1.0, op_norm(a)); }

BlockOperator conjugate_op(const BlockOperator& a) {
  // J_cod A J_dom in coordinates: swap both halves and conjugate.
  const Index r = a.codomain().modes(), c = a.domain().modes();
  const Matrix& m = a.matrix();
  Matrix out(m.rows(), m.cols());
  out.topLeftCorner(r, c) = m.bottomRightCorner(r, c).conjugate();
  out.topRightCorner(r, c) = m.bottomLeftCorner(r, c).conjugate();
  out.bottomLeftCorner(r, c) = m.topRightCorner(r, c).conjugate();
  out.bottomRightCorner(r, c) = m.topLeftCorner(r, c).conjugate();
  return {a.domain(), a.codomain(), std::move(out)};
}

Matrix kernel_frame(const Matrix& a, double tol) {
  require(tol > 0.0, ErrorKind::ShapeMismatch, "kernel tolerance must be positive");
  const Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return canonical_frame(Matrix::Identity(n, n));
  const Svd s = full_svd(a);
  // Right singular vector j has singular value sigma[j] (zero beyond rank).
  std::vector<Index> idx;
  for (Index j = 0; j < n; ++j)
    if (s.sigma[j] <= tol) idx.push_back(j);
  std::sort(idx.begin(), idx.end(), [&](Index x, Index y) {
    if (s.sigma[x] != s.sigma[y]) return s.sigma[x] < s.sigma[y];
    return x < y;
  });
  Matrix out(n, static_cast<Index>(idx.size()));
  Index filled = 0;
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t stop = start + 1;
    while (stop < idx.size() && s.sigma[idx[stop]] - s.sigma[idx[start]] <= tol) ++stop;
    Matrix cluster(n, static_cast<Index>(stop - start));
    for (std::size_t t = start; t < stop; ++t)
      cluster.col(static_cast<Index>(t - start)) = s.v.col(idx[t]);
    out.middleCols(filled, cluster.cols()) = canonical_frame(cluster);
    filled += cluster.cols();
    start = stop;
  }
  return out;
}

Subspace kernel_basis(const BlockOperator& a, double tol) {
  return {a.domain(), kernel_frame(a.matrix(), tol)};
}

Subspace kernel_basis(const BlockOperator& a) {
  return kernel_basis(a, default_rank_tol(a.matrix()));
}

Matrix pinv(const Matrix& a, double tol) {
  require(tol > 0.0, ErrorKind::ShapeMismatch, "pinv tolerance must be positive");
  if (a.size() == 0) return Matrix::Zero(a.cols(), a.rows());
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& sigma = svd.singularValues();
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  for (Index k = 0; k < sigma.size(); ++k) {
    if (sigma[k] <= tol) continue;
    out += svd.matrixV().col(k) * (1.0 / sigma[k]) * svd.matrixU().col(k).adjoint();
  }
  return out;
}

BlockOperator pinv_on_range(const BlockOperator& a, double tol) {
  return {a.codomain(), a.domain(), pinv(a.matrix(), tol)};
}

BlockOperator pinv_on_range(const BlockOperator& a) {
  return pinv_on_range(a, default_rank_tol(a.matrix()));
}

BlockOperator orthoprojection(const Subspace& s) {
  const Matrix& f = s.frame();
  return {s.ambient(), s.ambient(), f * f.adjoint()};
}

Matrix orthonormal_span(const Matrix& m, double tol) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
  Index rank = 0;
  for (Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > tol) ++rank;
  return canonical_frame(svd.matrixU().leftCols(rank));
}

BlockOperator commutator_p1(const BlockOperator& a) {
  return {a.domain(), a.codomain(),
          a.codomain().p1() * a.matrix() - a.matrix() * a.domain().p1()};
}

}  // namespace qfree
