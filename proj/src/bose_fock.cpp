#include <cmath>

#include <Eigen/SVD>

#include "qfree/fock.hpp"
#include "qfree/gauge.hpp"

namespace qfree {

namespace {

constexpr Index kPolarCap = 1024;

Index ipow(Index b, Index e) {
  Index r = 1;
  for (Index i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

BoseFock::BoseFock(Index modes, Index cutoff)
    : modes_(modes), cutoff_(cutoff), dim_(ipow(cutoff + 1, modes)), space_(modes) {
  require(modes >= 0 && modes <= 4, ErrorKind::CapExceeded,
          "bosonic oracle supports at most 4 modes (got " + std::to_string(modes) + ")");
  require(cutoff >= 1 && cutoff <= 8, ErrorKind::CapExceeded,
          "bosonic occupation cutoff must be in 1..8 (got " + std::to_string(cutoff) + ")");
  for (Index i = 0; i < modes; ++i) {
    const Index stride = ipow(cutoff + 1, i);
    std::vector<Eigen::Triplet<cplx>> trip;
    for (Index s = 0; s < dim_; ++s) {
      const Index m = occupation(s, i);
      if (m > 0) trip.emplace_back(s - stride, s, std::sqrt(static_cast<double>(m)));
    }
    SparseMatrix a(dim_, dim_);
    a.setFromTriplets(trip.begin(), trip.end());
    annihilators_.push_back(std::move(a));
  }
}

const SparseMatrix& BoseFock::annihilator(Index i) const {
  require(i >= 0 && i < modes_, ErrorKind::ShapeMismatch, "mode out of range");
  return annihilators_[static_cast<std::size_t>(i)];
}

SparseMatrix BoseFock::creator(Index i) const { return annihilator(i).adjoint(); }

SparseMatrix BoseFock::pi(const Eigen::Ref<const Vector>& f) const {
  require(f.size() == space_.dim(), ErrorKind::ShapeMismatch, "pi: vector size");
  SparseMatrix out(dim_, dim_);
  for (Index i = 0; i < modes_; ++i) {
    if (f[i] != cplx(0.0)) out += f[i] * creator(i);
    if (f[modes_ + i] != cplx(0.0)) out += f[modes_ + i] * annihilator(i);
  }
  return out;
}

Index BoseFock::occupation(Index state, Index mode) const {
  return (state / ipow(cutoff_ + 1, mode)) % (cutoff_ + 1);
}

Index BoseFock::total_number(Index state) const {
  Index n = 0;
  for (Index i = 0; i < modes_; ++i) n += occupation(state, i);
  return n;
}

std::vector<char> BoseFock::interior_mask() const {
  std::vector<char> mask(static_cast<std::size_t>(dim_), 1);
  for (Index s = 0; s < dim_; ++s)
    for (Index i = 0; i < modes_; ++i)
      if (occupation(s, i) >= cutoff_) mask[static_cast<std::size_t>(s)] = 0;
  return mask;
}

SparseMatrix BoseFock::gamma(const BlockOperator& u, double tol) const {
  require(u.domain() == space_ && u.codomain() == space_, ErrorKind::ShapeMismatch,
          "gamma: operator does not act on this space");
  const Matrix u11 = u.block(1, 1);
  const double off = std::max(op_norm(u.block(1, 2)), op_norm(u.block(2, 1)));
  const double real = op_norm(Matrix(u.block(2, 2) - u11.conjugate()));
  require(off <= tol && real <= tol, ErrorKind::NotGaugeCompatible,
          "U must commute with P1 and J (defects " + std::to_string(off) + ", " +
              std::to_string(real) + ")");
  std::vector<Eigen::Triplet<cplx>> trip;
  Matrix offdiag = u11;
  offdiag.diagonal().setZero();
  if (offdiag.cwiseAbs().maxCoeff() <= tol || modes_ == 0) {
    for (Index s = 0; s < dim_; ++s) {
      cplx phase = 1.0;
      for (Index i = 0; i < modes_; ++i) phase *= std::pow(u11(i, i), static_cast<double>(occupation(s, i)));
      trip.emplace_back(s, s, phase);
    }
  } else {
    std::vector<SparseMatrix> images;
    for (Index i = 0; i < modes_; ++i) {
      Vector f = Vector::Zero(space_.dim());
      f.head(modes_) = u11.col(i);
      images.push_back(pi(f));
    }
    for (Index s = 0; s < dim_; ++s) {
      if (total_number(s) > cutoff_) continue;
      Vector x = vacuum();
      double norm = 1.0;
      for (Index i = modes_ - 1; i >= 0; --i)
        for (Index r = 0; r < occupation(s, i); ++r) {
          x = images[static_cast<std::size_t>(i)] * x;
          norm *= static_cast<double>(r + 1);
        }
      x /= std::sqrt(norm);
      for (Index j = 0; j < dim_; ++j)
        if (x[j] != cplx(0.0)) trip.emplace_back(j, s, x[j]);
    }
  }
  SparseMatrix g(dim_, dim_);
  g.setFromTriplets(trip.begin(), trip.end());
  return g;
}

Vector BoseFock::vacuum() const {
  Vector v = Vector::Zero(dim_);
  v[0] = 1.0;
  return v;
}

BoseOmega omega_P_bose(const BoseFock& f, const BlockOperator& t, double tail_limit) {
  const Index n = f.modes();
  require(t.codomain() == f.space(), ErrorKind::ShapeMismatch, "omega_P: T on a different space");
  const Matrix t21 = t.block(2, 1);
  require(op_norm(t21) < 1.0, ErrorKind::NormBoundViolation, "||T|| must be below 1");
  SparseMatrix x(f.dim(), f.dim());
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k)
      if (t21(i, k) != cplx(0.0)) x += (-0.5 * std::conj(t21(i, k))) * (f.creator(i) * f.creator(k));
  Vector state = f.vacuum(), term = f.vacuum();
  // X raises the total occupation by two, so the series stops after n M / 2 terms.
  for (Index j = 1; j <= n * f.cutoff() / 2 + 1; ++j) {
    term = (x * term) / static_cast<double>(j);
    state += term;
  }
  const double det = std::real((Matrix::Identity(n, n) - t21.adjoint() * t21).determinant());
  BoseOmega out;
  out.omega = state * std::pow(det, 0.25);
  out.tail = std::max(0.0, 1.0 - out.omega.squaredNorm());
  require(out.tail <= tail_limit, ErrorKind::CutoffTooSmall,
          "truncation tail " + std::to_string(out.tail) + " exceeds " + std::to_string(tail_limit) +
              " at cutoff " + std::to_string(f.cutoff()));
  return out;
}

BoseOmegaSet omega_alpha_bose(const BoseFock& f, const BoseOmega& omega_p, const BlockOperator& t,
                              const Subspace& k, Index max_level, double tol) {
  require(t.codomain() == f.space() && k.ambient() == f.space(), ErrorKind::ShapeMismatch,
          "omega_alpha: data lives on a different space");
  require(k.is_empty() || f.dim() <= kPolarCap, ErrorKind::CapExceeded,
          "polar decomposition route limited to Fock dimension " + std::to_string(kPolarCap));
  BoseOmegaSet out;
  out.labels = multisets_by_level(k.dim(), max_level);
  std::vector<SparseMatrix> pis;
  std::vector<Matrix> polar;
  for (Index j = 0; j < k.dim(); ++j) {
    pis.push_back(f.pi(k.frame().col(j)));
    Eigen::BDCSVD<Matrix> svd(Matrix(pis.back()), Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix w = Matrix::Zero(f.dim(), f.dim());
    for (Index r = 0; r < svd.singularValues().size(); ++r)
      if (svd.singularValues()[r] > 1e-12)
        w += svd.matrixU().col(r) * svd.matrixV().col(r).adjoint();
    polar.push_back(std::move(w));
  }
  for (const MultiIndex& a : out.labels) {
    Vector p = omega_p.omega, raw = omega_p.omega;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
      p = polar[static_cast<std::size_t>(*it)] * p;
      raw = pis[static_cast<std::size_t>(*it)] * raw;
    }
    const cplx c = raw.dot(p) / raw.squaredNorm();
    out.proportionality = std::max(out.proportionality, (p - c * raw).norm());
    out.constants.push_back(c);
    out.direct.push_back(raw / raw.norm());
    out.polar.push_back(std::move(p));
  }
  const auto m = static_cast<Index>(out.polar.size());
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      const cplx g = out.polar[static_cast<std::size_t>(a)].dot(out.polar[static_cast<std::size_t>(b)]);
      out.gram_defect = std::max(out.gram_defect, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  const double limit = tol + omega_p.tail;
  require(out.gram_defect <= limit, ErrorKind::OrthonormalityFailure,
          "bosonic Omega_alpha Gram defect " + std::to_string(out.gram_defect));
  return out;
}

}  // namespace qfree
