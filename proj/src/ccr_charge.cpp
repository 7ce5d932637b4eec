#include "qfree/ccr_charge.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qfree {

namespace {

constexpr double kNormMargin = 1e-8;

double tol_or_default(double tol) { return std::max(tol, 1e-10); }

Matrix ker_kappa_adjoint(const BlockOperator& v, double tol) {
  const Matrix va = kappa_adjoint(v).matrix();
  return kernel_frame(va, std::max(tol, default_rank_tol(va)));
}

}  // namespace

BlockOperator kappa_adjoint(const BlockOperator& a) {
  return {a.codomain(), a.domain(), a.domain().kappa() * a.matrix().adjoint() * a.codomain().kappa()};
}

MembershipRecord ccr_membership(const BlockOperator& v, double tol) {
  require(v.codomain().modes() >= v.domain().modes(), ErrorKind::ShapeMismatch,
          "codomain must contain the domain");
  MembershipRecord rec;
  rec.tol = tol;
  const Index n = v.domain().dim();
  rec.isometry_defect =
      op_norm(Matrix(kappa_adjoint(v).matrix() * v.matrix() - Matrix::Identity(n, n)));
  rec.reality_defect = op_norm(Matrix(conjugate_op(v).matrix() - v.matrix()));
  rec.hs_defect = hs_norm(commutator_p1(v));
  // V+V = 1 is scale-invariant only up to ||V||^2 for squeezes.
  const double scale = std::max(1.0, op_norm(v) * op_norm(v));
  rec.is_isometry = rec.isometry_defect <= tol * scale;
  rec.is_real = rec.reality_defect <= tol * scale;
  rec.implementable = rec.is_isometry && rec.is_real && std::isfinite(rec.hs_defect);
  return rec;
}

Index ccr_truncation_index(const BlockOperator& v, double tol) {
  const Index structural = v.codomain().dim() - v.domain().dim();
  const Index numerical = ker_kappa_adjoint(v, tol).cols();
  require(structural == numerical, ErrorKind::DimensionMismatch,
          "structural index " + std::to_string(structural) + " but dim ker V+ = " +
              std::to_string(numerical));
  return structural;
}

BlockOperator compute_p(const BlockOperator& v, double tol, CcrChecks* checks) {
  const SelfDualSpace& space = v.codomain();
  const Index dim = space.dim();
  const Matrix ker = ker_kappa_adjoint(v, tol);
  if (ker.cols() == 0) return BlockOperator::zero(space, space);

  const Matrix c = space.kappa();
  const Matrix e = ker * ker.adjoint();
  const Matrix a = e * c * e;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const double cut = tol_or_default(tol) * 1e2;
  Matrix a_plus = Matrix::Zero(dim, dim), a_plus_inv = Matrix::Zero(dim, dim);
  Index nonzero = 0;
  for (Index j = 0; j < dim; ++j) {
    const double lam = es.eigenvalues()[j];
    if (std::abs(lam) > cut) ++nonzero;
    if (lam <= cut) continue;
    const Vector u = es.eigenvectors().col(j);
    a_plus += lam * u * u.adjoint();
    a_plus_inv += (1.0 / lam) * u * u.adjoint();
  }
  require(nonzero == ker.cols(), ErrorKind::DegenerateForm,
          "kappa is degenerate on ker V+ (" + std::to_string(nonzero) + " of " +
              std::to_string(ker.cols()) + " eigenvalues away from zero)");

  CcrChecks local;
  CcrChecks& ch = checks ? *checks : local;
  const BlockOperator ap(space, space, a_plus);
  ch.a_split = op_norm(Matrix(a_plus * conjugate_op(ap).matrix()));
  require(ch.a_split <= 1e-8, ErrorKind::DegenerateForm,
          "A+ conj(A+) != 0 (" + std::to_string(ch.a_split) + ")");

  const BlockOperator p(space, space, a_plus_inv * c);
  const Matrix id = Matrix::Identity(dim, dim);
  ch.p_idempotence = op_norm(Matrix(p.matrix() * p.matrix() - p.matrix()));
  ch.p_kappa_adjoint = op_norm(Matrix(kappa_adjoint(p).matrix() - p.matrix()));
  ch.p_support = op_norm(Matrix((id - e) * p.matrix()));
  const double lim = tol_or_default(tol);
  require(ch.p_idempotence <= lim && ch.p_kappa_adjoint <= lim && ch.p_support <= lim,
          ErrorKind::RecoveryMismatch,
          "p is not a kappa-projection inside ker V+ (" + std::to_string(ch.p_idempotence) + ", " +
              std::to_string(ch.p_kappa_adjoint) + ", " + std::to_string(ch.p_support) + ")");
  return p;
}

BlockOperator compute_P_ccr(const BlockOperator& v, const BlockOperator& p, double tol,
                            CcrChecks* checks) {
  const SelfDualSpace& space = v.codomain();
  const Index dim = space.dim();
  const Matrix big = v.matrix() * v.domain().p1() * kappa_adjoint(v).matrix() + p.matrix();
  const BlockOperator P(space, space, big);

  CcrChecks local;
  CcrChecks& ch = checks ? *checks : local;
  const Matrix id = Matrix::Identity(dim, dim);
  const double scale = std::max(1.0, op_norm(big));
  ch.idempotence = op_norm(Matrix(big * big - big));
  ch.kappa_adjoint = op_norm(Matrix(kappa_adjoint(P).matrix() - big));
  ch.conjugation = op_norm(Matrix(conjugate_op(P).matrix() + big - id));
  const Matrix frame = orthonormal_span(big, 1e-8);
  const Matrix gram = frame.adjoint() * space.kappa() * frame;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  ch.min_positivity = frame.cols() ? es.eigenvalues()[0] : 0.0;

  const double lim = tol_or_default(tol) * scale * scale;
  require(ch.idempotence <= lim && ch.kappa_adjoint <= lim && ch.conjugation <= lim,
          ErrorKind::RecoveryMismatch,
          "P is not a basis projection for kappa (" + std::to_string(ch.idempotence) + ", " +
              std::to_string(ch.kappa_adjoint) + ", " + std::to_string(ch.conjugation) + ")");
  require(frame.cols() == space.modes() && ch.min_positivity > 0.0, ErrorKind::RecoveryMismatch,
          "C P is not positive definite on ran P");
  return P;
}

BlockOperator compute_T_ccr(const BlockOperator& P, double tol, CcrChecks* checks) {
  const SelfDualSpace& space = P.codomain();
  const Index n = space.modes();
  const Matrix p11 = P.block(1, 1), p21 = P.block(2, 1);
  const Matrix t21 = p21 * pinv(p11, tol_or_default(tol));
  Matrix big = Matrix::Zero(space.dim(), space.dim());
  big.bottomLeftCorner(n, n) = t21;
  const BlockOperator T(space, space, big);

  const double sym = op_norm(Matrix(T.matrix() - conjugate_op(T.adjoint()).matrix()));
  if (checks) checks->t_symmetry = sym;
  require(sym <= 1e-8, ErrorKind::RecoveryMismatch,
          "T is not symmetric (" + std::to_string(sym) + ")");
  const double norm = op_norm(t21);
  require(norm < 1.0 - kNormMargin, ErrorKind::NormBoundViolation,
          "||T|| = " + std::to_string(norm) + " is not below 1");
  return T;
}

Subspace compute_k_ccr(const BlockOperator& v, const BlockOperator& P, Index ind, double tol) {
  const SelfDualSpace& space = v.codomain();
  const Matrix c = space.kappa();
  Matrix cand = P.matrix() * ker_kappa_adjoint(v, tol);
  std::vector<char> used(static_cast<std::size_t>(cand.cols()), 0);
  std::vector<Vector> frame;
  const double cut = 1e-8;
  while (true) {
    Index pivot = -1;
    double best = cut;
    for (Index j = 0; j < cand.cols(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double kn = std::real(cand.col(j).dot(c * cand.col(j)));
      if (kn > best * (1.0 + 1e-12)) {
        best = kn;
        pivot = j;
      }
    }
    if (pivot < 0) break;
    used[static_cast<std::size_t>(pivot)] = 1;
    Vector g = cand.col(pivot) / std::sqrt(best);
    Index lead = 0;
    g.cwiseAbs().maxCoeff(&lead);
    g *= std::conj(g[lead]) / std::abs(g[lead]);
    for (Index j = 0; j < cand.cols(); ++j)
      if (!used[static_cast<std::size_t>(j)]) cand.col(j) -= g * g.dot(c * cand.col(j));
    frame.push_back(std::move(g));
  }
  require(2 * static_cast<Index>(frame.size()) == ind, ErrorKind::DimensionMismatch,
          "dim k = " + std::to_string(frame.size()) + " but ind/2 = " + std::to_string(ind / 2));
  Matrix f(space.dim(), static_cast<Index>(frame.size()));
  for (std::size_t j = 0; j < frame.size(); ++j) f.col(static_cast<Index>(j)) = frame[j];
  return {space, std::move(f)};
}

ExtendedCount statistics_dimension_ccr(ExtendedIndex ind) {
  if (ind.infinite) return {true, 0};
  require(ind.value >= 0 && ind.value % 2 == 0, ErrorKind::OddIndex,
          "index " + std::to_string(ind.value) + " is not even");
  return ind.value == 0 ? ExtendedCount{false, 1} : ExtendedCount{true, 0};
}

CcrChargeData analyze_ccr(const CcrIsometry& iso, double tol) {
  const BlockOperator& v = iso.v;
  CcrChargeData d;
  d.membership = ccr_membership(v, tol);
  require(d.membership.implementable, ErrorKind::NotInSemigroup,
          "V is not in END_P1(K, kappa): isometry defect " +
              std::to_string(d.membership.isometry_defect) + ", reality defect " +
              std::to_string(d.membership.reality_defect));
  const Index trunc = ccr_truncation_index(v, tol);
  if (iso.declared.from_truncation) {
    d.ind = ExtendedIndex::finite(trunc);
  } else {
    d.ind = iso.declared.index;
    require(d.ind.infinite || d.ind.value == trunc, ErrorKind::DimensionMismatch,
            "declared index " + d.ind.str() + " differs from truncation index " +
                std::to_string(trunc));
  }
  d.stat_dim = statistics_dimension_ccr(d.ind);
  d.hs_defect = d.membership.hs_defect;
  const Matrix ker = ker_kappa_adjoint(v, tol);
  d.E = BlockOperator(v.codomain(), v.codomain(), ker * ker.adjoint());
  d.p = compute_p(v, tol, &d.checks);
  d.P = compute_P_ccr(v, d.p, tol, &d.checks);
  d.T = compute_T_ccr(d.P, tol, &d.checks);
  d.t_norm = op_norm(d.T);
  d.k = compute_k_ccr(v, d.P, trunc, tol);
  return d;
}

}  // namespace qfree
