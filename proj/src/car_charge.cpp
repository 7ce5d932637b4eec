#include "qfree/car_charge.hpp"

#include <cmath>

namespace qfree {

namespace {

constexpr double kRecoveryTol = 1e-8;

Matrix projector(const Matrix& frame) { return frame * frame.adjoint(); }

// Embed a K1 -> K2 block as an operator on the full space.
BlockOperator lower_block(const SelfDualSpace& space, const Matrix& t21) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  m.bottomLeftCorner(space.modes(), space.modes()) = t21;
  return {space, space, std::move(m)};
}

}  // namespace

MembershipRecord car_membership(const BlockOperator& v, double tol) {
  require(v.codomain().modes() >= v.domain().modes(), ErrorKind::ShapeMismatch,
          "codomain must contain the domain");
  MembershipRecord rec;
  rec.tol = tol;
  const Index n = v.domain().dim();
  rec.isometry_defect = op_norm(Matrix(v.matrix().adjoint() * v.matrix() - Matrix::Identity(n, n)));
  rec.reality_defect = op_norm(Matrix(conjugate_op(v).matrix() - v.matrix()));
  rec.hs_defect = hs_norm(commutator_p1(v));
  rec.is_isometry = rec.isometry_defect <= tol;
  rec.is_real = rec.reality_defect <= tol;
  // At a truncation the HS norm is always finite; membership is decided by
  // the two algebraic conditions.
  rec.implementable = rec.is_isometry && rec.is_real && std::isfinite(rec.hs_defect);
  return rec;
}

Index car_truncation_index(const BlockOperator& v, double tol) {
  const Index structural = v.codomain().dim() - v.domain().dim();
  const Index numerical = kernel_frame(v.matrix().adjoint(), std::max(tol, default_rank_tol(v.matrix()))).cols();
  require(structural == numerical, ErrorKind::DimensionMismatch,
          "structural index " + std::to_string(structural) + " but dim ker V* = " +
              std::to_string(numerical));
  return structural;
}

Subspace compute_h(const BlockOperator& v, double tol) {
  const Matrix v12 = v.block(1, 2);
  const Matrix v22 = v.block(2, 2);
  const Matrix ker = kernel_frame(v22, std::max(tol, default_rank_tol(v22)));
  const SelfDualSpace& space = v.codomain();
  if (ker.cols() == 0) return Subspace::empty(space);
  const Matrix image = orthonormal_span(v12 * ker, 1e-8);
  Matrix frame = Matrix::Zero(space.dim(), image.cols());
  frame.topRows(space.modes()) = image;
  return {space, std::move(frame)};
}

BlockOperator compute_T_car(const BlockOperator& v, double tol) {
  const Matrix v11 = v.block(1, 1), v12 = v.block(1, 2);
  const Matrix v21 = v.block(2, 1), v22 = v.block(2, 2);
  const double rank_tol = std::max(tol, 1e-10);
  const Matrix v11_inv = pinv(v11, rank_tol);
  const Matrix v22_inv = pinv(v22, rank_tol);
  const Matrix ker_v11_adj = kernel_frame(v11.adjoint(), rank_tol);
  const Matrix t = v21 * v11_inv - v22_inv.adjoint() * v12.adjoint() * projector(ker_v11_adj);

  const SelfDualSpace& space = v.codomain();
  BlockOperator big = lower_block(space, t);
  const double anti = op_norm(Matrix(conjugate_op(big.adjoint()).matrix() + big.matrix()));
  require(anti <= std::max(tol, 1e-10) * std::max(1.0, op_norm(t)), ErrorKind::AntisymmetryViolation,
          "||conj(T*) + T|| = " + std::to_string(anti));
  const Subspace h = compute_h(v, tol);
  if (!h.is_empty()) {
    const double th = op_norm(Matrix(big.matrix() * h.frame()));
    require(th <= 1e-8, ErrorKind::AntisymmetryViolation, "T h != 0 (" + std::to_string(th) + ")");
  }
  return big;
}

BlockOperator compute_P_car(const Subspace& h, const BlockOperator& t, double tol,
                            ProjectionChecks* checks) {
  const SelfDualSpace& space = t.codomain();
  require(h.ambient() == space, ErrorKind::ShapeMismatch, "h and T live in different spaces");
  const Index n = space.modes();
  const Matrix t21 = t.block(2, 1);
  const Matrix p1 = space.p1();

  // (P1 + T*T)^-1 on K1, zero on K2.
  Matrix inner = Matrix::Zero(space.dim(), space.dim());
  inner.topLeftCorner(n, n) =
      (Matrix::Identity(n, n) + t21.adjoint() * t21).inverse();
  const Matrix left = p1 + t.matrix();
  Matrix p = left * inner * left.adjoint();
  if (!h.is_empty()) p += projector(h.conj().frame()) - projector(h.frame());

  const Matrix id = Matrix::Identity(space.dim(), space.dim());
  ProjectionChecks c;
  c.idempotence = op_norm(Matrix(p * p - p));
  c.self_adjoint = op_norm(Matrix(p - p.adjoint()));
  BlockOperator pop(space, space, p);
  c.conjugation = op_norm(Matrix(conjugate_op(pop).matrix() - (id - p)));

  const Matrix p11 = pop.block(1, 1), p21 = pop.block(2, 1);
  const Matrix ker_p11 = kernel_frame(p11, std::max(tol, default_rank_tol(p11)));
  const Matrix h1 = h.frame().topRows(n);
  c.h_recovery = op_norm(Matrix(projector(ker_p11) - projector(h1)));
  c.t_recovery = op_norm(Matrix(p21 * pinv(p11, std::max(tol, 1e-10)) - t21));
  if (checks) *checks = c;

  const double proj_tol = std::max(tol, 1e-10);
  require(c.idempotence <= proj_tol && c.self_adjoint <= proj_tol && c.conjugation <= proj_tol,
          ErrorKind::RecoveryMismatch,
          "P is not a basis projection (idempotence " + std::to_string(c.idempotence) +
              ", conjugation " + std::to_string(c.conjugation) + ")");
  require(c.h_recovery <= kRecoveryTol && c.t_recovery <= kRecoveryTol, ErrorKind::RecoveryMismatch,
          "ker P11 / P21 P11^-1 do not reproduce (h, T): " + std::to_string(c.h_recovery) + ", " +
              std::to_string(c.t_recovery));
  return pop;
}

Subspace compute_k_car(const BlockOperator& v, const BlockOperator& p, Index ind, double tol) {
  const Matrix ker_adj = kernel_frame(v.matrix().adjoint(), std::max(tol, default_rank_tol(v.matrix())));
  const Matrix image = orthonormal_span(p.matrix() * ker_adj, 1e-8);
  require(2 * image.cols() == ind, ErrorKind::DimensionMismatch,
          "dim k = " + std::to_string(image.cols()) + " but ind/2 = " + std::to_string(ind / 2));
  return {v.codomain(), image};
}

ExtendedCount statistics_dimension_car(ExtendedIndex ind) {
  if (ind.infinite) return {true, 0};
  require(ind.value >= 0 && ind.value % 2 == 0, ErrorKind::OddIndex,
          "index " + std::to_string(ind.value) + " is not even");
  require(ind.value / 2 < 64, ErrorKind::CapExceeded, "statistics dimension overflows");
  return {false, std::uint64_t{1} << (ind.value / 2)};
}

int z2_index(const BlockOperator& v, double tol) {
  require(v.domain() == v.codomain(), ErrorKind::NonzeroIndex, "z2 index needs index zero");
  const Matrix v11 = v.block(1, 1);
  const Index dim_ker = kernel_frame(v11, std::max(tol, default_rank_tol(v11))).cols();
  return dim_ker % 2 == 0 ? 1 : -1;
}

U1Charge u1_charge(const BlockOperator& v, const std::vector<int>& domain_charges,
                   const std::vector<int>& codomain_charges, double tol) {
  require(v.domain().dim() == v.codomain().dim(), ErrorKind::NonzeroIndex,
          "u1 charge needs index zero");
  require(static_cast<Index>(domain_charges.size()) == v.domain().modes() &&
              static_cast<Index>(codomain_charges.size()) == v.codomain().modes(),
          ErrorKind::ShapeMismatch, "one charge label per K1 mode");
  for (const auto* q : {&domain_charges, &codomain_charges})
    for (int c : *q)
      require(c == 1 || c == -1, ErrorKind::MalformedInput, "only +1/-1 charge labels");

  auto select = [](const std::vector<int>& q, int sign) {
    std::vector<Index> out;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (q[i] == sign) out.push_back(static_cast<Index>(i));
    return out;
  };
  const auto dp = select(domain_charges, 1), dm = select(domain_charges, -1);
  const auto cp = select(codomain_charges, 1), cm = select(codomain_charges, -1);
  const Matrix v11 = v.block(1, 1);
  auto sub = [&](const std::vector<Index>& r, const std::vector<Index>& c) {
    Matrix m(static_cast<Index>(r.size()), static_cast<Index>(c.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = v11(r[i], c[j]);
    return m;
  };
  auto peak = [](const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; };
  const double leak = std::max(peak(sub(cp, dm)), peak(sub(cm, dp)));
  require(!(leak > tol), ErrorKind::NotChargeDiagonal,
          "V11 mixes charge sectors (" + std::to_string(leak) + ")");

  const Matrix vpp = sub(cp, dp);
  const double rank_tol = std::max(tol, 1e-10);
  U1Charge out;
  const Index ker = vpp.cols() ? kernel_frame(vpp, rank_tol).cols() : 0;
  const Index coker = vpp.rows() ? kernel_frame(vpp.adjoint(), rank_tol).cols() : 0;
  out.index = coker - ker;

  // det_h(U_lambda) = exp(i lambda tr(F* Q F)) for the U-invariant h.
  const Subspace h = compute_h(v, tol);
  double exponent = 0.0;
  const Index n = v.codomain().modes();
  for (Index c = 0; c < h.dim(); ++c)
    for (Index i = 0; i < n; ++i) exponent += codomain_charges[static_cast<std::size_t>(i)] * std::norm(h.frame()(i, c));
  out.det_h_exponent = static_cast<Index>(std::llround(exponent));
  if (out.index == 0 && out.det_h_exponent == 0)
    out.convention = "both (ind = 0)";
  else if (out.det_h_exponent == out.index)
    out.convention = "exp(+i lambda ind)";
  else if (out.det_h_exponent == -out.index)
    out.convention = "exp(-i lambda ind)";
  else
    out.convention = "mismatch";
  return out;
}

CarChargeData analyze_car(const CarIsometry& iso, double tol) {
  const BlockOperator& v = iso.v;
  CarChargeData d;
  d.membership = car_membership(v, tol);
  require(d.membership.implementable, ErrorKind::NotInSemigroup,
          "V is not in END_P1(K): isometry defect " + std::to_string(d.membership.isometry_defect) +
              ", reality defect " + std::to_string(d.membership.reality_defect));
  const Index trunc = car_truncation_index(v, tol);
  if (iso.declared.from_truncation) {
    d.ind = ExtendedIndex::finite(trunc);
  } else {
    d.ind = iso.declared.index;
    require(d.ind.infinite || d.ind.value == trunc, ErrorKind::DimensionMismatch,
            "declared index " + d.ind.str() + " differs from truncation index " + std::to_string(trunc));
  }
  d.stat_dim = statistics_dimension_car(d.ind);
  d.hs_defect = d.membership.hs_defect;
  d.h = compute_h(v, tol);
  d.T = compute_T_car(v, tol);
  d.t_norm = op_norm(d.T);
  d.P = compute_P_car(d.h, d.T, tol, &d.checks);
  d.k = compute_k_car(v, d.P, trunc, tol);
  return d;
}

}  // namespace qfree
