#include <doctest.h>

#include "qfree/builders.hpp"
#include "qfree/ccr_charge.hpp"
#include "qfree/gauge.hpp"
#include "test_util.hpp"

using namespace qfree;
using qfree::testing::max_abs;
using qfree::testing::random_matrix;

namespace {

// exp of a kappa-antihermitian real generator: a random symplectic unitary.
BlockOperator random_symplectic(Index modes, std::mt19937_64& rng, double scale) {
  const SelfDualSpace k(modes);
  const Matrix c = k.kappa();
  const Matrix y = random_matrix(2 * modes, 2 * modes, rng) * scale;
  // X+ = -X  <=>  C X is anti-hermitian
  const Matrix h = y - y.adjoint();
  const BlockOperator x0(k, k, c * h);
  const BlockOperator x = (x0 + conjugate_op(x0)) * cplx(0.5);
  // power series; X is small so this converges fast
  Matrix term = Matrix::Identity(2 * modes, 2 * modes), out = term;
  for (int j = 1; j < 40; ++j) {
    term = term * x.matrix() / static_cast<double>(j);
    out += term;
  }
  return {k, k, out};
}

}  // namespace

TEST_SUITE("ccr_charge") {

TEST_CASE("kappa adjoint") {
  const SelfDualSpace k(3);
  const BlockOperator id = BlockOperator::identity(k);
  CHECK(max_abs(kappa_adjoint(id).matrix() - id.matrix()) == 0.0);
  const BlockOperator c(k, k, k.kappa());
  CHECK(max_abs(kappa_adjoint(c).matrix() - c.matrix()) == 0.0);
  // C is self-adjoint, unitary, and conj(C) = -C
  CHECK(max_abs(c.matrix() * c.matrix() - Matrix::Identity(6, 6)) == 0.0);
  CHECK(max_abs(conjugate_op(c).matrix() + c.matrix()) == 0.0);

  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const SelfDualSpace a_dom(2), mid(3), b_cod(4);
    const BlockOperator a(a_dom, mid, random_matrix(6, 4, rng));
    const BlockOperator b(mid, b_cod, random_matrix(8, 6, rng));
    CHECK(max_abs(kappa_adjoint(b * a).matrix() - (kappa_adjoint(a) * kappa_adjoint(b)).matrix()) < 1e-12);
  }
}

TEST_CASE("kappa form symmetries on basis vectors") {
  const SelfDualSpace k(3);
  const Matrix c = k.kappa();
  auto kappa = [&](const Vector& f, const Vector& g) { return f.dot(c * g); };
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (bool pi : {true, false})
        for (bool pj : {true, false}) {
          const Vector f = k.basis(i, pi), g = k.basis(j, pj);
          CHECK(std::abs(kappa(k.conj(f), k.conj(g)) + kappa(g, f)) == 0.0);
          CHECK(std::abs(kappa(f, g) - std::conj(kappa(g, f))) == 0.0);
        }
}

TEST_CASE("membership examples") {
  CHECK(ccr_membership(identity_isometry(2)).implementable);
  CHECK(ccr_membership(shift_isometry(3)).implementable);
  const MembershipRecord sq = ccr_membership(squeeze_isometry(0.5));
  CHECK(sq.implementable);
  CHECK(sq.hs_defect > 0.1);
  // the CAR Bogoliubov rotation is not kappa-isometric
  CHECK_FALSE(ccr_membership(bogoliubov_isometry(0.5)).is_isometry);
}

TEST_CASE("p examples") {
  CHECK(max_abs(compute_p(identity_isometry(3)).matrix()) == 0.0);

  const BlockOperator p = compute_p(shift_isometry(3));
  Matrix e1 = Matrix::Zero(8, 8);
  e1(0, 0) = 1.0;
  CHECK(max_abs(p.matrix() - e1) < 1e-14);

  const BlockOperator p2 = compute_p(shift_isometry(3, 2));
  Matrix e2 = Matrix::Zero(16, 16);
  e2(0, 0) = e2(4, 4) = 1.0;
  CHECK(max_abs(p2.matrix() - e2) < 1e-14);
}

TEST_CASE("P and T examples") {
  const BlockOperator id = identity_isometry(2);
  const BlockOperator P = compute_P_ccr(id, compute_p(id));
  CHECK(max_abs(P.matrix() - id.domain().p1()) < 1e-15);

  const BlockOperator sh = shift_isometry(3);
  CHECK(max_abs(compute_P_ccr(sh, compute_p(sh)).matrix() - sh.codomain().p1()) < 1e-14);

  const double r = 0.5;
  const CcrChargeData d = analyze_ccr({squeeze_isometry(r), DeclaredIndex::truncation()});
  CHECK(std::abs(d.T.matrix()(1, 0) - std::tanh(r)) < 1e-14);
  CHECK(d.t_norm == doctest::Approx(std::tanh(r)).epsilon(1e-13));
  CHECK(d.checks.t_symmetry <= 1e-10);
  CHECK(d.checks.min_positivity > 0.0);
  CHECK(d.stat_dim.value == 1);
  CHECK(d.k.is_empty());
}

TEST_CASE("norm bound rejection") {
  // ||T|| = tanh(r) is within 1e-8 of 1 for r = 10
  CHECK_THROWS_AS(analyze_ccr({squeeze_isometry(10.0), DeclaredIndex::truncation()}), Error);
  try {
    analyze_ccr({squeeze_isometry(10.0), DeclaredIndex::truncation()});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NormBoundViolation);
  }
}

TEST_CASE("k examples") {
  CHECK(analyze_ccr({identity_isometry(2), DeclaredIndex::truncation()}).k.is_empty());
  const CcrChargeData d = analyze_ccr({shift_isometry(3), DeclaredIndex::truncation()});
  REQUIRE(d.k.dim() == 1);
  CHECK(std::abs(d.k.frame()(0, 0) - 1.0) < 1e-14);
  CHECK(d.stat_dim.infinite);

  const CcrChargeData d2 = analyze_ccr({shift_isometry(3, 2), DeclaredIndex::truncation()});
  REQUIRE(d2.k.dim() == 2);
  const Matrix& g = d2.k.frame();
  CHECK(max_abs(g.adjoint() * d2.k.ambient().kappa() * g - Matrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("statistics dimension") {
  CHECK(statistics_dimension_ccr(ExtendedIndex::finite(0)).value == 1);
  CHECK(statistics_dimension_ccr(ExtendedIndex::finite(2)).infinite);
  CHECK(statistics_dimension_ccr(ExtendedIndex::unbounded()).infinite);
  CHECK_THROWS_AS(statistics_dimension_ccr(ExtendedIndex::finite(1)), Error);
}

TEST_CASE("property: random symplectic members after a shift") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 3);
    const Index species = 1 + static_cast<Index>(rng() % 2);
    const BlockOperator sh = shift_isometry(n, species);
    const BlockOperator v = random_symplectic(sh.codomain().modes(), rng, 0.2) * sh;
    const CcrChargeData d = analyze_ccr({v, DeclaredIndex::truncation()});
    CHECK(d.checks.p_idempotence <= 1e-10);
    CHECK(d.checks.p_kappa_adjoint <= 1e-10);
    CHECK(d.checks.p_support <= 1e-10);
    CHECK(d.checks.idempotence <= 1e-10);
    CHECK(d.checks.kappa_adjoint <= 1e-10);
    CHECK(d.checks.conjugation <= 1e-10);
    CHECK(d.checks.min_positivity > 0.0);
    CHECK(d.checks.t_symmetry <= 1e-10);
    CHECK(d.t_norm < 1.0);
    CHECK(2 * d.k.dim() == d.ind.value);
    const Matrix& g = d.k.frame();
    CHECK(max_abs(g.adjoint() * d.k.ambient().kappa() * g - Matrix::Identity(g.cols(), g.cols())) < 1e-10);
    // k lies in ran P
    CHECK(max_abs(d.P.matrix() * g - g) < 1e-10);
  }
}

TEST_CASE("property: gauge commutation propagates through E, A+, p, P, T") {
  std::mt19937_64 rng(5);
  // U(1) charges (+, -): the two-mode squeeze mixing e_0 with e_1* commutes.
  const std::vector<int> qd = {1, -1}, qc = {1, 1, -1};
  const GaugeAction action = GaugeAction::u1(qd, qc);
  for (double r : {0.1, 0.4, 0.8}) {
    const SelfDualSpace dom(2), cod(3);
    // shift on the positive ladder: e_0^+ -> e_1^+, e_0^- -> e_0^-
    Matrix v11 = Matrix::Zero(3, 2);
    v11(1, 0) = 1.0;
    v11(2, 1) = 1.0;
    const BlockOperator sh = BlockOperator::from_blocks(dom, cod, v11, Matrix::Zero(3, 2),
                                                        Matrix::Zero(3, 2), v11);
    Matrix s11 = Matrix::Identity(3, 3), s21 = Matrix::Zero(3, 3);
    s11(1, 1) = s11(2, 2) = std::cosh(r);
    s21(2, 1) = s21(1, 2) = std::sinh(r);
    const BlockOperator sq = BlockOperator::from_blocks(cod, cod, s11, s21.conjugate(), s21, s11.conjugate());
    const BlockOperator v = sq * sh;
    const CcrChargeData d = analyze_ccr({v, DeclaredIndex::truncation()});
    for (double lam : {0.3, 1.7, 2.9}) {
      const GroupElement g = make_element(action, Matrix::Constant(1, 1, std::polar(1.0, lam)));
      const Matrix uc = g.on_codomain.matrix(), ud = g.on_domain.matrix();
      CHECK(max_abs(v.matrix() * ud - uc * v.matrix()) < 1e-14);
      auto comm = [&](const Matrix& x) { return max_abs(x * uc - uc * x); };
      CHECK(comm(d.E.matrix()) < 1e-10);
      CHECK(comm(d.p.matrix()) < 1e-10);
      CHECK(comm(d.P.matrix()) < 1e-10);
      CHECK(comm(d.T.matrix()) < 1e-10);
    }
    CHECK(d.t_norm == doctest::Approx(std::tanh(r)).epsilon(1e-12));
  }
}

}
