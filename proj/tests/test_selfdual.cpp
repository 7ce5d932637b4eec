#include <doctest.h>

#include "qfree/builders.hpp"
#include "qfree/selfdual.hpp"
#include "test_util.hpp"

using namespace qfree;
using qfree::testing::max_abs;
using qfree::testing::random_matrix;

TEST_SUITE("selfdual") {

TEST_CASE("conjugation is an involution and swaps P1 with P2") {
  const SelfDualSpace k(4);
  const BlockOperator id = BlockOperator::identity(k);
  CHECK(max_abs(conjugate_op(id).matrix() - id.matrix()) == 0.0);

  const BlockOperator p1(k, k, k.p1());
  CHECK(max_abs(conjugate_op(p1).matrix() - k.p2()) == 0.0);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SelfDualSpace dom(3), cod(5);
    const BlockOperator a(dom, cod, random_matrix(10, 6, rng));
    CHECK(max_abs(conjugate_op(conjugate_op(a)).matrix() - a.matrix()) == 0.0);
    // hs norm is invariant under conjugation
    CHECK(hs_norm(a) == doctest::Approx(hs_norm(conjugate_op(a))).epsilon(1e-14));
  }
}

TEST_CASE("J is antiunitary and involutive on vectors") {
  const SelfDualSpace k(3);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector x = random_matrix(6, 1, rng).col(0);
    const Vector y = random_matrix(6, 1, rng).col(0);
    CHECK((k.conj(k.conj(x)) - x).norm() == 0.0);
    CHECK(std::abs(k.conj(x).dot(k.conj(y)) - std::conj(x.dot(y))) < 1e-12);
  }
}

TEST_CASE("hs norm examples") {
  const SelfDualSpace k(1);
  CHECK(hs_norm(BlockOperator::zero(k, k)) == 0.0);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = cplx(3.0, 4.0);
  CHECK(hs_norm(m) == doctest::Approx(5.0).epsilon(1e-15));

  const BlockOperator shift = shift_isometry(4);
  const BlockOperator comm = commutator_p1(shift);
  CHECK(max_abs(comm.matrix()) == 0.0);
  CHECK(hs_norm(comm) == 0.0);
}

TEST_CASE("kernel basis examples") {
  const SelfDualSpace k(3);
  CHECK(kernel_basis(BlockOperator::identity(k), 1e-10).is_empty());

  const BlockOperator flip = flip_isometry(3, {0});
  const Matrix ker11 = kernel_frame(flip.block(1, 1), 1e-10);
  REQUIRE(ker11.cols() == 1);
  CHECK(std::abs(ker11(0, 0)) == doctest::Approx(1.0));
  CHECK(ker11.col(0).tail(2).norm() < 1e-14);

  // adjoint of the 3 -> 4 shift has kernel {e_1, e_1*}
  const BlockOperator shift = shift_isometry(3);
  const Subspace ker = kernel_basis(shift.adjoint(), 1e-10);
  REQUIRE(ker.dim() == 2);
  const Matrix proj = orthoprojection(ker).matrix();
  Matrix expect = Matrix::Zero(8, 8);
  expect(0, 0) = 1.0;
  expect(4, 4) = 1.0;
  CHECK(max_abs(proj - expect) < 1e-14);
  CHECK(ker.orthonormality_defect() < 1e-14);
}

TEST_CASE("kernel frame is canonical and orthogonal to the row space") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rank = 1 + static_cast<Index>(rng() % 4);
    const Matrix a = random_matrix(6, rank, rng) * random_matrix(rank, 7, rng);
    const double tol = default_rank_tol(a);
    const Matrix k = kernel_frame(a, tol);
    CHECK(k.cols() == 7 - rank);
    for (Index c = 0; c < k.cols(); ++c)
      CHECK((a * k.col(c)).norm() <= tol * op_norm(a) * static_cast<double>(k.cols()));
    CHECK(max_abs(k.adjoint() * k - Matrix::Identity(k.cols(), k.cols())) < 1e-12);

    // a rotated copy of the same rows yields the same canonical frame
    const Matrix b = qfree::testing::random_unitary(6, rng) * a;
    const Matrix k2 = kernel_frame(b, default_rank_tol(b));
    CHECK(max_abs(k2 - k) < 1e-8);
  }
}

TEST_CASE("pseudoinverse examples and axioms") {
  const SelfDualSpace k(2);
  CHECK(max_abs(pinv_on_range(BlockOperator::identity(k)).matrix() - Matrix::Identity(4, 4)) <
        1e-15);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  const Matrix dp = pinv(d, 1e-10);
  CHECK(std::abs(dp(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(dp(1, 1)) == 0.0);

  const Matrix v11 = flip_isometry(3, {0}).block(1, 1);
  const Matrix vp = pinv(v11, 1e-10);
  Matrix expect = Matrix::Identity(3, 3);
  expect(0, 0) = 0.0;
  CHECK(max_abs(vp - expect) < 1e-14);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rank = 1 + static_cast<Index>(rng() % 4);
    const Matrix a = random_matrix(5, rank, rng) * random_matrix(rank, 6, rng);
    const double tol = default_rank_tol(a);
    const Matrix p = pinv(a, tol);
    CHECK(op_norm(Matrix(a * p * a - a)) <= 10 * tol * op_norm(a));
    CHECK(op_norm(Matrix(p * a * p - p)) <= 10 * tol * op_norm(p));
  }
}

TEST_CASE("orthoprojection examples") {
  const SelfDualSpace k(2);
  CHECK(max_abs(orthoprojection(Subspace::empty(k)).matrix()) == 0.0);

  Matrix f = Matrix::Zero(4, 1);
  f(0, 0) = 1.0;
  Matrix e11 = Matrix::Zero(4, 4);
  e11(0, 0) = 1.0;
  CHECK(max_abs(orthoprojection(Subspace(k, f)).matrix() - e11) == 0.0);

  Matrix g = Matrix::Zero(4, 1);
  g(0, 0) = g(1, 0) = 1.0 / std::sqrt(2.0);
  const Matrix p = orthoprojection(Subspace(k, g)).matrix();
  CHECK(max_abs(p.topLeftCorner(2, 2) - Matrix::Constant(2, 2, 0.5)) < 1e-15);
  CHECK(max_abs(p * p - p) < 1e-15);
}

TEST_CASE("blocks recompose exactly") {
  std::mt19937_64 rng(9);
  const SelfDualSpace dom(2), cod(3);
  const BlockOperator a(dom, cod, random_matrix(6, 4, rng));
  const BlockOperator sum =
      a.embedded_block(1, 1) + a.embedded_block(1, 2) + a.embedded_block(2, 1) + a.embedded_block(2, 2);
  CHECK(max_abs(sum.matrix() - a.matrix()) == 0.0);
  const BlockOperator b =
      BlockOperator::from_blocks(dom, cod, a.block(1, 1), a.block(1, 2), a.block(2, 1), a.block(2, 2));
  CHECK(max_abs(b.matrix() - a.matrix()) == 0.0);
}

TEST_CASE("shape errors") {
  const SelfDualSpace k(2);
  CHECK_THROWS_AS(BlockOperator(k, k, Matrix::Zero(3, 4)), Error);
  CHECK_THROWS_AS(BlockOperator::identity(k) * BlockOperator::identity(SelfDualSpace(3)), Error);
}

}
