#include <doctest.h>

#include "qfree/dirac.hpp"
#include "qfree/errors.hpp"
#include "test_util.hpp"

using namespace qfree;
using namespace qfree::dirac;

namespace {

// Composite Simpson rule for (1/2pi) int_{pi/2}^{3pi/2} e^{i d lambda} d lambda.
cplx arc_quadrature(Index d, int panels = 20000) {
  const double a = M_PI / 2, b = 3 * M_PI / 2, h = (b - a) / panels;
  cplx s = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::polar(1.0, static_cast<double>(d) * (a + i * h));
  }
  return s * h / 3.0 / (2 * M_PI);
}

cplx overlap_quadrature(Index m, Index n) {
  return M_SQRT2 * (m % 2 ? -1.0 : 1.0) * arc_quadrature(2 * m - n);
}

}  // namespace

TEST_SUITE("dirac") {

TEST_CASE("overlap examples against quadrature") {
  CHECK(std::abs(overlap(0, 0)) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(overlap(0, 2)) == 0.0);
  CHECK(std::abs(overlap_quadrature(0, 2)) < 1e-14);
  CHECK(std::abs(overlap(0, 1)) == doctest::Approx(M_SQRT2 / M_PI).epsilon(1e-14));
  for (Index m = -3; m <= 3; ++m)
    for (Index n = -8; n <= 8; ++n) {
      CHECK(std::abs(overlap(m, n) - overlap_quadrature(m, n)) < 1e-12);
      CHECK(std::abs(arc_coefficient(m, n) - arc_quadrature(m - n)) < 1e-12);
    }
}

TEST_CASE("overlap table normalisation within the tail bound") {
  for (Index w : {64, 128, 256}) {
    const OverlapChecks c = overlap_checks(w, w / 4);
    CHECK(c.row_deviation <= c.tail_bound);
    CHECK(c.orthogonality <= c.tail_bound);
  }
  CHECK(overlap_checks(128, 32).row_deviation < overlap_checks(64, 16).row_deviation);
}

TEST_CASE("v acts as the shift on local vectors and fixes the rest") {
  const Index w = 256;
  const VWindow v = build_v(w, w / 4);
  const double tol = tail_bound(w);
  const Matrix f = overlap_table(w, -1, 3);
  CHECK((v.v * f.col(3) - f.col(4)).norm() <= tol);    // f_2 -> f_3
  CHECK((v.v * f.col(0) - f.col(0)).norm() <= tol);    // f_{-1} fixed
  for (const Vector& g : complement_family(w, 3)) CHECK((v.v * g - g).norm() / g.norm() <= tol);

  const WindowChecks c = window_checks(v);
  CHECK(c.shift_defect <= tol);
  CHECK(c.fixed_defect <= tol);
  CHECK(c.isometry_defect < window_checks(build_v(128, 32)).isometry_defect);
}

TEST_CASE("window guards") {
  CHECK_THROWS_AS(build_v(64, 17), Error);
  CHECK_THROWS_AS(build_v(64, 0), Error);
  CHECK_THROWS_AS(build_v(2, 0), Error);
  CHECK_THROWS_AS(build_v(64, 8, 8), Error);
  try {
    hs_commutator_study({128, 64});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedInput);
  }
}

TEST_CASE("HS study: partial sums increase and the verdict separates v from the control") {
  const std::vector<Index> cuts{32, 64, 128, 256};
  const HsStudy s = hs_commutator_study(cuts);
  CHECK(s.verdict == "consistent-with-HS");
  REQUIRE(s.records.size() == 3);
  for (const TrendRecord& r : s.records) {
    for (std::size_t k = 1; k < r.partial.size(); ++k) CHECK(r.partial[k] >= r.partial[k - 1]);
    CHECK(r.slope < kSlopeThreshold);
  }
  // the full commutator norm is the l2 sum of the two blocks
  for (std::size_t k = 0; k < cuts.size(); ++k)
    CHECK(std::hypot(s.records[1].partial[k], s.records[2].partial[k]) ==
          doctest::Approx(s.records[0].partial[k]).epsilon(1e-12));

  const HsStudy c = control_study(cuts);
  CHECK(c.verdict == "not-consistent-with-HS");
  CHECK(c.records[0].slope > -0.3);
}

TEST_CASE("control multiplier is unitary on the circle") {
  // Parseval: sum_d |u_d|^2 = 1 for |u| = 1
  double s = 0.0;
  for (Index d = -200000; d <= 200000; ++d) s += std::norm(control_multiplier(d));
  CHECK(s == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("index estimate") {
  const IndexEstimate e = index_estimate({64, 128});
  CHECK(e.index == 1);
  for (const IndexSample& s : e.samples) {
    CHECK(s.cokernel == 1);
    CHECK(s.kernel == 0);
    CHECK(s.gap > kIndexThreshold);
    CHECK(s.cokernel_overlap > 0.99);
  }
  // sum started at m = 1: f_0 is fixed and the cokernel moves to f_1
  const IndexEstimate p = index_estimate({64, 128}, 1);
  CHECK(p.index == 1);
  CHECK(p.samples.back().cokernel_overlap > 0.99);
}

TEST_CASE("assembly") {
  for (int n = 1; n <= 3; ++n) {
    const Assembly a = assemble(n, 1);
    CHECK(a.half_index == n);
    CHECK(a.index == 2 * n);
    CHECK(a.stat_dim == (Index{1} << n));
  }
  CHECK(assemble(3, 1).stat_dim == 8);
  CHECK_THROWS_AS(assemble(0, 1), Error);
}

TEST_CASE("localisation phases") {
  const Index w = 128;
  const VWindow v = build_v(w, w / 4);
  const auto fam = complement_family(w, 3);
  const LocalPhase p = prop_loc_check(v.v, fam, 1e-2);
  CHECK(std::abs(p.tau - 1.0) < 1e-6);
  CHECK(p.residual < prop_loc_check(build_v(64, 16).v, complement_family(64, 3), 1e-2).residual);

  const cplx phase = std::polar(1.0, M_PI / 3);
  const LocalPhase q = prop_loc_check(Matrix(phase * v.v), fam, 1e-2);
  CHECK(std::abs(q.tau - phase) < 1e-6);
  CHECK(q.residual == doctest::Approx(p.residual).epsilon(1e-10));

  // rotate the modes e_0 and e_1 into each other: no common phase survives
  Matrix r = Matrix::Identity(2 * w + 1, 2 * w + 1);
  r(w, w) = r(w + 1, w + 1) = 0.0;
  r(w, w + 1) = -1.0;
  r(w + 1, w) = 1.0;
  try {
    prop_loc_check(v.v * r, fam, 1e-2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoCommonPhase);
  }
}

}
