#include <doctest.h>

#include <algorithm>
#include <functional>

#include "qfree/builders.hpp"
#include "qfree/car_charge.hpp"
#include "qfree/ccr_charge.hpp"
#include "qfree/fock.hpp"
#include "qfree/gauge.hpp"
#include "test_util.hpp"

using namespace qfree;
using qfree::testing::max_abs;
using qfree::testing::random_matrix;
using qfree::testing::random_unitary;

namespace {

// Brute-force symmetric polynomials: sum over increasing / non-decreasing tuples.
cplx brute_symmetric(const Vector& z, Index l, bool repeat) {
  cplx total = 0.0;
  std::function<void(Index, Index, cplx)> rec = [&](Index start, Index left, cplx acc) {
    if (left == 0) {
      total += acc;
      return;
    }
    for (Index i = start; i < z.size(); ++i) rec(repeat ? i : i + 1, left - 1, acc * z[i]);
  };
  rec(0, l, 1.0);
  return total;
}

Vector random_phases(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  Vector z(n);
  for (Index i = 0; i < n; ++i) z[i] = std::polar(1.0, u(rng));
  return z;
}

}  // namespace

TEST_SUITE("gauge") {

TEST_CASE("det_h examples") {
  const SelfDualSpace k(3);
  const Subspace none = Subspace::empty(k);
  const GroupElement g = make_element(GaugeAction::u1({1, 1, 1}, {1, 1, 1}),
                                      Matrix::Constant(1, 1, std::polar(1.0, 0.7)));
  CHECK(char_det_h(none, g.on_domain) == cplx(1.0));
  Matrix e = Matrix::Zero(6, 1);
  e(0, 0) = 1.0;
  CHECK(std::abs(char_det_h(Subspace(k, e), g.on_domain) - std::polar(1.0, 0.7)) < 1e-15);

  const GroupElement minus = make_element(GaugeAction::z2(3, 3), Matrix::Constant(1, 1, -1.0));
  const CarChargeData d = analyze_car({flip_isometry(3, {0}), DeclaredIndex::truncation()});
  REQUIRE(d.h.dim() == 1);
  CHECK(std::abs(char_det_h(d.h, minus.on_codomain) + 1.0) < 1e-14);

  // a vector mixing two charges is not invariant
  Matrix mix = Matrix::Zero(6, 1);
  mix(0, 0) = mix(1, 0) = 1.0 / std::sqrt(2.0);
  const GroupElement q = make_element(GaugeAction::u1({1, 2, 1}, {1, 2, 1}),
                                      Matrix::Constant(1, 1, std::polar(1.0, 0.7)));
  CHECK_THROWS_AS(char_det_h(Subspace(k, mix), q.on_domain), Error);
}

TEST_CASE("symmetric polynomial examples") {
  Vector z(2);
  z << std::polar(1.0, 0.3), std::polar(1.0, -1.1);
  CHECK(char_lambda(z, 0) == cplx(1.0));
  CHECK(std::abs(char_lambda(z, 2) - z[0] * z[1]) < 1e-15);
  CHECK(char_sym(z, 0) == cplx(1.0));
  CHECK(std::abs(char_sym(z, 2) - (z[0] * z[0] + z[0] * z[1] + z[1] * z[1])) < 1e-15);
  CHECK_THROWS_AS(char_lambda(z, 3), Error);
  CHECK_THROWS_AS(char_lambda(z, -1), Error);
  CHECK(elementary_symmetric(z, 3) == cplx(0.0));

  Vector one(1);
  one << std::polar(1.0, 0.4);
  for (Index l = 0; l < 6; ++l)
    CHECK(std::abs(char_sym(one, l) - std::polar(1.0, 0.4 * static_cast<double>(l))) < 1e-14);

  Vector su2(2);
  su2 << std::polar(1.0, 0.9), std::polar(1.0, -0.9);
  CHECK(std::abs(char_lambda(su2, 2) - 1.0) < 1e-15);
}

TEST_CASE("property: e_l and h_l match brute force and are permutation invariant") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 40; ++t) {
    const Index n = 1 + static_cast<Index>(rng() % 5);
    Vector z = random_matrix(n, 1, rng).col(0);
    for (Index l = 0; l <= n + 2; ++l) {
      const cplx h = char_sym(z, l);
      CHECK(std::abs(h - brute_symmetric(z, l, true)) < 1e-9 * (1 + std::abs(h)));
      const cplx e = elementary_symmetric(z, l);
      CHECK(std::abs(e - brute_symmetric(z, l, false)) < 1e-9 * (1 + std::abs(e)));
    }
    Vector p = z;
    std::shuffle(p.data(), p.data() + p.size(), rng);
    for (Index l = 0; l <= n; ++l) {
      CHECK(std::abs(char_lambda(z, l) - char_lambda(p, l)) < 1e-10 * (1 + std::abs(char_lambda(z, l))));
      CHECK(std::abs(char_sym(z, l) - char_sym(p, l)) < 1e-10 * (1 + std::abs(char_sym(z, l))));
    }
    // identity element gives the level dimension
    const Vector ones = Vector::Ones(n);
    for (Index l = 0; l <= n; ++l) {
      CHECK(std::abs(char_lambda(ones, l) - static_cast<double>(binomial(n, l))) < 1e-12);
      CHECK(std::abs(char_sym(ones, l) - static_cast<double>(multiset_count(n, l))) < 1e-9);
    }
  }
}

TEST_CASE("lambda_power traces are e_l") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const Index n = 1 + static_cast<Index>(rng() % 4);
    const Matrix u = random_unitary(n, rng);
    const Vector eig = compressed_eigenvalues(u);
    for (Index l = 0; l <= n; ++l) {
      const Matrix lp = lambda_power(u, l);
      CHECK(lp.rows() == binomial(n, l));
      CHECK(std::abs(lp.trace() - char_lambda(eig, l)) < 1e-12);
    }
  }
}

TEST_CASE("Haar sampling") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 4; ++n) {
    const Matrix u = haar_unitary(n, false, rng);
    CHECK(max_abs(u.adjoint() * u - Matrix::Identity(n, n)) < 1e-13);
    const Matrix s = haar_unitary(n, true, rng);
    CHECK(std::abs(s.determinant() - 1.0) < 1e-13);
  }
  const auto a = sample_elements(GaugeAction::un(2, 2, 2, true), 50, 7);
  const auto b = sample_elements(GaugeAction::un(2, 2, 2, true), 50, 7);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(max_abs(a[i].abstract - b[i].abstract) == 0.0);
  CHECK(sample_elements(GaugeAction::z2(1, 1), 0, 0).size() == 2);
  CHECK(sample_elements(GaugeAction::u1({1}, {1}), default_sample_size(GroupTag::U1), 0).size() == 64);
  CHECK(default_sample_size(GroupTag::UN) == 50);
}

TEST_CASE("group elements commute with P1 and J") {
  std::mt19937_64 rng(3);
  for (const GaugeAction& act : {GaugeAction::un(3, 6, 9), GaugeAction::u1({1, -1, 2}, {1, -1, 2, 0}),
                                 GaugeAction::z2(2, 3)}) {
    for (const GroupElement& g : sample_elements(act, 5, rng())) {
      for (const BlockOperator* u : {&g.on_domain, &g.on_codomain}) {
        CHECK(hs_norm(commutator_p1(*u)) < 1e-14);
        CHECK(hs_norm(conjugate_op(*u) - *u) < 1e-14);
        const Matrix m = u->matrix();
        CHECK(max_abs(m.adjoint() * m - Matrix::Identity(m.cols(), m.cols())) < 1e-13);
      }
    }
  }
}

TEST_CASE("sector table examples") {
  // CAR, empty h, dim k = 1, U(1)
  std::vector<CharacterSample> u1;
  for (const GroupElement& g : sample_elements(GaugeAction::u1({1}, {1}), 64, 0)) {
    CharacterSample s;
    s.k_eigs = Vector::Constant(1, g.abstract(0, 0));
    u1.push_back(s);
  }
  const SectorTable car = sector_table(Algebra::Car, GroupTag::U1, 1, 1, u1, 0, 0);
  REQUIRE(car.rows.size() == 2);
  CHECK(car.rows[0].class_label != car.rows[1].class_label);
  CHECK(car.sample_size == 64);

  const SectorTable ccr = sector_table(Algebra::Ccr, GroupTag::U1, 1, 1, u1, 6, 0);
  REQUIRE(ccr.rows.size() == 7);
  for (std::size_t a = 0; a < ccr.rows.size(); ++a) {
    CHECK(ccr.rows[a].dimension == 1);
    for (std::size_t b = a + 1; b < ccr.rows.size(); ++b) CHECK(ccr.rows[a].class_label != ccr.rows[b].class_label);
  }

  // SU(2) / U(2) defining action on dim k = 2
  for (bool special : {true, false}) {
    std::vector<CharacterSample> samples;
    for (const GroupElement& g : sample_elements(GaugeAction::un(2, 2, 2, special), 50, 11)) {
      CharacterSample s;
      s.k_eigs = compressed_eigenvalues(g.abstract);
      samples.push_back(s);
    }
    const SectorTable t =
        sector_table(Algebra::Car, special ? GroupTag::SUN : GroupTag::UN, 2, 2, samples, 0, 11);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[1].dimension == 2);
    CHECK(t.rows[0].class_label != t.rows[1].class_label);
    CHECK((t.rows[0].class_label == t.rows[2].class_label) == special);
    REQUIRE(!t.annotations.empty());
    CHECK(t.annotations.front().find("observed yes") != std::string::npos);
  }
}

TEST_CASE("property: sector table is invariant under rotation of the k frame") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    const Index n = 2 + static_cast<Index>(rng() % 2);
    const Matrix w = random_unitary(n, rng);
    std::vector<CharacterSample> a, b;
    for (const GroupElement& g : sample_elements(GaugeAction::un(static_cast<int>(n), n, n), 20, rng())) {
      CharacterSample s, r;
      s.k_eigs = compressed_eigenvalues(g.abstract);
      r.k_eigs = compressed_eigenvalues(Matrix(w.adjoint() * g.abstract * w));
      a.push_back(s);
      b.push_back(r);
    }
    const SectorTable ta = sector_table(Algebra::Car, GroupTag::UN, static_cast<int>(n), n, a, 0, 0);
    const SectorTable tb = sector_table(Algebra::Car, GroupTag::UN, static_cast<int>(n), n, b, 0, 0);
    for (std::size_t l = 0; l < ta.rows.size(); ++l) {
      CHECK(ta.rows[l].class_label == tb.rows[l].class_label);
      for (std::size_t s = 0; s < a.size(); ++s)
        CHECK(std::abs(ta.rows[l].characters[s] - tb.rows[l].characters[s]) < 1e-10);
    }
  }
}

TEST_CASE("compression rejects non-normal or non-invariant data") {
  Matrix c(2, 2);
  c << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(compressed_eigenvalues(c), Error);
}

TEST_CASE("oracle comparison on the fermionic shift") {
  const BlockOperator v = shift_isometry(3);
  const CarChargeData d = analyze_car({v, DeclaredIndex::truncation()});
  const FermiFock fc(4);
  const OmegaSet set = omega_alpha_fermi(fc, omega_P_fermi(fc, d.h, d.T), d.k);
  const GaugeAction act = GaugeAction::u1({1, 1, 1}, {1, 1, 1, 1});
  std::vector<CharacterSample> samples;
  std::vector<std::vector<cplx>> traces;
  for (const GroupElement& g : sample_elements(act, 64, 0)) {
    CharacterSample s;
    s.det_h = char_det_h(d.h, g.on_codomain);
    s.k_eigs = compressed_eigenvalues(compress(d.k, g.on_codomain, 1e-8));
    samples.push_back(s);
    traces.push_back(level_traces(charge_rep_matrix(set.vectors, fc.gamma(g.on_codomain), 1e-10), set.labels, 2));
  }
  const SectorTable t = sector_table(Algebra::Car, GroupTag::U1, 1, d.k.dim(), samples, 0, 0);
  const OracleComparison c = oracle_compare(t, traces, 1e-10);
  CHECK(c.pass);
  CHECK(c.max_deviation <= 1e-10);
  CHECK_NOTHROW(require_oracle_match(t, traces, 1e-10));

  traces[3][1] += 1e-6;
  const OracleComparison bad = oracle_compare(t, traces, 1e-10);
  CHECK(!bad.pass);
  CHECK(bad.worst_sample == 3);
  CHECK(bad.worst_level == 1);
  CHECK_THROWS_AS(require_oracle_match(t, traces, 1e-10), Error);
}

TEST_CASE("oracle comparison on the two-species shift with SU(2)") {
  const BlockOperator v = shift_isometry(2, 2);
  const CarChargeData d = analyze_car({v, DeclaredIndex::truncation()});
  const FermiFock fc(6);
  const OmegaSet set = omega_alpha_fermi(fc, omega_P_fermi(fc, d.h, d.T), d.k);
  const GaugeAction act = GaugeAction::un(2, 4, 6, true);
  std::vector<CharacterSample> samples;
  std::vector<std::vector<cplx>> traces;
  for (const GroupElement& g : sample_elements(act, 50, 5)) {
    CharacterSample s;
    s.det_h = char_det_h(d.h, g.on_codomain);
    s.k_eigs = compressed_eigenvalues(compress(d.k, g.on_codomain, 1e-8));
    samples.push_back(s);
    traces.push_back(level_traces(charge_rep_matrix(set.vectors, fc.gamma(g.on_codomain), 1e-10), set.labels, 3));
  }
  const SectorTable t = sector_table(Algebra::Car, GroupTag::SUN, 2, d.k.dim(), samples, 0, 5);
  CHECK(oracle_compare(t, traces, 1e-10).pass);
  CHECK(t.rows[0].class_label == t.rows[2].class_label);
  CHECK(t.rows[0].class_label != t.rows[1].class_label);
}

TEST_CASE("oracle comparison on the flip (pure det_h)") {
  const BlockOperator v = flip_isometry(3, {0});
  const CarChargeData d = analyze_car({v, DeclaredIndex::truncation()});
  const FermiFock f(3);
  const OmegaSet set = omega_alpha_fermi(f, omega_P_fermi(f, d.h, d.T), d.k);
  std::vector<CharacterSample> samples;
  std::vector<std::vector<cplx>> traces;
  for (const GroupElement& g : sample_elements(GaugeAction::z2(3, 3), 0, 0)) {
    CharacterSample s;
    s.det_h = char_det_h(d.h, g.on_codomain);
    s.k_eigs = Vector(0);
    samples.push_back(s);
    traces.push_back(level_traces(charge_rep_matrix(set.vectors, f.gamma(g.on_codomain), 1e-10), set.labels, 1));
  }
  const SectorTable t = sector_table(Algebra::Car, GroupTag::Z2, 1, 0, samples, 0, 0);
  CHECK(oracle_compare(t, traces, 1e-10).max_deviation <= 1e-10);
}

TEST_CASE("oracle comparison on the bosonic shift") {
  const BlockOperator v = shift_isometry(1);
  const CcrChargeData d = analyze_ccr({v, DeclaredIndex::truncation()});
  const BoseFock f(2, 8);
  const BoseOmega w = omega_P_bose(f, d.T);
  const BoseOmegaSet set = omega_alpha_bose(f, w, d.T, d.k, 5, 1e-10);
  std::vector<CharacterSample> samples;
  std::vector<std::vector<cplx>> traces;
  for (const GroupElement& g : sample_elements(GaugeAction::u1({1}, {1, 1}), 64, 0)) {
    CharacterSample s;
    s.k_eigs = compressed_eigenvalues(compress_kappa(d.k, g.on_codomain, 1e-8));
    samples.push_back(s);
    traces.push_back(level_traces(charge_rep_matrix(set.polar, f.gamma(g.on_codomain), 1e-6), set.labels, 6));
  }
  const SectorTable t = sector_table(Algebra::Ccr, GroupTag::U1, 1, d.k.dim(), samples, 5, 0);
  REQUIRE(t.rows.size() == 6);
  CHECK(oracle_compare(t, traces, 1e-6).pass);
}

}
