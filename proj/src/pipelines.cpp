#include "qfree/pipelines.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "qfree/ccr_charge.hpp"
#include "qfree/dirac.hpp"
#include "qfree/fock.hpp"

namespace qfree {

using nlohmann::json;

namespace {

// Thresholds for self-checks that the reports compare against.
constexpr double kBasisTol = 1e-10;      // basis projection identities
constexpr double kRecoveryTol = 1e-8;    // ker P11 = h, P21 P11^-1 = T
constexpr double kFermiOracleTol = 1e-10;
constexpr double kTheoremTol = 1e-8;
constexpr double kBoseOracleTol = 1e-6;
constexpr double kGaugeTol = 1e-8;       // ||V U - U V|| for a compatible gauge
constexpr double kInvariantTol = 1e-8;   // invariance of h and k under U

json cplx_pair(cplx z) { return json::array({z.real(), z.imag()}); }

json index_json(const ExtendedIndex& i) { return i.infinite ? json("infinite") : json(i.value); }
json count_json(const ExtendedCount& c) { return c.infinite ? json("infinite") : json(c.value); }

std::uint64_t resolve_seed(const ModelFile* m, const RunOptions& opt) {
  if (opt.seed) return *opt.seed;
  if (m && m->seed) return *m->seed;
  return kDefaultSeed;
}

Algebra resolve_algebra(const ModelFile& m, const RunOptions& opt) {
  if (opt.algebra) return *opt.algebra;
  return m.algebra.value_or(Algebra::Car);
}

json header(const char* command, const InputInfo& in, const ModelFile* m, std::uint64_t seed) {
  json h;
  h["schema_version"] = kSchemaVersion;
  h["tool_version"] = kToolVersion;
  h["command"] = command;
  json input = {{"source", in.source}, {"input_digest", in.digest}};
  if (m) {
    input["label"] = m->label;
    input["builder"] = m->builder;
    input["domain_modes"] = m->v.domain().modes();
    input["codomain_modes"] = m->v.codomain().modes();
    if (!m->mode_labels.empty()) input["mode_labels"] = m->mode_labels;
  }
  h["input"] = input;
  h["seed"] = seed;
  return h;
}

json membership_json(const MembershipRecord& r) {
  return {{"is_isometry", r.is_isometry},
          {"is_real", r.is_real},
          {"implementable", r.implementable},
          {"isometry_defect", comparison(r.isometry_defect, r.tol)},
          {"reality_defect", comparison(r.reality_defect, r.tol)},
          {"hs_commutator", r.hs_defect}};
}

struct GaugeRun {
  std::vector<GroupElement> elements;
  double commutator = 0.0;
  bool compatible = false;
};

GaugeRun gauge_run(const ModelFile& m, const RunOptions& opt, std::uint64_t seed) {
  GaugeRun g;
  const int count = opt.sample_size > 0 ? opt.sample_size
                    : m.sample_size > 0 ? m.sample_size
                                        : default_sample_size(m.gauge.group);
  g.elements = sample_elements(m.gauge, count, seed);
  for (const GroupElement& e : g.elements)
    g.commutator = std::max(g.commutator, op_norm(m.v * e.on_domain - e.on_codomain * m.v));
  g.compatible = g.commutator <= kGaugeTol;
  return g;
}

json gauge_json(const ModelFile& m, const GaugeRun& g, std::uint64_t seed) {
  json labels = json::array();
  for (const GroupElement& e : g.elements) labels.push_back(e.label);
  return {{"group", to_string(m.gauge.group)},
          {"n", m.gauge.n},
          {"sample_size", g.elements.size()},
          {"seed", seed},
          {"commutator", comparison(g.commutator, kGaugeTol)},
          {"elements", labels}};
}

json table_json(const SectorTable& t) {
  json rows = json::array();
  for (const SectorRow& r : t.rows) {
    json re = json::array(), im = json::array();
    for (cplx z : r.characters) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    rows.push_back({{"level", r.level},
                    {"dimension", r.dimension},
                    {"class", r.class_label},
                    {"characters", {{"re", re}, {"im", im}}}});
  }
  return {{"algebra", to_string(t.algebra)},
          {"group", to_string(t.group)},
          {"n", t.n},
          {"k_dim", t.k_dim},
          {"sample_size", t.sample_size},
          {"seed", t.seed},
          {"tol_char", t.tol_char},
          {"rows", rows},
          {"annotations", t.annotations}};
}

SectorTable car_table(const CarChargeData& d, const ModelFile& m, const GaugeRun& g,
                      std::uint64_t seed, std::vector<Matrix>* compressions = nullptr) {
  std::vector<CharacterSample> samples;
  for (const GroupElement& e : g.elements) {
    CharacterSample s;
    s.label = e.label;
    s.det_h = char_det_h(d.h, e.on_codomain, kInvariantTol);
    const Matrix u = compress(d.k, e.on_codomain, kInvariantTol);
    s.k_eigs = compressed_eigenvalues(u, kInvariantTol);
    if (compressions) compressions->push_back(u);
    samples.push_back(s);
  }
  return sector_table(Algebra::Car, m.gauge.group, m.gauge.n, d.k.dim(), samples, 0, seed);
}

SectorTable ccr_table(const CcrChargeData& d, const ModelFile& m, const GaugeRun& g,
                      Index levels, std::uint64_t seed) {
  std::vector<CharacterSample> samples;
  for (const GroupElement& e : g.elements) {
    CharacterSample s;
    s.label = e.label;
    s.k_eigs = compressed_eigenvalues(compress_kappa(d.k, e.on_codomain, kInvariantTol), kInvariantTol);
    samples.push_back(s);
  }
  return sector_table(Algebra::Ccr, m.gauge.group, m.gauge.n, d.k.dim(), samples, levels, seed);
}

json car_charge_json(const CarChargeData& d) {
  const ProjectionChecks& c = d.checks;
  return {{"dim_h", d.h.dim()},
          {"dim_k", d.k.dim()},
          {"ind", index_json(d.ind)},
          {"stat_dim", count_json(d.stat_dim)},
          {"hs_defect", d.hs_defect},
          {"t_norm", d.t_norm},
          {"dim_k_is_half_ind", !d.ind.infinite && 2 * d.k.dim() == d.ind.value},
          {"checks",
           {{"idempotence", comparison(c.idempotence, kBasisTol)},
            {"self_adjoint", comparison(c.self_adjoint, kBasisTol)},
            {"conjugation", comparison(c.conjugation, kBasisTol)},
            {"h_recovery", comparison(c.h_recovery, kRecoveryTol)},
            {"t_recovery", comparison(c.t_recovery, kRecoveryTol)}}}};
}

json ccr_charge_json(const CcrChargeData& d) {
  const CcrChecks& c = d.checks;
  return {{"dim_k", d.k.dim()},
          {"ind", index_json(d.ind)},
          {"stat_dim", count_json(d.stat_dim)},
          {"hs_defect", d.hs_defect},
          {"t_norm", comparison(d.t_norm, 1.0 - 1e-8)},
          {"dim_k_is_half_ind", !d.ind.infinite && 2 * d.k.dim() == d.ind.value},
          {"checks",
           {{"a_split", comparison(c.a_split, 1e-8)},
            {"p_idempotence", comparison(c.p_idempotence, kRecoveryTol)},
            {"p_kappa_adjoint", comparison(c.p_kappa_adjoint, kRecoveryTol)},
            {"p_support", comparison(c.p_support, kRecoveryTol)},
            {"idempotence", comparison(c.idempotence, kRecoveryTol)},
            {"kappa_adjoint", comparison(c.kappa_adjoint, kRecoveryTol)},
            {"conjugation", comparison(c.conjugation, kRecoveryTol)},
            {"min_positivity", c.min_positivity},
            {"t_symmetry", comparison(c.t_symmetry, kRecoveryTol)}}}};
}

bool only_unit_charges(const GaugeAction& g) {
  if (g.group != GroupTag::U1) return false;
  for (const auto* side : {&g.domain, &g.codomain})
    for (const ModeLabel& l : *side)
      if (l.charge != 1 && l.charge != -1) return false;
  return true;
}

std::vector<int> charges(const std::vector<ModeLabel>& labels) {
  std::vector<int> q;
  for (const ModeLabel& l : labels) q.push_back(l.charge);
  return q;
}

json oracle_json(const OracleComparison& c) {
  return {{"max_deviation", comparison(c.max_deviation, c.tolerance)},
          {"worst_sample", c.worst_sample},
          {"worst_level", c.worst_level}};
}

json run_car_oracle(const ModelFile& m, const RunOptions& opt, std::uint64_t seed, json report) {
  const CarChargeData d = analyze_car({m.v, m.declared}, opt.tol);
  report["membership"] = membership_json(d.membership);
  report["charge"] = car_charge_json(d);
  const FermiFock fd(m.v.domain().modes(), opt.fock_cap);
  const FermiFock fc(m.v.codomain().modes(), opt.fock_cap);
  const Vector omega = omega_P_fermi(fc, d.h, d.T);
  const OmegaSet set = omega_alpha_fermi(fc, omega, d.k, kFermiOracleTol);
  const ImplementerSet imp = implementers_from_omegas(fd, fc, m.v, set, kFermiOracleTol);
  const std::uint64_t expected = d.stat_dim.infinite ? 0 : d.stat_dim.value;
  report["fock"] = {{"fermionic", true},
                    {"domain_dim", fd.dim()},
                    {"codomain_dim", fc.dim()},
                    {"fock_cap", opt.fock_cap},
                    {"vacuum_amplitude", std::abs(omega[0])},
                    {"annihilation_residual", comparison(annihilation_residual(fc, d.P, omega), kFermiOracleTol)},
                    {"omega_gram_defect", comparison(set.gram_defect, kFermiOracleTol)}};
  report["implementers"] = {{"count", imp.psi.size()},
                            {"expected", expected},
                            {"count_matches", imp.psi.size() == expected},
                            {"isometry_defect", comparison(imp.isometry_defect, kFermiOracleTol)},
                            {"orthogonality", comparison(imp.orthogonality, kFermiOracleTol)},
                            {"completeness", comparison(imp.completeness, kFermiOracleTol)},
                            {"imp_residual", comparison(imp.imp_residual, kFermiOracleTol)}};

  const GaugeRun g = gauge_run(m, opt, seed);
  report["gauge"] = gauge_json(m, g, seed);
  double invariance = 0.0, imp_gauge = 0.0;
  std::vector<Matrix> gammas_c;
  for (const GroupElement& e : g.elements) {
    gammas_c.push_back(fc.gamma(e.on_codomain));
    invariance = std::max(invariance, invariance_residual(set.vectors, gammas_c.back()));
    imp_gauge = std::max(imp_gauge, implementer_gauge_residual(imp, gammas_c.back(), fd.gamma(e.on_domain)));
  }
  report["invariance"] = {{"gauge_compatible", g.compatible},
                          {"omega_span", comparison(invariance, kFermiOracleTol)},
                          {"implementer_span", comparison(imp_gauge, kFermiOracleTol)}};
  if (!g.compatible) {
    report["theorem"] = {{"skipped", "gauge action does not commute with V"}};
    return report;
  }

  std::vector<Matrix> us;
  const SectorTable table = car_table(d, m, g, seed, &us);
  std::vector<std::vector<cplx>> traces;
  double block_dev = 0.0;
  json det_h = json::array();
  for (std::size_t s = 0; s < g.elements.size(); ++s) {
    const Matrix rep = charge_rep_matrix(set.vectors, gammas_c[s], kFermiOracleTol);
    traces.push_back(level_traces(rep, set.labels, d.k.dim() + 1));
    const cplx dh = g.elements.empty() ? cplx(1.0) : table.rows[0].characters[s];
    det_h.push_back(cplx_pair(dh));
    Index off = 0;
    for (Index l = 0; l <= d.k.dim(); ++l) {
      const Matrix expect = dh * lambda_power(us[s], l);
      const Index b = expect.rows();
      block_dev = std::max(block_dev, (rep.block(off, off, b, b) - expect).cwiseAbs().maxCoeff());
      if (off > 0) block_dev = std::max(block_dev, rep.block(0, off, off, b).cwiseAbs().maxCoeff());
      off += b;
    }
  }
  json theorem = {{"traces", oracle_json(oracle_compare(table, traces, kTheoremTol))},
                  {"blocks", comparison(block_dev, kTheoremTol)},
                  {"det_h", det_h}};
  if (m.gauge.group == GroupTag::Z2 && d.ind == ExtendedIndex::finite(0)) {
    const int z2 = z2_index(m.v, opt.tol);
    for (std::size_t s = 0; s < g.elements.size(); ++s)
      if (std::abs(g.elements[s].abstract(0, 0) + 1.0) < 1e-12) {
        const cplx observed = charge_rep_matrix(set.vectors, gammas_c[s], kFermiOracleTol)(0, 0);
        theorem["z2"] = {{"z2_index", z2},
                         {"observed", cplx_pair(observed)},
                         {"deviation", comparison(std::abs(observed - static_cast<double>(z2)), kTheoremTol)}};
      }
  }
  report["theorem"] = theorem;
  report["sector_table"] = table_json(table);
  return report;
}

json run_ccr_oracle(const ModelFile& m, const RunOptions& opt, std::uint64_t seed, json report) {
  const CcrChargeData d = analyze_ccr({m.v, m.declared}, opt.tol);
  report["membership"] = membership_json(d.membership);
  report["charge"] = ccr_charge_json(d);
  const Index modes = m.v.codomain().modes();
  double fock_dim = 1.0;
  for (Index i = 0; i < modes; ++i) fock_dim *= static_cast<double>(opt.bose_cutoff + 1);
  require(fock_dim <= static_cast<double>(opt.fock_cap), ErrorKind::CapExceeded,
          "bosonic Fock dimension exceeds --fock-cap");
  const BoseFock fc(modes, opt.bose_cutoff);
  const BoseOmega omega = omega_P_bose(fc, d.T, opt.bose_tail_limit);
  const Index levels = std::min(opt.bose_levels, opt.bose_cutoff);
  const BoseOmegaSet set = omega_alpha_bose(fc, omega, d.T, d.k, d.k.dim() ? levels : 0, kBoseOracleTol);
  // Truncation loses norm: the vacuum tail, plus whatever the cutoff removes
  // from the excited Omega_alpha (visible in the Gram defect).  Traces over a
  // level add up one such loss per basis vector.
  Index widest = 1;
  for (Index l = 0; l <= (d.k.dim() ? levels : 0); ++l) widest = std::max(widest, multiset_count(d.k.dim(), l));
  const double loss = std::max(omega.tail, set.gram_defect);
  const double tol = kBoseOracleTol + loss * static_cast<double>(widest);
  const double rep_tol = kBoseOracleTol + 2.0 * loss * static_cast<double>(set.polar.size());
  json constants = json::array();
  for (cplx c : set.constants) constants.push_back(cplx_pair(c));
  report["fock"] = {{"fermionic", false},
                    {"cutoff", opt.bose_cutoff},
                    {"codomain_dim", fc.dim()},
                    {"levels", levels},
                    {"tail", omega.tail},
                    {"tail_limit", opt.bose_tail_limit},
                    {"vacuum_amplitude", std::abs(omega.omega[0])},
                    {"omega_gram_defect", comparison(set.gram_defect, kBoseOracleTol + omega.tail)},
                    {"proportionality", comparison(set.proportionality, tol)},
                    {"constants", constants}};

  const GaugeRun g = gauge_run(m, opt, seed);
  report["gauge"] = gauge_json(m, g, seed);
  std::vector<SparseMatrix> gammas;
  double invariance = 0.0;
  for (const GroupElement& e : g.elements) {
    gammas.push_back(fc.gamma(e.on_codomain));
    invariance = std::max(invariance, invariance_residual(set.polar, Matrix(gammas.back())));
  }
  report["invariance"] = {{"gauge_compatible", g.compatible}, {"omega_span", comparison(invariance, tol)}};
  if (!g.compatible) {
    report["theorem"] = {{"skipped", "gauge action does not commute with V"}};
    return report;
  }
  const SectorTable table = ccr_table(d, m, g, d.k.dim() ? levels : 0, seed);
  std::vector<std::vector<cplx>> traces;
  for (std::size_t s = 0; s < g.elements.size(); ++s)
    traces.push_back(level_traces(charge_rep_matrix(set.polar, gammas[s], rep_tol), set.labels,
                                  static_cast<Index>(table.rows.size())));
  report["theorem"] = {{"traces", oracle_json(oracle_compare(table, traces, tol))}, {"tail", omega.tail}, {"tail_bound", tol - kBoseOracleTol}};
  report["sector_table"] = table_json(table);
  return report;
}

json trend_json(const dirac::TrendRecord& r) {
  return {{"name", r.name},
          {"partial", r.partial},
          {"increments", r.increments},
          {"slope", r.slope},
          {"slope_threshold", dirac::kSlopeThreshold},
          {"increments_positive", r.increments_positive},
          {"increments_decreasing", r.increments_decreasing},
          {"consistent", r.consistent}};
}

json study_json(const dirac::HsStudy& s) {
  json records = json::array();
  for (const auto& r : s.records) records.push_back(trend_json(r));
  return {{"cutoffs", s.cutoffs}, {"w_max", s.w_max}, {"m_loc", s.m_loc}, {"records", records}, {"verdict", s.verdict}};
}

}  // namespace

json comparison(double value, double tolerance) {
  return {{"value", value}, {"tolerance", tolerance}, {"pass", value <= tolerance}};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) == 1,
          ErrorKind::MalformedInput, "sha256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput:
    case ErrorKind::CapExceeded:
    case ErrorKind::WindowTooSmall:  // an unusable --cutoffs value
      return 2;
    case ErrorKind::NotInSemigroup:
      return 3;
    default:
      return 4;
  }
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

json run_analyze(const ModelFile& m, const InputInfo& in, const RunOptions& opt) {
  if (m.dirac) {
    RunOptions o = opt;
    o.cutoffs = {m.dirac_w / 8, m.dirac_w / 4, m.dirac_w / 2, m.dirac_w};
    json r = run_dirac(o, in);
    r["window"] = {{"w", m.dirac_w}, {"m_loc", m.dirac_m}};
    const dirac::WindowChecks c = dirac::window_checks(dirac::build_v(m.dirac_w, m.dirac_m));
    r["window"]["isometry_defect"] = c.isometry_defect;
    r["window"]["shift_defect"] = comparison(c.shift_defect, dirac::tail_bound(m.dirac_w));
    r["window"]["fixed_defect"] = comparison(c.fixed_defect, dirac::tail_bound(m.dirac_w));
    return r;
  }
  const std::uint64_t seed = resolve_seed(&m, opt);
  const Algebra alg = resolve_algebra(m, opt);
  json r = header("analyze", in, &m, seed);
  r["algebra"] = to_string(alg);
  r["tolerances"] = {{"membership", opt.tol},
                     {"basis_projection", kBasisTol},
                     {"recovery", kRecoveryTol},
                     {"gauge_commutator", kGaugeTol},
                     {"invariance", kInvariantTol}};
  const GaugeRun g = gauge_run(m, opt, seed);
  if (alg == Algebra::Car) {
    const CarChargeData d = analyze_car({m.v, m.declared}, opt.tol);
    r["membership"] = membership_json(d.membership);
    r["charge"] = car_charge_json(d);
    if (d.ind == ExtendedIndex::finite(0) && m.v.domain() == m.v.codomain())
      r["z2_index"] = z2_index(m.v, opt.tol);
    if (only_unit_charges(m.gauge) && m.v.domain() == m.v.codomain()) {
      const U1Charge q = u1_charge(m.v, charges(m.gauge.domain), charges(m.gauge.codomain), opt.tol);
      r["u1_charge"] = {{"index", q.index}, {"det_h_exponent", q.det_h_exponent}, {"convention", q.convention}};
    }
    r["gauge"] = gauge_json(m, g, seed);
    if (g.compatible && !d.ind.infinite) r["sector_table"] = table_json(car_table(d, m, g, seed));
  } else {
    const CcrChargeData d = analyze_ccr({m.v, m.declared}, opt.tol);
    r["membership"] = membership_json(d.membership);
    r["charge"] = ccr_charge_json(d);
    r["gauge"] = gauge_json(m, g, seed);
    if (g.compatible && !d.ind.infinite)
      r["sector_table"] = table_json(ccr_table(d, m, g, d.k.dim() ? opt.bose_levels : 0, seed));
  }
  if (!r.contains("sector_table"))
    r["sector_table"] = {{"skipped", g.compatible ? "infinite index" : "gauge action does not commute with V"}};
  return r;
}

json run_oracle(const ModelFile& m, const InputInfo& in, const RunOptions& opt) {
  require(!m.dirac, ErrorKind::MalformedInput, "the oracle needs a finite matrix model");
  const std::uint64_t seed = resolve_seed(&m, opt);
  const Algebra alg = resolve_algebra(m, opt);
  json r = header("oracle", in, &m, seed);
  r["algebra"] = to_string(alg);
  r["tolerances"] = {{"membership", opt.tol},
                     {"fermionic_oracle", kFermiOracleTol},
                     {"theorem", kTheoremTol},
                     {"bosonic_oracle", kBoseOracleTol},
                     {"gauge_commutator", kGaugeTol}};
  return alg == Algebra::Car ? run_car_oracle(m, opt, seed, r) : run_ccr_oracle(m, opt, seed, r);
}

json run_dirac(const RunOptions& opt, const InputInfo& in) {
  json r = header("dirac", in, nullptr, resolve_seed(nullptr, opt));
  r["cutoffs"] = opt.cutoffs;
  r["m_loc_rule"] = "W/4";
  r["normalization"] = "d lambda / 2 pi";
  r["localization_reading"] = "chiral circle: one complement component S^1 \\ I, test family chi_{S^1\\I} e_k, |k| <= 3";
  r["tolerances"] = {{"slope_threshold", dirac::kSlopeThreshold}, {"index_threshold", dirac::kIndexThreshold}};

  // Validates the cutoff list before any heavy work.
  const dirac::HsStudy study = dirac::hs_commutator_study(opt.cutoffs);
  json windows = json::array();
  double prev_loc = 0.0;
  bool loc_decreasing = true;
  for (Index w : opt.cutoffs) {
    const dirac::OverlapChecks oc = dirac::overlap_checks(w, w / 4);
    const dirac::VWindow v = dirac::build_v(w, w / 4);
    const dirac::WindowChecks wc = dirac::window_checks(v);
    const dirac::LocalPhase lp = dirac::prop_loc_check(v.v, dirac::complement_family(w, 3), oc.tail_bound);
    if (w != opt.cutoffs.front() && !(lp.residual < prev_loc)) loc_decreasing = false;
    prev_loc = lp.residual;
    windows.push_back({{"w", w},
                       {"m_loc", v.m_loc},
                       {"row_deviation", comparison(oc.row_deviation, oc.tail_bound)},
                       {"orthogonality", comparison(oc.orthogonality, oc.tail_bound)},
                       {"isometry_defect", wc.isometry_defect},
                       {"shift_defect", comparison(wc.shift_defect, oc.tail_bound)},
                       {"fixed_defect", comparison(wc.fixed_defect, oc.tail_bound)},
                       {"localization", {{"tau", cplx_pair(lp.tau)}, {"residual", comparison(lp.residual, oc.tail_bound)}}}});
  }
  r["windows"] = windows;
  r["localization_decreasing"] = loc_decreasing;
  r["hs_study"] = study_json(study);
  r["control"] = study_json(dirac::control_study(opt.cutoffs));

  std::vector<Index> last(opt.cutoffs.end() - std::min<std::ptrdiff_t>(2, static_cast<std::ptrdiff_t>(opt.cutoffs.size())),
                          opt.cutoffs.end());
  const dirac::IndexEstimate est = dirac::index_estimate(last);
  json samples = json::array();
  for (const auto& s : est.samples)
    samples.push_back({{"w", s.w},
                       {"cokernel", s.cokernel},
                       {"kernel", s.kernel},
                       {"gap", s.gap},
                       {"cokernel_overlap_f0", s.cokernel_overlap}});
  r["index"] = {{"samples", samples}, {"index", est.index}, {"stable", true}};
  const dirac::Assembly a = dirac::assemble(opt.gauge_n, est.index);
  r["assembly"] = {{"species", a.species},
                   {"index_v", a.index_v},
                   {"half_index", a.half_index},
                   {"index", a.index},
                   {"stat_dim", a.stat_dim},
                   {"statement", "1/2 IND V = " + std::to_string(a.half_index) + ", d = 2^" +
                                     std::to_string(a.half_index) + " = " + std::to_string(a.stat_dim)}};
  return r;
}

}  // namespace qfree
