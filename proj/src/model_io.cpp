#include "qfree/model_io.hpp"

#include <fstream>
#include <sstream>

#include "qfree/builders.hpp"
#include "qfree/errors.hpp"

namespace qfree {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { raise(ErrorKind::MalformedInput, what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) malformed(where + ": missing \"" + key + "\"");
  return j.at(key);
}

Index count_field(const json& j, const char* key, const std::string& where) {
  const json& x = field(j, key, where);
  if (!x.is_number_integer() || x.get<long long>() < 0) malformed(where + ": \"" + key + "\" must be a non-negative integer");
  return static_cast<Index>(x.get<long long>());
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) malformed(where + " must be an array");
  std::vector<int> out;
  for (const json& x : j) {
    if (!x.is_number_integer()) malformed(where + " must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<ModeLabel> label_list(const json& j, const std::string& where) {
  if (!j.is_array()) malformed(where + " must be an array");
  std::vector<ModeLabel> out;
  for (const json& x : j) {
    if (!x.is_object()) malformed(where + " entries must be objects");
    ModeLabel l;
    l.charge = x.value("charge", 1);
    l.multiplet = x.value("multiplet", -1);
    l.component = x.value("component", 0);
    l.conjugate = x.value("conjugate", false);
    out.push_back(l);
  }
  return out;
}

GaugeAction parse_gauge(const json& g, Index nd, Index nc, int* sample_size,
                        std::optional<std::uint64_t>* seed) {
  if (!g.is_object()) malformed("gauge must be an object");
  GroupTag tag;
  try {
    tag = group_tag_from_string(field(g, "group", "gauge").get<std::string>());
  } catch (const json::exception&) {
    malformed("gauge.group must be a string");
  }
  GaugeAction a;
  switch (tag) {
    case GroupTag::U1: {
      std::vector<int> qd(static_cast<std::size_t>(nd), 1), qc(static_cast<std::size_t>(nc), 1);
      if (g.contains("domain_charges")) qd = int_list(g["domain_charges"], "gauge.domain_charges");
      if (g.contains("codomain_charges")) qc = int_list(g["codomain_charges"], "gauge.codomain_charges");
      a = GaugeAction::u1(qd, qc);
      break;
    }
    case GroupTag::Z2:
      a = GaugeAction::z2(nd, nc);
      break;
    case GroupTag::UN:
    case GroupTag::SUN: {
      const int n = g.value("n", 0);
      if (n < 1) malformed("gauge.n must be a positive integer");
      a = GaugeAction::un(n, nd, nc, tag == GroupTag::SUN);
      break;
    }
    case GroupTag::Custom: {
      a.group = GroupTag::Custom;
      a = GaugeAction::z2(nd, nc);
      a.group = GroupTag::Custom;
      for (const json& e : field(g, "elements", "gauge")) {
        Matrix d = matrix_from_json(field(e, "domain", "gauge.elements"), "gauge element domain");
        Matrix c = matrix_from_json(field(e, "codomain", "gauge.elements"), "gauge element codomain");
        if (d.rows() != nd || d.cols() != nd || c.rows() != nc || c.cols() != nc)
          malformed("gauge element shape does not match the mode counts");
        a.custom.emplace_back(std::move(d), std::move(c));
      }
      if (a.custom.empty()) malformed("custom gauge needs at least one element");
      break;
    }
  }
  if (g.contains("domain")) a.domain = label_list(g["domain"], "gauge.domain");
  if (g.contains("codomain")) a.codomain = label_list(g["codomain"], "gauge.codomain");
  if (static_cast<Index>(a.domain.size()) != nd || static_cast<Index>(a.codomain.size()) != nc)
    malformed("gauge mode assignment does not match the mode counts");
  if (g.contains("sample_size")) {
    if (!g["sample_size"].is_number_integer() || g["sample_size"].get<long long>() < 1)
      malformed("gauge.sample_size must be a positive integer");
    *sample_size = g["sample_size"].get<int>();
  }
  if (g.contains("seed")) {
    if (!g["seed"].is_number_unsigned()) malformed("gauge.seed must be a non-negative integer");
    *seed = g["seed"].get<std::uint64_t>();
  }
  return a;
}

}  // namespace

Algebra algebra_from_string(const std::string& s) {
  if (s == "car") return Algebra::Car;
  if (s == "ccr") return Algebra::Ccr;
  malformed("algebra must be \"car\" or \"ccr\", got \"" + s + "\"");
}

json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return {{"re", re}, {"im", im}};
}

Matrix matrix_from_json(const json& j, const std::string& what) {
  const json& re = field(j, "re", what);
  if (!re.is_array() || re.empty()) malformed(what + ".re must be a non-empty array of rows");
  const json im = j.contains("im") ? j.at("im") : json();
  if (!im.is_null() && (!im.is_array() || im.size() != re.size()))
    malformed(what + ".im must have as many rows as .re");
  const Index rows = static_cast<Index>(re.size());
  if (!re[0].is_array()) malformed(what + ".re rows must be arrays");
  const Index cols = static_cast<Index>(re[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& rr = re[static_cast<std::size_t>(i)];
    if (!rr.is_array() || static_cast<Index>(rr.size()) != cols)
      malformed(what + ": row " + std::to_string(i) + " has the wrong length");
    const json* ir = im.is_null() ? nullptr : &im[static_cast<std::size_t>(i)];
    if (ir && (!ir->is_array() || static_cast<Index>(ir->size()) != cols))
      malformed(what + ": imaginary row " + std::to_string(i) + " has the wrong length");
    for (Index k = 0; k < cols; ++k) {
      const json& a = rr[static_cast<std::size_t>(k)];
      if (!a.is_number()) malformed(what + ": non-numeric entry");
      double b = 0.0;
      if (ir) {
        const json& x = (*ir)[static_cast<std::size_t>(k)];
        if (!x.is_number()) malformed(what + ": non-numeric entry");
        b = x.get<double>();
      }
      m(i, k) = cplx(a.get<double>(), b);
    }
  }
  return m;
}

ModelFile model_from_builder(const std::string& spec) {
  const NamedModel n = build_named(spec);
  ModelFile m;
  m.label = n.name;
  m.builder = n.name;
  m.v = n.v;
  m.gauge = n.gauge;
  m.dirac = n.dirac;
  m.dirac_w = n.dirac_w;
  m.dirac_m = n.dirac_m;
  return m;
}

ModelFile parse_model(const json& j) {
  if (!j.is_object()) malformed("model file must be a JSON object");
  const json& iso = field(j, "isometry", "model");
  ModelFile m;
  if (iso.is_string() || (iso.is_object() && iso.contains("builder"))) {
    const json& b = iso.is_string() ? iso : iso.at("builder");
    if (!b.is_string()) malformed("isometry.builder must be a string");
    m = model_from_builder(b.get<std::string>());
  } else if (iso.is_object()) {
    const json& space = field(j, "space", "model");
    const Index nd = count_field(space, "domain_modes", "space");
    const Index nc = count_field(space, "codomain_modes", "space");
    if (nd < 1 || nc < nd) malformed("space: need 1 <= domain_modes <= codomain_modes");
    const Matrix a = matrix_from_json(iso, "isometry");
    if (a.rows() != 2 * nc || a.cols() != 2 * nd)
      malformed("isometry is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                ", expected " + std::to_string(2 * nc) + "x" + std::to_string(2 * nd));
    m.v = BlockOperator(SelfDualSpace(nd), SelfDualSpace(nc), a);
    m.label = "matrix";
    m.gauge = GaugeAction::u1(std::vector<int>(static_cast<std::size_t>(nd), 1),
                              std::vector<int>(static_cast<std::size_t>(nc), 1));
  } else {
    malformed("isometry must be a builder string or a matrix object");
  }

  if (j.contains("space") && !m.dirac) {
    const json& space = j.at("space");
    if (!m.builder.empty()) {
      if (space.contains("domain_modes") && count_field(space, "domain_modes", "space") != m.v.domain().modes())
        malformed("space.domain_modes does not match the builder");
      if (space.contains("codomain_modes") && count_field(space, "codomain_modes", "space") != m.v.codomain().modes())
        malformed("space.codomain_modes does not match the builder");
    }
    if (space.contains("labels")) {
      const json& l = space.at("labels");
      if (!l.is_array() || static_cast<Index>(l.size()) != m.v.codomain().modes())
        malformed("space.labels must name every codomain mode");
      for (const json& x : l) {
        if (!x.is_string()) malformed("space.labels must be strings");
        m.mode_labels.push_back(x.get<std::string>());
      }
    }
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) malformed("label must be a string");
    m.label = j["label"].get<std::string>();
  }
  if (j.contains("algebra")) {
    if (!j["algebra"].is_string()) malformed("algebra must be a string");
    m.algebra = algebra_from_string(j["algebra"].get<std::string>());
  }
  if (j.contains("declared_index")) {
    const json& d = j["declared_index"];
    if (d.is_string() && d.get<std::string>() == "infinite")
      m.declared = DeclaredIndex::of(ExtendedIndex::unbounded());
    else if (d.is_number_integer() && d.get<long long>() >= 0)
      m.declared = DeclaredIndex::of(ExtendedIndex::finite(static_cast<Index>(d.get<long long>())));
    else
      malformed("declared_index must be a non-negative integer or \"infinite\"");
  }
  if (j.contains("gauge") && !m.dirac)
    m.gauge = parse_gauge(j["gauge"], m.v.domain().modes(), m.v.codomain().modes(), &m.sample_size, &m.seed);
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelFile load_model(const std::string& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed("'" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return parse_model(j);
  } catch (const json::exception& e) {
    malformed("'" + path + "': " + e.what());
  }
}

}  // namespace qfree
