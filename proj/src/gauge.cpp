#include "qfree/gauge.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qfree {

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::U1: return "U1";
    case GroupTag::UN: return "UN";
    case GroupTag::SUN: return "SUN";
    case GroupTag::Z2: return "Z2";
    case GroupTag::Custom: return "Custom";
  }
  return "?";
}

GroupTag group_tag_from_string(const std::string& s) {
  if (s == "U1") return GroupTag::U1;
  if (s == "UN") return GroupTag::UN;
  if (s == "SUN") return GroupTag::SUN;
  if (s == "Z2") return GroupTag::Z2;
  if (s == "Custom") return GroupTag::Custom;
  raise(ErrorKind::MalformedInput, "unknown group tag '" + s + "'");
}

std::string to_string(Algebra a) { return a == Algebra::Car ? "car" : "ccr"; }

GaugeAction GaugeAction::u1(std::vector<int> domain_charges, std::vector<int> codomain_charges) {
  GaugeAction g;
  g.group = GroupTag::U1;
  for (int q : domain_charges) g.domain.push_back({q, -1, 0, false});
  for (int q : codomain_charges) g.codomain.push_back({q, -1, 0, false});
  return g;
}

GaugeAction GaugeAction::z2(Index domain_modes, Index codomain_modes) {
  GaugeAction g;
  g.group = GroupTag::Z2;
  g.domain.assign(static_cast<std::size_t>(domain_modes), ModeLabel{});
  g.codomain.assign(static_cast<std::size_t>(codomain_modes), ModeLabel{});
  return g;
}

GaugeAction GaugeAction::un(int n, Index domain_modes, Index codomain_modes, bool special) {
  require(n >= 1 && domain_modes % n == 0 && codomain_modes % n == 0, ErrorKind::MalformedInput,
          "mode counts must be multiples of N");
  GaugeAction g;
  g.group = special ? GroupTag::SUN : GroupTag::UN;
  g.n = n;
  // Species-major layout: mode s * (modes / n) + j is component s of multiplet j.
  auto fill = [n](Index modes) {
    std::vector<ModeLabel> out;
    const Index per = modes / n;
    for (Index i = 0; i < modes; ++i)
      out.push_back({1, static_cast<int>(i % per), static_cast<int>(i / per), false});
    return out;
  };
  g.domain = fill(domain_modes);
  g.codomain = fill(codomain_modes);
  return g;
}

namespace {

Matrix u11_for(const GaugeAction& action, const std::vector<ModeLabel>& labels,
               const Matrix& abstract) {
  const auto n = static_cast<Index>(labels.size());
  Matrix u = Matrix::Identity(n, n);
  switch (action.group) {
    case GroupTag::U1: {
      const double lambda = std::arg(abstract(0, 0));
      for (Index i = 0; i < n; ++i)
        u(i, i) = std::polar(1.0, labels[static_cast<std::size_t>(i)].charge * lambda);
      break;
    }
    case GroupTag::Z2:
      u *= abstract(0, 0);
      break;
    case GroupTag::UN:
    case GroupTag::SUN: {
      require(abstract.rows() == action.n, ErrorKind::ShapeMismatch, "group element size");
      std::map<std::pair<int, int>, Index> where;  // (multiplet, component) -> mode
      for (Index i = 0; i < n; ++i) {
        const ModeLabel& l = labels[static_cast<std::size_t>(i)];
        if (l.multiplet >= 0) where[{l.multiplet, l.component}] = i;
      }
      for (Index i = 0; i < n; ++i) {
        const ModeLabel& l = labels[static_cast<std::size_t>(i)];
        if (l.multiplet < 0) continue;
        u(i, i) = 0.0;
        for (int r = 0; r < action.n; ++r) {
          auto it = where.find({l.multiplet, r});
          require(it != where.end(), ErrorKind::MalformedInput, "incomplete multiplet");
          const cplx entry = abstract(r, l.component);
          u(it->second, i) = l.conjugate ? std::conj(entry) : entry;
        }
      }
      break;
    }
    case GroupTag::Custom:
      raise(ErrorKind::MalformedInput, "custom groups carry explicit matrices");
  }
  return u;
}

BlockOperator lift(const SelfDualSpace& space, const Matrix& u11) {
  const Index n = space.modes();
  return BlockOperator::from_blocks(space, space, u11, Matrix::Zero(n, n), Matrix::Zero(n, n),
                                    u11.conjugate());
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller on the raw engine output, so samples do not depend on the
// standard library's distribution implementation.
double gaussian(std::mt19937_64& rng) {
  double u = uniform01(rng);
  while (u <= 0.0) u = uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

}  // namespace

GroupElement make_element(const GaugeAction& action, const Matrix& abstract) {
  GroupElement g;
  g.abstract = abstract;
  const SelfDualSpace dom(static_cast<Index>(action.domain.size()));
  const SelfDualSpace cod(static_cast<Index>(action.codomain.size()));
  g.on_domain = lift(dom, u11_for(action, action.domain, abstract));
  g.on_codomain = lift(cod, u11_for(action, action.codomain, abstract));
  return g;
}

Matrix haar_unitary(int n, bool special, std::mt19937_64& rng) {
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(gaussian(rng), gaussian(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  if (special) q *= std::polar(1.0, -std::arg(q.determinant()) / n);
  return q;
}

int default_sample_size(GroupTag tag) {
  switch (tag) {
    case GroupTag::U1: return 64;
    case GroupTag::Z2: return 2;
    case GroupTag::UN:
    case GroupTag::SUN: return 50;
    case GroupTag::Custom: return 0;
  }
  return 0;
}

std::vector<GroupElement> sample_elements(const GaugeAction& action, int count,
                                          std::uint64_t seed) {
  std::vector<GroupElement> out;
  if (count <= 0) count = default_sample_size(action.group);
  switch (action.group) {
    case GroupTag::U1:
      for (int j = 0; j < count; ++j) {
        Matrix z(1, 1);
        z(0, 0) = std::polar(1.0, 2.0 * M_PI * j / count);
        GroupElement g = make_element(action, z);
        g.label = "lambda=2pi*" + std::to_string(j) + "/" + std::to_string(count);
        out.push_back(std::move(g));
      }
      break;
    case GroupTag::Z2:
      for (double s : {1.0, -1.0}) {
        Matrix z(1, 1);
        z(0, 0) = s;
        GroupElement g = make_element(action, z);
        g.label = s > 0 ? "+1" : "-1";
        out.push_back(std::move(g));
      }
      break;
    case GroupTag::UN:
    case GroupTag::SUN: {
      std::mt19937_64 rng(seed);
      for (int j = 0; j < count; ++j) {
        GroupElement g =
            make_element(action, haar_unitary(action.n, action.group == GroupTag::SUN, rng));
        g.label = "haar#" + std::to_string(j);
        out.push_back(std::move(g));
      }
      break;
    }
    case GroupTag::Custom: {
      const SelfDualSpace dom(static_cast<Index>(action.domain.size()));
      const SelfDualSpace cod(static_cast<Index>(action.codomain.size()));
      for (std::size_t j = 0; j < action.custom.size(); ++j) {
        GroupElement g;
        g.abstract = Matrix::Constant(1, 1, static_cast<double>(j));
        g.on_domain = lift(dom, action.custom[j].first);
        g.on_codomain = lift(cod, action.custom[j].second);
        g.label = "custom#" + std::to_string(j);
        out.push_back(std::move(g));
      }
      break;
    }
  }
  return out;
}

Matrix compress(const Subspace& s, const BlockOperator& u, double tol) {
  const Matrix& f = s.frame();
  const Matrix uf = u.matrix() * f;
  const Matrix c = f.adjoint() * uf;
  const double defect = s.is_empty() ? 0.0 : op_norm(Matrix(uf - f * c));
  require(defect <= tol, ErrorKind::NotInvariant,
          "subspace is not invariant (defect " + std::to_string(defect) + ")");
  return c;
}

Matrix compress_kappa(const Subspace& s, const BlockOperator& u, double tol) {
  const Matrix& f = s.frame();
  const Matrix uf = u.matrix() * f;
  const Matrix c = f.adjoint() * s.ambient().kappa() * uf;
  const double defect = s.is_empty() ? 0.0 : op_norm(Matrix(uf - f * c));
  require(defect <= tol, ErrorKind::NotInvariant,
          "subspace is not invariant (defect " + std::to_string(defect) + ")");
  return c;
}

cplx char_det_h(const Subspace& h, const BlockOperator& u, double tol) {
  if (h.is_empty()) return 1.0;
  return compress(h, u, tol).determinant();
}

Vector compressed_eigenvalues(const Matrix& c, double tol) {
  if (c.size() == 0) return Vector(0);
  const double normality = op_norm(Matrix(c * c.adjoint() - c.adjoint() * c));
  require(normality <= tol, ErrorKind::NotInvariant,
          "compressed action is not normal (" + std::to_string(normality) + ")");
  Eigen::ComplexSchur<Matrix> schur(c);
  return schur.matrixT().diagonal();
}

cplx elementary_symmetric(const Vector& eigs, Index l) {
  const Index n = eigs.size();
  if (l < 0 || l > n) return 0.0;
  std::vector<cplx> e(static_cast<std::size_t>(n + 1), 0.0);
  e[0] = 1.0;
  for (Index k = 0; k < n; ++k)
    for (Index j = k + 1; j >= 1; --j) e[static_cast<std::size_t>(j)] += eigs[k] * e[static_cast<std::size_t>(j - 1)];
  return e[static_cast<std::size_t>(l)];
}

cplx char_lambda(const Vector& eigs, Index l) {
  require(l >= 0 && l <= eigs.size(), ErrorKind::LevelOutOfRange,
          "level " + std::to_string(l) + " outside 0.." + std::to_string(eigs.size()));
  return elementary_symmetric(eigs, l);
}

cplx char_sym(const Vector& eigs, Index l) {
  require(l >= 0, ErrorKind::LevelOutOfRange, "negative level");
  std::vector<cplx> h(static_cast<std::size_t>(l + 1), 0.0);
  h[0] = 1.0;
  for (Index k = 0; k < eigs.size(); ++k)
    for (Index j = 1; j <= l; ++j) h[static_cast<std::size_t>(j)] += eigs[k] * h[static_cast<std::size_t>(j - 1)];
  return h[static_cast<std::size_t>(l)];
}

Index binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  Index r = 1;
  for (Index i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Index multiset_count(Index n, Index k) {
  if (n == 0) return k == 0 ? 1 : 0;
  return binomial(n + k - 1, k);
}

std::vector<std::vector<Index>> subsets_by_level(Index k) {
  std::vector<std::vector<Index>> out;
  for (Index l = 0; l <= k; ++l) {
    std::vector<Index> cur(static_cast<std::size_t>(l));
    for (Index i = 0; i < l; ++i) cur[static_cast<std::size_t>(i)] = i;
    while (true) {
      out.push_back(cur);
      Index i = l - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == k - l + i) --i;
      if (i < 0) break;
      ++cur[static_cast<std::size_t>(i)];
      for (Index j = i + 1; j < l; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::vector<std::vector<Index>> multisets_by_level(Index k, Index max_level) {
  std::vector<std::vector<Index>> out;
  for (Index l = 0; l <= max_level; ++l) {
    if (k == 0 && l > 0) break;
    std::vector<Index> cur(static_cast<std::size_t>(l), 0);
    while (true) {
      out.push_back(cur);
      Index i = l - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == k - 1) --i;
      if (i < 0) break;
      const Index v = cur[static_cast<std::size_t>(i)] + 1;
      for (Index j = i; j < l; ++j) cur[static_cast<std::size_t>(j)] = v;
    }
  }
  return out;
}

Matrix lambda_power(const Matrix& u, Index l) {
  const Index n = u.rows();
  std::vector<std::vector<Index>> sets;
  for (auto& s : subsets_by_level(n))
    if (static_cast<Index>(s.size()) == l) sets.push_back(s);
  const auto m = static_cast<Index>(sets.size());
  Matrix out(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      if (l == 0) {
        out(a, b) = 1.0;
        continue;
      }
      Matrix minor(l, l);
      for (Index i = 0; i < l; ++i)
        for (Index j = 0; j < l; ++j)
          minor(i, j) = u(sets[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)],
                          sets[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)]);
      out(a, b) = minor.determinant();
    }
  return out;
}

SectorTable sector_table(Algebra algebra, GroupTag group, int n, Index k_dim,
                         const std::vector<CharacterSample>& samples, Index max_level,
                         std::uint64_t seed, double tol_char) {
  SectorTable t;
  t.algebra = algebra;
  t.group = group;
  t.n = n;
  t.k_dim = k_dim;
  t.sample_size = static_cast<Index>(samples.size());
  t.seed = seed;
  t.tol_char = tol_char;
  const Index top = algebra == Algebra::Car ? k_dim : max_level;
  for (Index l = 0; l <= top; ++l) {
    if (algebra == Algebra::Ccr && k_dim == 0 && l > 0) break;
    SectorRow row;
    row.level = l;
    row.dimension = algebra == Algebra::Car ? binomial(k_dim, l) : multiset_count(k_dim, l);
    for (const CharacterSample& s : samples) {
      require(s.k_eigs.size() == k_dim, ErrorKind::ShapeMismatch, "sample eigenvalue count");
      row.characters.push_back(algebra == Algebra::Car ? s.det_h * char_lambda(s.k_eigs, l)
                                                       : char_sym(s.k_eigs, l));
    }
    row.class_label = static_cast<int>(l);
    for (const SectorRow& prev : t.rows) {
      bool same = true;
      for (std::size_t j = 0; j < row.characters.size() && same; ++j)
        same = std::abs(row.characters[j] - prev.characters[j]) <= tol_char;
      if (same) {
        row.class_label = prev.class_label;
        break;
      }
    }
    t.rows.push_back(std::move(row));
  }

  if ((group == GroupTag::UN || group == GroupTag::SUN) && algebra == Algebra::Car &&
      k_dim == n) {
    bool distinct = true;
    for (std::size_t a = 0; a < t.rows.size(); ++a)
      for (std::size_t b = a + 1; b < t.rows.size(); ++b)
        if (t.rows[a].class_label == t.rows[b].class_label && (a != 0 || b != t.rows.size() - 1))
          distinct = false;
    const bool top_equals_bottom = t.rows.front().class_label == t.rows.back().class_label;
    std::ostringstream os;
    if (group == GroupTag::UN) {
      os << "U(" << n << ") defining action on k: levels 0.." << n
         << " expected mutually inequivalent; observed "
         << (distinct && !top_equals_bottom ? "yes" : "no");
    } else {
      os << "SU(" << n << ") defining action on k: levels 0.." << n - 1
         << " expected mutually inequivalent and level " << n << " ~ level 0; observed "
         << (distinct && top_equals_bottom ? "yes" : "no");
    }
    t.annotations.push_back(os.str());
  }
  std::ostringstream note;
  note << "equivalence decided by character equality on " << t.sample_size
       << " sampled elements (tol " << tol_char << ")";
  t.annotations.push_back(note.str());
  return t;
}

OracleComparison oracle_compare(const SectorTable& table,
                                const std::vector<std::vector<cplx>>& oracle_traces,
                                double tolerance) {
  OracleComparison out;
  out.tolerance = tolerance;
  require(static_cast<Index>(oracle_traces.size()) == table.sample_size, ErrorKind::ShapeMismatch,
          "oracle sample count differs from table");
  for (std::size_t s = 0; s < oracle_traces.size(); ++s) {
    require(oracle_traces[s].size() >= table.rows.size(), ErrorKind::ShapeMismatch,
            "oracle has fewer levels than the table");
    for (std::size_t l = 0; l < table.rows.size(); ++l) {
      const double dev = std::abs(oracle_traces[s][l] - table.rows[l].characters[s]);
      if (dev > out.max_deviation || out.worst_sample < 0) {
        out.max_deviation = std::max(out.max_deviation, dev);
        out.worst_sample = static_cast<Index>(s);
        out.worst_level = static_cast<Index>(l);
      }
    }
  }
  out.pass = out.max_deviation <= tolerance;
  return out;
}

void require_oracle_match(const SectorTable& table,
                          const std::vector<std::vector<cplx>>& oracle_traces, double tolerance) {
  const OracleComparison c = oracle_compare(table, oracle_traces, tolerance);
  require(c.pass, ErrorKind::Mismatch,
          "oracle deviates by " + std::to_string(c.max_deviation) + " at sample " +
              std::to_string(c.worst_sample) + ", level " + std::to_string(c.worst_level));
}

}  // namespace qfree
