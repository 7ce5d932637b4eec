#include "qfree/dirac.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

#include "qfree/errors.hpp"
#include "qfree/kernels.hpp"

namespace qfree::dirac {

namespace {

bool odd(Index d) { return ((d % 2) + 2) % 2 == 1; }

// (-1)^{(d-1)/2} for odd d, so that e^{i d pi/2} / (i d) is real.
double odd_sign(Index d) { return odd((d - 1) / 2) ? -1.0 : 1.0; }

Index window_dim(Index w) { return 2 * w + 1; }

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void require_ascending(const std::vector<Index>& cutoffs) {
  require(!cutoffs.empty(), ErrorKind::MalformedInput, "empty cutoff list");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    require(cutoffs[i] >= 4, ErrorKind::WindowTooSmall, "cutoff below 4");
    if (i) require(cutoffs[i] > cutoffs[i - 1], ErrorKind::MalformedInput, "cutoffs must be strictly ascending");
  }
}

// Partial HS norms of the off-diagonal Hardy blocks of `d` over nested windows.
HsStudy trend_study(const Matrix& d, Index w_max, const std::vector<Index>& cutoffs) {
  HsStudy s;
  s.cutoffs = cutoffs;
  s.w_max = w_max;
  TrendRecord comm, pm, mp;
  comm.name = "[E+,v]";
  pm.name = "E+ v E-";
  mp.name = "E- v E+";
  const Index dim = window_dim(w_max);
  for (Index w : cutoffs) {
    std::vector<char> plus(static_cast<std::size_t>(dim), 0), minus(static_cast<std::size_t>(dim), 0);
    for (Index n = -w; n <= w; ++n) (n >= 0 ? plus : minus)[static_cast<std::size_t>(n + w_max)] = 1;
    const double a = kernels::sum_abs2_masked(d, plus, minus);
    const double b = kernels::sum_abs2_masked(d, minus, plus);
    comm.partial.push_back(std::sqrt(a + b));
    pm.partial.push_back(std::sqrt(a));
    mp.partial.push_back(std::sqrt(b));
  }
  for (TrendRecord* r : {&comm, &pm, &mp}) {
    for (std::size_t k = 1; k < r->partial.size(); ++k) {
      require(r->partial[k] >= r->partial[k - 1] * (1 - 1e-12), ErrorKind::NonMonotone,
              r->name + ": partial HS norm decreased");
      r->increments.push_back(r->partial[k] - r->partial[k - 1]);
    }
    r->increments_positive = !r->increments.empty();
    r->increments_decreasing = r->increments.size() >= 2;
    for (std::size_t k = 0; k < r->increments.size(); ++k) {
      if (!(r->increments[k] > 0)) r->increments_positive = false;
      if (k && !(r->increments[k] < r->increments[k - 1])) r->increments_decreasing = false;
    }
    if (r->increments_positive && r->increments.size() >= 2) {
      std::vector<double> x, y;
      for (std::size_t k = 0; k < r->increments.size(); ++k) {
        x.push_back(std::log(static_cast<double>(cutoffs[k + 1])));
        y.push_back(std::log(r->increments[k]));
      }
      r->slope = fit_slope(x, y);
    }
    r->consistent = r->increments_positive && r->increments_decreasing && r->slope < kSlopeThreshold;
  }
  s.records = {comm, pm, mp};
  bool all = true;
  for (const TrendRecord& r : s.records) all = all && r.consistent;
  s.verdict = all ? "consistent-with-HS" : "not-consistent-with-HS";
  return s;
}

}  // namespace

cplx arc_coefficient(Index k, Index n) {
  const Index d = k - n;
  if (d == 0) return 0.5;
  if (!odd(d)) return 0.0;
  return -odd_sign(d) / (M_PI * static_cast<double>(d));
}

cplx overlap(Index m, Index n) {
  return (odd(m) ? -M_SQRT2 : M_SQRT2) * arc_coefficient(2 * m, n);
}

Matrix overlap_table(Index w, Index m_lo, Index m_hi) {
  require(w >= 1 && m_hi >= m_lo, ErrorKind::MalformedInput, "overlap table range");
  Matrix t(window_dim(w), m_hi - m_lo + 1);
#pragma omp parallel for schedule(static) num_threads(kernels::threads())
  for (Index j = 0; j < t.cols(); ++j)
    for (Index n = -w; n <= w; ++n) t(n + w, j) = overlap(m_lo + j, n);
  return t;
}

double tail_bound(Index w) { return 4.0 / (M_PI * M_PI * (static_cast<double>(w) / 2.0)); }

OverlapChecks overlap_checks(Index w, Index m_loc) {
  OverlapChecks c;
  c.w = w;
  c.m_loc = m_loc;
  c.tail_bound = tail_bound(w);
  const Matrix f = overlap_table(w, -m_loc, m_loc);
  const Matrix g = kernels::multiply(f.adjoint(), f);
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = 0; j < g.cols(); ++j) {
      if (i == j)
        c.row_deviation = std::max(c.row_deviation, std::abs(g(i, i).real() - 1.0));
      else
        c.orthogonality = std::max(c.orthogonality, std::abs(g(i, j)));
    }
  return c;
}

VWindow build_v(Index w, Index m_loc, Index start) {
  require(w >= 4 && m_loc >= 1 && m_loc <= w / 4, ErrorKind::WindowTooSmall,
          "need 1 <= M_loc <= W/4 (W = " + std::to_string(w) + ", M_loc = " + std::to_string(m_loc) + ")");
  require(start >= 0 && start < m_loc, ErrorKind::WindowTooSmall, "sum start outside [0, M_loc)");
  VWindow out;
  out.w = w;
  out.m_loc = m_loc;
  out.start = start;
  out.f = overlap_table(w, 0, m_loc);
  const Index terms = m_loc - start;
  const Matrix diff = out.f.middleCols(start + 1, terms) - out.f.middleCols(start, terms);
  out.v = kernels::multiply_adjoint(diff, out.f.middleCols(start, terms));
  out.v.diagonal().array() += 1.0;
  return out;
}

RectangularV rectangular(const VWindow& v) {
  const Index dim = v.v.rows();
  const Vector phi = v.f.col(v.m_loc).normalized();
  Eigen::HouseholderQR<Matrix> qr(phi);
  const Matrix q = qr.householderQ();
  RectangularV r;
  r.domain = q.rightCols(dim - 1);
  r.vb = kernels::multiply(v.v, r.domain);
  return r;
}

WindowChecks window_checks(const VWindow& v) {
  WindowChecks c;
  c.w = v.w;
  const RectangularV r = rectangular(v);
  Eigen::SelfAdjointEigenSolver<Matrix> es(kernels::multiply(r.vb.adjoint(), r.vb), Eigen::EigenvaluesOnly);
  c.isometry_defect = (es.eigenvalues().array() - 1.0).abs().maxCoeff();
  for (Index m = 0; m < std::max<Index>(v.m_loc / 2, 1); ++m)
    c.shift_defect = std::max(c.shift_defect, std::abs(v.f.col(m + 1).dot(v.v * v.f.col(m)) - 1.0));
  const Vector fm1 = overlap_table(v.w, -1, -1).col(0);
  c.fixed_defect = (v.v * fm1 - fm1).norm() / fm1.norm();
  return c;
}

HsStudy hs_commutator_study(const std::vector<Index>& cutoffs, Index start) {
  require_ascending(cutoffs);
  const Index w_max = cutoffs.back();
  VWindow v = build_v(w_max, w_max / 4, start);
  v.v.diagonal().array() -= 1.0;
  HsStudy s = trend_study(v.v, w_max, cutoffs);
  s.m_loc = v.m_loc;
  return s;
}

cplx control_multiplier(Index d) {
  return (odd(d) ? -1.0 : 1.0) / (M_PI * (0.5 - static_cast<double>(d)));
}

HsStudy control_study(const std::vector<Index>& cutoffs) {
  require_ascending(cutoffs);
  const Index w_max = cutoffs.back();
  const Index dim = window_dim(w_max);
  Matrix u(dim, dim);
#pragma omp parallel for schedule(static) num_threads(kernels::threads())
  for (Index k = 0; k < dim; ++k)
    for (Index n = 0; n < dim; ++n) u(n, k) = control_multiplier(n - k);
  HsStudy s = trend_study(u, w_max, cutoffs);
  s.records[0].name = "[E+,u]";
  s.records[1].name = "E+ u E-";
  s.records[2].name = "E- u E+";
  return s;
}

IndexEstimate index_estimate(const std::vector<Index>& cutoffs, Index start) {
  require_ascending(cutoffs);
  IndexEstimate est;
  const double cut = kIndexThreshold * kIndexThreshold;
  for (Index w : cutoffs) {
    const VWindow v = build_v(w, w / 4, start);
    const RectangularV r = rectangular(v);
    IndexSample s;
    s.w = w;
    s.m_loc = v.m_loc;
    Eigen::SelfAdjointEigenSolver<Matrix> dom(kernels::multiply(r.vb.adjoint(), r.vb), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Matrix> cod(kernels::multiply_adjoint(r.vb, r.vb));
    s.kernel = (dom.eigenvalues().array() < cut).count();
    s.cokernel = (cod.eigenvalues().array() < cut).count();
    s.gap = std::sqrt(std::max(0.0, dom.eigenvalues()(0)));
    const Vector fs = v.f.col(start);
    s.cokernel_overlap = std::abs(cod.eigenvectors().col(0).dot(fs)) / fs.norm();
    est.samples.push_back(s);
  }
  const auto idx = [](const IndexSample& s) { return s.cokernel - s.kernel; };
  est.index = idx(est.samples.back());
  if (est.samples.size() >= 2)
    require(idx(est.samples[est.samples.size() - 2]) == est.index, ErrorKind::Unstable,
            "index differs between the two largest cutoffs");
  return est;
}

Assembly assemble(int species, Index index_v) {
  require(species >= 1 && species <= 62, ErrorKind::MalformedInput, "species count out of range");
  Assembly a;
  a.species = species;
  a.index_v = index_v;
  a.half_index = static_cast<Index>(species) * index_v;
  a.index = 2 * a.half_index;
  require(a.half_index >= 0 && a.half_index < 63, ErrorKind::MalformedInput, "statistics dimension overflow");
  a.stat_dim = Index{1} << a.half_index;
  return a;
}

std::vector<Vector> complement_family(Index w, Index kmax) {
  std::vector<Vector> out;
  for (Index k = -kmax; k <= kmax; ++k) {
    Vector g(window_dim(w));
    for (Index n = -w; n <= w; ++n) g[n + w] = (n == k ? 1.0 : 0.0) - arc_coefficient(k, n);
    out.push_back(std::move(g));
  }
  return out;
}

LocalPhase prop_loc_check(const Matrix& v, const std::vector<Vector>& family, double tol) {
  require(!family.empty(), ErrorKind::MalformedInput, "empty test family");
  cplx num = 0.0;
  double den = 0.0;
  std::vector<Vector> images;
  for (const Vector& g : family) {
    require(g.size() == v.cols(), ErrorKind::ShapeMismatch, "test vector length");
    images.push_back(v * g);
    num += g.dot(images.back());
    den += g.squaredNorm();
  }
  LocalPhase p;
  p.tau = std::abs(num) > 0 ? num / std::abs(num) : cplx(1.0);
  for (std::size_t i = 0; i < family.size(); ++i)
    p.residual = std::max(p.residual, (images[i] - p.tau * family[i]).norm() / family[i].norm());
  require(p.residual <= tol, ErrorKind::NoCommonPhase,
          "no common phase: residual " + std::to_string(p.residual));
  return p;
}

}  // namespace qfree::dirac
