#include <bit>
#include <cmath>
#include <cstdint>

#include "qfree/fock.hpp"
#include "qfree/gauge.hpp"
#include "qfree/kernels.hpp"

namespace qfree {

FermiFock::FermiFock(Index modes, Index cap) : modes_(modes), space_(modes) {
  require(modes >= 0 && modes <= 12, ErrorKind::CapExceeded,
          "fermionic oracle supports at most 12 modes (got " + std::to_string(modes) + ")");
  require((Index{1} << modes) <= cap, ErrorKind::CapExceeded,
          "Fock dimension 2^" + std::to_string(modes) + " exceeds cap " + std::to_string(cap));
  const Index d = dim();
  grading_.resize(d);
  for (Index s = 0; s < d; ++s)
    grading_[s] = std::popcount(static_cast<std::uint64_t>(s)) % 2 ? -1.0 : 1.0;
  for (Index i = 0; i < modes; ++i) {
    std::vector<Eigen::Triplet<cplx>> trip;
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (Index s = 0; s < d; ++s) {
      const auto bits = static_cast<std::uint64_t>(s);
      if (!(bits & bit)) continue;
      const double sign = std::popcount(bits & (bit - 1)) % 2 ? -1.0 : 1.0;
      trip.emplace_back(static_cast<Index>(bits ^ bit), s, sign);
    }
    SparseMatrix a(d, d);
    a.setFromTriplets(trip.begin(), trip.end());
    annihilators_.push_back(std::move(a));
  }
}

const SparseMatrix& FermiFock::annihilator(Index i) const {
  require(i >= 0 && i < modes_, ErrorKind::ShapeMismatch, "mode out of range");
  return annihilators_[static_cast<std::size_t>(i)];
}

SparseMatrix FermiFock::creator(Index i) const { return annihilator(i).adjoint(); }

SparseMatrix FermiFock::pi(const Eigen::Ref<const Vector>& f) const {
  require(f.size() == space_.dim(), ErrorKind::ShapeMismatch, "pi: vector size");
  SparseMatrix out(dim(), dim());
  for (Index i = 0; i < modes_; ++i) {
    if (f[i] != cplx(0.0)) out += f[i] * creator(i);
    if (f[modes_ + i] != cplx(0.0)) out += f[modes_ + i] * annihilator(i);
  }
  return out;
}

Vector FermiFock::theta_diagonal() const {
  Vector t(dim());
  for (Index s = 0; s < dim(); ++s) t[s] = cplx(1.0, -grading_[s]) / std::sqrt(2.0);
  return t;
}

SparseMatrix FermiFock::psi(const Eigen::Ref<const Vector>& f) const {
  SparseMatrix g(dim(), dim());
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Index s = 0; s < dim(); ++s) trip.emplace_back(s, s, cplx(0.0, grading_[s]));
  g.setFromTriplets(trip.begin(), trip.end());
  return pi(f) * g;
}

Matrix FermiFock::gamma(const BlockOperator& u, double tol) const {
  require(u.domain() == space_ && u.codomain() == space_, ErrorKind::ShapeMismatch,
          "gamma: operator does not act on this space");
  const Matrix u11 = u.block(1, 1);
  const double off = std::max(op_norm(u.block(1, 2)), op_norm(u.block(2, 1)));
  const double real = op_norm(Matrix(u.block(2, 2) - u11.conjugate()));
  require(off <= tol && real <= tol, ErrorKind::NotGaugeCompatible,
          "U must commute with P1 and J (defects " + std::to_string(off) + ", " +
              std::to_string(real) + ")");
  return kernels::fermi_second_quantize(u11);
}

Vector FermiFock::vacuum() const {
  Vector v = Vector::Zero(dim());
  v[0] = 1.0;
  return v;
}

Vector omega_P_fermi(const FermiFock& f, const Subspace& h, const BlockOperator& t) {
  const Index n = f.modes();
  require(t.codomain() == f.space() && h.ambient() == f.space(), ErrorKind::ShapeMismatch,
          "omega_P: data lives on a different space");
  const Matrix t21 = t.block(2, 1);
  SparseMatrix x(f.dim(), f.dim());
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k)
      if (t21(i, k) != cplx(0.0)) x += (0.5 * std::conj(t21(i, k))) * (f.creator(i) * f.creator(k));
  Vector state = f.vacuum(), term = f.vacuum();
  for (Index j = 1; j <= n / 2 + 1; ++j) {
    term = (x * term) / static_cast<double>(j);
    state += term;
  }
  const double det = std::real((Matrix::Identity(n, n) + t21.adjoint() * t21).determinant());
  state *= std::pow(det, -0.25);
  for (Index j = h.dim() - 1; j >= 0; --j) state = f.psi(h.frame().col(j)) * state;
  return state;
}

double annihilation_residual(const FermiFock& f, const BlockOperator& p, const Vector& omega) {
  const Index d = f.space().dim();
  const Matrix q = orthonormal_span(Matrix(Matrix::Identity(d, d) - p.matrix()), 1e-8);
  double worst = 0.0;
  for (Index c = 0; c < q.cols(); ++c) worst = std::max(worst, (f.pi(q.col(c)) * omega).norm());
  return worst;
}

OmegaSet omega_alpha_fermi(const FermiFock& f, const Vector& omega_p, const Subspace& k,
                           double tol) {
  OmegaSet out;
  out.labels = subsets_by_level(k.dim());
  std::vector<SparseMatrix> psis;
  for (Index j = 0; j < k.dim(); ++j) psis.push_back(f.psi(k.frame().col(j)));
  for (const MultiIndex& a : out.labels) {
    Vector v = omega_p;
    for (auto it = a.rbegin(); it != a.rend(); ++it) v = psis[static_cast<std::size_t>(*it)] * v;
    out.vectors.push_back(std::move(v));
  }
  const auto m = static_cast<Index>(out.vectors.size());
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      const cplx g = out.vectors[static_cast<std::size_t>(a)].dot(out.vectors[static_cast<std::size_t>(b)]);
      out.gram_defect = std::max(out.gram_defect, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  require(out.gram_defect <= tol, ErrorKind::OrthonormalityFailure,
          "Omega_alpha Gram defect " + std::to_string(out.gram_defect));
  return out;
}

ImplementerSet implementers_from_omegas(const FermiFock& domain, const FermiFock& codomain,
                                        const BlockOperator& v, const OmegaSet& omegas,
                                        double tol) {
  require(v.domain() == domain.space() && v.codomain() == codomain.space(),
          ErrorKind::ShapeMismatch, "implementers: V does not match the Fock spaces");
  const Index nd = domain.modes(), dd = domain.dim(), dc = codomain.dim();
  std::vector<SparseMatrix> image;  // pi_c(V e_i)
  for (Index i = 0; i < nd; ++i) image.push_back(codomain.pi(v.matrix().col(i)));

  ImplementerSet out;
  out.labels = omegas.labels;
  for (const Vector& omega : omegas.vectors) {
    Matrix psi(dc, dd);
#pragma omp parallel for schedule(static) num_threads(kernels::threads())
    for (Index s = 0; s < dd; ++s) {
      Vector x = omega;
      for (Index i = nd - 1; i >= 0; --i)
        if (static_cast<std::uint64_t>(s) >> i & 1U) x = image[static_cast<std::size_t>(i)] * x;
      psi.col(s) = x;
    }
    out.psi.push_back(std::move(psi));
  }

  const Matrix id_d = Matrix::Identity(dd, dd);
  Matrix sum = Matrix::Zero(dc, dc);
  for (std::size_t a = 0; a < out.psi.size(); ++a) {
    out.isometry_defect =
        std::max(out.isometry_defect, hs_norm(Matrix(out.psi[a].adjoint() * out.psi[a] - id_d)));
    for (std::size_t b = 0; b < out.psi.size(); ++b)
      if (a != b)
        out.orthogonality = std::max(out.orthogonality, hs_norm(Matrix(out.psi[a].adjoint() * out.psi[b])));
    sum += out.psi[a] * out.psi[a].adjoint();
  }
  out.completeness = hs_norm(Matrix(sum - Matrix::Identity(dc, dc)));

  for (Index i = 0; i < 2 * nd; ++i) {
    const Vector e = Vector::Unit(2 * nd, i);
    const Matrix pd = Matrix(domain.pi(e));
    Matrix lhs = Matrix::Zero(dc, dc);
    for (const Matrix& psi : out.psi) lhs += psi * pd * psi.adjoint();
    const Matrix rhs = Matrix(codomain.pi(v.apply(e)));
    out.imp_residual = std::max(out.imp_residual, hs_norm(Matrix(lhs - rhs)));
  }
  require(out.isometry_defect <= tol && out.orthogonality <= tol && out.imp_residual <= tol,
          ErrorKind::ImplementationDefect,
          "implementers fail (isometry " + std::to_string(out.isometry_defect) + ", orthogonality " +
              std::to_string(out.orthogonality) + ", formula " + std::to_string(out.imp_residual) + ")");
  return out;
}

namespace {

Matrix stack(const std::vector<Vector>& vs) {
  if (vs.empty()) return Matrix(0, 0);
  Matrix m(vs.front().size(), static_cast<Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Index>(j)) = vs[j];
  return m;
}

Matrix rep_from_images(const Matrix& omega, const Matrix& images, double tol) {
  const Matrix rep = omega.adjoint() * images;
  const double defect = op_norm(Matrix(rep.adjoint() * rep - Matrix::Identity(rep.cols(), rep.cols())));
  require(defect <= tol, ErrorKind::NotInvariant,
          "span of Omega_alpha is not invariant (unitarity defect " + std::to_string(defect) + ")");
  return rep;
}

}  // namespace

Matrix charge_rep_matrix(const std::vector<Vector>& omegas, const Matrix& g, double tol) {
  const Matrix om = stack(omegas);
  return rep_from_images(om, g * om, tol);
}

Matrix charge_rep_matrix(const std::vector<Vector>& omegas, const SparseMatrix& g, double tol) {
  const Matrix om = stack(omegas);
  return rep_from_images(om, Matrix(g * om), tol);
}

std::vector<cplx> level_traces(const Matrix& rep, const std::vector<MultiIndex>& labels,
                               Index levels) {
  std::vector<cplx> out(static_cast<std::size_t>(levels), 0.0);
  for (std::size_t a = 0; a < labels.size(); ++a) {
    const auto l = labels[a].size();
    if (l < out.size()) out[l] += rep(static_cast<Index>(a), static_cast<Index>(a));
  }
  return out;
}

double invariance_residual(const std::vector<Vector>& omegas, const Matrix& g) {
  const Matrix q = orthonormal_span(stack(omegas), 1e-10);
  const Matrix gq = g * q;
  return op_norm(Matrix(gq - q * (q.adjoint() * gq)));
}

double implementer_gauge_residual(const ImplementerSet& s, const Matrix& gamma_codomain,
                                  const Matrix& gamma_domain) {
  double worst = 0.0;
  for (const Matrix& psi : s.psi) {
    const Matrix x = gamma_codomain * psi * gamma_domain.adjoint();
    const auto dd = static_cast<double>(psi.cols());
    Matrix proj = Matrix::Zero(x.rows(), x.cols());
    for (const Matrix& other : s.psi) proj += other * ((other.adjoint() * x).trace() / dd);
    worst = std::max(worst, hs_norm(Matrix(x - proj)) / std::sqrt(dd));
  }
  return worst;
}

}  // namespace qfree
