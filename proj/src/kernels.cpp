#include "qfree/kernels.hpp"

#include <bit>
#include <cstdint>

#include <omp.h>

namespace qfree::kernels {

namespace {

int g_threads = 0;

int active_threads() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

// Column sums are independent; the final reduction runs in column order.
double ordered_total(const std::vector<double>& partial) {
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// Applies a*(f) to a fermionic state; sign (-1)^{#occupied modes below i}.
void add_creation(const Vector& f, const Vector& in, Vector& out) {
  const Index modes = f.size();
  out.setZero(in.size());
  for (Index s = 0; s < in.size(); ++s) {
    const cplx amp = in[s];
    if (amp == cplx(0.0)) continue;
    const auto bits = static_cast<std::uint64_t>(s);
    for (Index i = 0; i < modes; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (bits & bit || f[i] == cplx(0.0)) continue;
      const int below = std::popcount(bits & (bit - 1));
      const double sign = (below % 2 == 0) ? 1.0 : -1.0;
      out[static_cast<Index>(bits | bit)] += sign * f[i] * amp;
    }
  }
}

}  // namespace

void set_threads(int n) { g_threads = n; }
int threads() { return active_threads(); }

double sum_abs2(const Matrix& a) {
  std::vector<double> partial(static_cast<std::size_t>(a.cols()), 0.0);
#pragma omp parallel for schedule(static) num_threads(active_threads())
  for (Index j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (Index i = 0; i < a.rows(); ++i) s += std::norm(a(i, j));
    partial[static_cast<std::size_t>(j)] = s;
  }
  return ordered_total(partial);
}

double sum_abs2_masked(const Matrix& a, const std::vector<char>& row_mask,
                       const std::vector<char>& col_mask) {
  require(static_cast<Index>(row_mask.size()) == a.rows() &&
              static_cast<Index>(col_mask.size()) == a.cols(),
          ErrorKind::ShapeMismatch, "mask sizes do not match matrix");
  std::vector<double> partial(static_cast<std::size_t>(a.cols()), 0.0);
#pragma omp parallel for schedule(static) num_threads(active_threads())
  for (Index j = 0; j < a.cols(); ++j) {
    if (!col_mask[static_cast<std::size_t>(j)]) continue;
    double s = 0.0;
    for (Index i = 0; i < a.rows(); ++i)
      if (row_mask[static_cast<std::size_t>(i)]) s += std::norm(a(i, j));
    partial[static_cast<std::size_t>(j)] = s;
  }
  return ordered_total(partial);
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorKind::ShapeMismatch, "multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
#pragma omp parallel for schedule(static) num_threads(active_threads())
  for (Index j = 0; j < b.cols(); ++j) c.col(j).noalias() = a * b.col(j);
  return c;
}

Matrix multiply_adjoint(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), ErrorKind::ShapeMismatch,
          "multiply_adjoint: column counts differ");
  Matrix c(a.rows(), b.rows());
#pragma omp parallel for schedule(static) num_threads(active_threads())
  for (Index j = 0; j < b.rows(); ++j) c.col(j).noalias() = a * b.row(j).adjoint();
  return c;
}

Matrix fermi_second_quantize(const Matrix& u) {
  require(u.rows() == u.cols(), ErrorKind::ShapeMismatch, "second quantisation needs square u");
  const Index modes = u.rows();
  require(modes <= 20, ErrorKind::CapExceeded, "too many fermionic modes");
  const Index dim = Index{1} << modes;
  Matrix gamma = Matrix::Zero(dim, dim);
#pragma omp parallel for schedule(dynamic) num_threads(active_threads())
  for (Index s = 0; s < dim; ++s) {
    // |S> = a*(e_s1) ... a*(e_sk) |0>, s1 < ... < sk; apply a*(u e_i) from the right.
    Vector state = Vector::Zero(dim);
    state[0] = 1.0;
    Vector next(dim);
    for (Index i = modes - 1; i >= 0; --i) {
      if (!(static_cast<std::uint64_t>(s) >> i & 1U)) continue;
      add_creation(u.col(i), state, next);
      state.swap(next);
    }
    gamma.col(s) = state;
  }
  return gamma;
}

namespace reference {

double sum_abs2(const Matrix& a) {
  double s = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
  return s;
}

double sum_abs2_masked(const Matrix& a, const std::vector<char>& row_mask,
                       const std::vector<char>& col_mask) {
  double s = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (row_mask[static_cast<std::size_t>(i)] && col_mask[static_cast<std::size_t>(j)])
        s += std::norm(a(i, j));
  return s;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c = Matrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k)
      for (Index j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

Matrix multiply_adjoint(const Matrix& a, const Matrix& b) {
  Matrix c = Matrix::Zero(a.rows(), b.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k)
      for (Index j = 0; j < b.rows(); ++j) c(i, j) += a(i, k) * std::conj(b(j, k));
  return c;
}

Matrix fermi_second_quantize(const Matrix& u) {
  const Index modes = u.rows();
  const Index dim = Index{1} << modes;
  Matrix gamma = Matrix::Zero(dim, dim);
  std::vector<Index> rows, cols;
  for (Index r = 0; r < dim; ++r) {
    for (Index s = 0; s < dim; ++s) {
      if (std::popcount(static_cast<std::uint64_t>(r)) != std::popcount(static_cast<std::uint64_t>(s)))
        continue;
      rows.clear();
      cols.clear();
      for (Index i = 0; i < modes; ++i) {
        if (static_cast<std::uint64_t>(r) >> i & 1U) rows.push_back(i);
        if (static_cast<std::uint64_t>(s) >> i & 1U) cols.push_back(i);
      }
      if (rows.empty()) {
        gamma(r, s) = 1.0;
        continue;
      }
      const auto k = static_cast<Index>(rows.size());
      Matrix minor(k, k);
      for (Index a = 0; a < k; ++a)
        for (Index b = 0; b < k; ++b)
          minor(a, b) = u(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
      gamma(r, s) = minor.determinant();
    }
  }
  return gamma;
}

}  // namespace reference

}  // namespace qfree::kernels
