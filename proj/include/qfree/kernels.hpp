#pragma once

#include <vector>

#include "qfree/selfdual.hpp"

// Data-parallel kernels behind the numerical modules.
//
// Every parallel kernel partitions work over independent outputs (columns)
// and combines partial results in a fixed order, so results are bit-identical
// for any thread count.  The `reference` namespace keeps straightforward
// serial implementations that the tests and the benchmark compare against.
namespace qfree::kernels {

/// Sets the OpenMP thread count used by the kernels (<= 0 means default).
void set_threads(int n);
int threads();

/// sum |a_ij|^2
double sum_abs2(const Matrix& a);
/// sum |a_ij|^2 over rows with row_mask[i] and columns with col_mask[j].
double sum_abs2_masked(const Matrix& a, const std::vector<char>& row_mask,
                       const std::vector<char>& col_mask);
/// a * b
Matrix multiply(const Matrix& a, const Matrix& b);
/// a * b^H
Matrix multiply_adjoint(const Matrix& a, const Matrix& b);
/// Second quantisation on the fermionic Fock space over u.rows() modes:
/// the matrix of (+)_k Lambda^k(u) in the occupation-subset basis.
Matrix fermi_second_quantize(const Matrix& u);

namespace reference {
double sum_abs2(const Matrix& a);
double sum_abs2_masked(const Matrix& a, const std::vector<char>& row_mask,
                       const std::vector<char>& col_mask);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix multiply_adjoint(const Matrix& a, const Matrix& b);
/// Minor expansion: <R|Gamma|S> = det u[R, S].
Matrix fermi_second_quantize(const Matrix& u);
}  // namespace reference

}  // namespace qfree::kernels
