#pragma once

#include <vector>

#include "frameforge/matrix.hpp"

namespace frameforge {

// Full singular value decomposition a = left * diag(singular_values) * right^*.
// left is rows x rows unitary, right is cols x cols unitary, and the value
// list has min(rows, cols) nonincreasing entries.  The phase of each paired
// singular vector is fixed by making the largest-magnitude entry of the right
// singular vector real and positive (the same factor is applied to the left
// partner); unpaired basis columns are phase-fixed against their own largest
// entry.  Identical inputs yield bitwise-identical results.
struct SvdResult {
    std::vector<double> singular_values;
    Matrix left_basis;
    Matrix right_basis;
};

// Decomposes a.  Throws InvalidInput on non-finite entries or a Real tag with
// nonzero imaginary parts.  Degenerate shapes (zero rows or columns) yield an
// empty spectrum and identity bases.
SvdResult svd(const Matrix& a, const TolerancePolicy& tol = {});

// Number of singular values strictly above max(rank_rtol * s_max, abs_floor).
int numeric_rank(const std::vector<double>& singular_values, const TolerancePolicy& tol = {});
int numeric_rank(const SvdResult& s, const TolerancePolicy& tol = {});
int numeric_rank(const Matrix& a, const TolerancePolicy& tol = {});

// Moore-Penrose pseudo-inverse with singular values below the rank threshold
// treated as exact zeros.  Preserves the field tag.
Matrix pseudo_inverse(const Matrix& a, const TolerancePolicy& tol = {});

// Orthonormal basis (as columns) of the orthogonal complement of the column
// space of a; has rows(a) - numeric_rank(a) columns.
Matrix orthonormal_complement_basis(const Matrix& a, const TolerancePolicy& tol = {});

// numeric_rank(product - I).  Throws InvalidInput unless product is square.
int defect_rank(const Matrix& product, const TolerancePolicy& tol = {});

// Smallest singular value above the rank threshold; 0 for rank-zero input.
double reduced_minimum_modulus(const SvdResult& s, const TolerancePolicy& tol = {});

}  // namespace frameforge
