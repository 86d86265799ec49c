#pragma once

#include <vector>

#include <Eigen/Dense>

namespace resmat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Eigendecomposition of a symmetric matrix, eigenvalues descending,
// vectors.col(k) paired with values[k], columns orthonormal.
struct EigenPairs {
    Vector values;
    Matrix vectors;
};

// Largest absolute entry; 0 for an empty matrix.
double max_abs(const Matrix& m);

bool is_symmetric(const Matrix& m, double scale_tol = 1e-10);

// Eigenvalues with |lambda| at or below n * 1e-10 * max|lambda| count as zero.
double zero_eigenvalue_threshold(const Vector& values);
int count_zero_eigenvalues(const Vector& values);

EigenPairs sym_eigen(const Matrix& m);

// eigen: reassemble sum_{lambda != 0} (1/lambda) c c^T from the spectrum.
// shift: (M + J/n)^-1 - J/n, valid when row sums vanish (Laplacians).
enum class PinvMethod { eigen, shift };

Matrix moore_penrose(const Matrix& m, PinvMethod method = PinvMethod::eigen);

// det of an empty matrix is 1 by convention.
double determinant(const Matrix& m);

// Copy of m with the given rows and columns deleted. Indices must be
// distinct and in range.
Matrix with_rows_cols_removed(const Matrix& m, const std::vector<int>& removed);

// Principal minor det M(S): rows and columns in `removed` deleted.
// Removing every index is an error; removing none gives det M.
double principal_minor(const Matrix& m, const std::vector<int>& removed);

// Inverse via full-pivot LU; a numerically singular matrix is an error.
Matrix inverse(const Matrix& m);

// adj(M) with adj(M) * M = det(M) * I. Uses det * inverse when M is
// invertible and falls back to cofactor expansion otherwise.
Matrix adjugate(const Matrix& m);

// C with C_ij = (-1)^{i+j} det(M minus row i, column j) = adj(M)^T.
Matrix cofactor_matrix(const Matrix& m);

} // namespace resmat
