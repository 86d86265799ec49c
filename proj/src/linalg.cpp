#include "resmat/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "resmat/errors.hpp"

namespace resmat {

namespace {

void require_square(const Matrix& m) {
    if (m.rows() != m.cols()) throw DomainError("matrix is not square");
}

} // namespace

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& m, double scale_tol) {
    if (m.rows() != m.cols()) return false;
    if (m.size() == 0) return true;
    double gap = (m - m.transpose()).cwiseAbs().maxCoeff();
    return gap <= scale_tol * std::max(1.0, max_abs(m));
}

double zero_eigenvalue_threshold(const Vector& values) {
    if (values.size() == 0) return 0.0;
    return static_cast<double>(values.size()) * 1e-10 *
           values.cwiseAbs().maxCoeff();
}

int count_zero_eigenvalues(const Vector& values) {
    double thr = zero_eigenvalue_threshold(values);
    int count = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k)
        if (std::abs(values[k]) <= thr) ++count;
    return count;
}

EigenPairs sym_eigen(const Matrix& m) {
    require_square(m);
    if (!is_symmetric(m)) throw DomainError("matrix is not symmetric");

    const Eigen::Index n = m.rows();
    if (n == 0) return {Vector(0), Matrix(0, 0)};

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw InternalError("symmetric eigendecomposition did not converge");

    EigenPairs out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();

    double scale = std::max(1.0, max_abs(m));
    double residual =
        (m * out.vectors - out.vectors * out.values.asDiagonal()).cwiseAbs().maxCoeff();
    double ortho =
        (out.vectors.transpose() * out.vectors - Matrix::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-9 * scale || ortho > 1e-9)
        throw InternalError("eigendecomposition residual above tolerance");
    return out;
}

Matrix moore_penrose(const Matrix& m, PinvMethod method) {
    require_square(m);
    const Eigen::Index n = m.rows();
    if (n == 0) return m;

    if (method == PinvMethod::eigen) {
        EigenPairs ep = sym_eigen(m);
        double thr = zero_eigenvalue_threshold(ep.values);
        Vector recip(n);
        for (Eigen::Index k = 0; k < n; ++k)
            recip[k] = std::abs(ep.values[k]) > thr ? 1.0 / ep.values[k] : 0.0;
        return ep.vectors * recip.asDiagonal() * ep.vectors.transpose();
    }

    if (!is_symmetric(m)) throw DomainError("matrix is not symmetric");
    double scale = std::max(1.0, max_abs(m));
    double worst_row_sum = m.rowwise().sum().cwiseAbs().maxCoeff();
    if (worst_row_sum > static_cast<double>(n) * 1e-10 * scale)
        throw DomainError("shift pseudoinverse requires zero row sums");

    const double a = 1.0 / static_cast<double>(n);
    Matrix shifted = m + Matrix::Constant(n, n, a);
    return inverse(shifted) - Matrix::Constant(n, n, a);
}

double determinant(const Matrix& m) {
    require_square(m);
    if (m.rows() == 0) return 1.0;
    if (m.rows() == 1) return m(0, 0);
    return m.partialPivLu().determinant();
}

Matrix with_rows_cols_removed(const Matrix& m, const std::vector<int>& removed) {
    require_square(m);
    const int n = static_cast<int>(m.rows());
    std::vector<char> drop(n, 0);
    for (int idx : removed) {
        if (idx < 0 || idx >= n) throw DomainError("index out of range");
        if (drop[idx]) throw DomainError("duplicate index");
        drop[idx] = 1;
    }
    std::vector<int> keep;
    keep.reserve(n);
    for (int i = 0; i < n; ++i)
        if (!drop[i]) keep.push_back(i);

    Matrix out(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c)
            out(r, c) = m(keep[r], keep[c]);
    return out;
}

double principal_minor(const Matrix& m, const std::vector<int>& removed) {
    require_square(m);
    if (static_cast<Eigen::Index>(removed.size()) == m.rows() && m.rows() > 0)
        throw DomainError("cannot remove every row and column");
    return determinant(with_rows_cols_removed(m, removed));
}

Matrix inverse(const Matrix& m) {
    require_square(m);
    if (m.rows() == 0) return m;
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) throw DomainError("matrix is numerically singular");
    return lu.inverse();
}

Matrix adjugate(const Matrix& m) {
    require_square(m);
    const Eigen::Index n = m.rows();
    if (n == 0) return m;
    if (n == 1) return Matrix::Ones(1, 1);

    Eigen::FullPivLU<Matrix> lu(m);
    if (lu.isInvertible()) return lu.determinant() * lu.inverse();

    // Singular case: build from first minors directly.
    Matrix adj(n, n);
    Matrix minor(n - 1, n - 1);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;
                for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(mr, mc) = m(r, c);
                    ++mc;
                }
                ++mr;
            }
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            adj(i, j) = sign * determinant(minor);
        }
    }
    return adj;
}

Matrix cofactor_matrix(const Matrix& m) {
    return adjugate(m).transpose();
}

} // namespace resmat
