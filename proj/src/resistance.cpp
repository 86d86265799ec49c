#include "resmat/resistance.hpp"

#include <algorithm>
#include <cmath>

#include "resmat/errors.hpp"

namespace resmat {

namespace {

Matrix resistance_eigen(const Graph& g) {
    EigenPairs ep = sym_eigen(laplacian(g));
    if (count_zero_eigenvalues(ep.values) != 1)
        throw InternalError(
            "connected-graph Laplacian must have exactly one zero eigenvalue");
    const int n = g.n;
    double thr = zero_eigenvalue_threshold(ep.values);

    Matrix r = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double lambda = ep.values[k];
        if (std::abs(lambda) <= thr) continue;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double d = ep.vectors(i, k) - ep.vectors(j, k);
                r(i, j) += d * d / lambda;
            }
        }
    }
    r.triangularView<Eigen::StrictlyLower>() = r.transpose();
    return r;
}

Matrix resistance_pinv(const Graph& g) {
    Matrix lp = moore_penrose(laplacian(g), PinvMethod::shift);
    const int n = g.n;
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = lp(i, i) + lp(j, j) - 2.0 * lp(i, j);
    r.diagonal().setZero();
    return r;
}

Matrix resistance_det(const Graph& g) {
    Matrix lap = laplacian(g);
    const int n = g.n;
    double t = principal_minor(lap, {0});
    if (!(t > 0.0))
        throw InternalError("det L(0) of a connected graph must be positive");

    Matrix r = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            // direct removal so the n == 2 case hits the empty determinant
            double minor = determinant(with_rows_cols_removed(lap, {i, j}));
            r(i, j) = minor / t;
            r(j, i) = r(i, j);
        }
    }
    return r;
}

void assert_distance_shape(const Matrix& r) {
    const int n = static_cast<int>(r.rows());
    if (r.diagonal().cwiseAbs().maxCoeff() > 0.0)
        throw InternalError("resistance diagonal must be exactly zero");
    if (!is_symmetric(r))
        throw InternalError("resistance matrix must be symmetric");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(r(i, j) > 0.0))
                throw InternalError("off-diagonal resistances must be positive");
}

} // namespace

const char* to_string(ResistanceMethod method) {
    switch (method) {
        case ResistanceMethod::eigen: return "eigen";
        case ResistanceMethod::pinv: return "pinv";
        case ResistanceMethod::det: return "det";
    }
    return "?";
}

ResistanceMatrix resistance_matrix(const Graph& g, ResistanceMethod method) {
    if (g.n == 1) return {Matrix::Zero(1, 1), method};
    Matrix r;
    switch (method) {
        case ResistanceMethod::eigen: r = resistance_eigen(g); break;
        case ResistanceMethod::pinv: r = resistance_pinv(g); break;
        case ResistanceMethod::det: r = resistance_det(g); break;
    }
    if (g.n > 1) assert_distance_shape(r);
    return {std::move(r), method};
}

double kirchhoff_index(const Graph& g) {
    EigenPairs ep = sym_eigen(laplacian(g));
    if (count_zero_eigenvalues(ep.values) != 1)
        throw InternalError(
            "connected-graph Laplacian must have exactly one zero eigenvalue");
    double thr = zero_eigenvalue_threshold(ep.values);
    double sum_recip = 0.0;
    for (Eigen::Index k = 0; k < ep.values.size(); ++k)
        if (std::abs(ep.values[k]) > thr) sum_recip += 1.0 / ep.values[k];
    double kf = static_cast<double>(g.n) * sum_recip;

    double half_sum = 0.5 * resistance_matrix(g, ResistanceMethod::eigen).values.sum();
    if (std::abs(kf - half_sum) > 1e-8 * std::max(1.0, std::abs(kf)))
        throw InternalError("Kirchhoff index formulas disagree");
    return kf;
}

Vector row_sums(const ResistanceMatrix& r) {
    return r.values.rowwise().sum();
}

Matrix lplus_from_resistance(const Matrix& r) {
    if (r.rows() != r.cols()) throw DomainError("matrix is not square");
    const int n = static_cast<int>(r.rows());
    Vector rs = r.rowwise().sum();
    double kf = 0.5 * rs.sum();
    const double nn = static_cast<double>(n);

    Matrix lp(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            lp(i, j) = (rs[i] + rs[j]) / (2.0 * nn) - kf / (nn * nn) - r(i, j) / 2.0;
    return lp;
}

double cofactor_identity_residual(const Graph& g) {
    const int n = g.n;
    const double nn = static_cast<double>(n);
    Matrix lap = laplacian(g);
    double t = n == 1 ? 1.0 : principal_minor(lap, {0});

    Matrix cof = cofactor_matrix(lap + Matrix::Constant(n, n, 1.0 / nn));
    ResistanceMatrix r = resistance_matrix(g, ResistanceMethod::eigen);
    Vector rs = row_sums(r);
    double kf = 0.5 * rs.sum();

    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double predicted =
                t * (1.0 + (rs[i] + rs[j]) / 2.0 - kf / nn - nn * r(i, j) / 2.0);
            worst = std::max(worst, std::abs(cof(i, j) - predicted));
        }
    }
    return worst;
}

} // namespace resmat
