#pragma once

#include "resmat/graph.hpp"
#include "resmat/linalg.hpp"

namespace resmat {

// eigen: r_ij = sum over nonzero lambda of (1/lambda)(c_ki - c_kj)^2.
// pinv:  r_ij = L+_ii + L+_jj - 2 L+_ij with L+ from the shift identity.
// det:   r_ij = det L(i,j) / det L(0).
// The three are algebraically equal on a connected graph and are kept as
// genuinely separate code paths so they can cross-check each other.
enum class ResistanceMethod { eigen, pinv, det };

const char* to_string(ResistanceMethod method);

struct ResistanceMatrix {
    Matrix values;
    ResistanceMethod method;

    double operator()(int i, int j) const { return values(i, j); }
    int order() const { return static_cast<int>(values.rows()); }
};

// Pairwise effective resistances. Zero diagonal, symmetry, and positive
// off-diagonal entries are asserted on every result.
ResistanceMatrix resistance_matrix(const Graph& g,
                                   ResistanceMethod method = ResistanceMethod::eigen);

// Kf = n * sum over nonzero lambda of 1/lambda, cross-checked against the
// half-sum of all resistances before returning.
double kirchhoff_index(const Graph& g);

Vector row_sums(const ResistanceMatrix& r);

// Recovers the Laplacian pseudoinverse from resistances alone:
// L+_ij = (R_i + R_j) / (2n) - Kf / n^2 - r_ij / 2.
Matrix lplus_from_resistance(const Matrix& r);

// Largest deviation in cof_ij(L + J/n) = t (1 + (R_i + R_j)/2 - Kf/n - n r_ij / 2),
// where t is the spanning tree count. Small residual certifies the whole
// pipeline: cofactors, tree count, resistances, and row sums at once.
double cofactor_identity_residual(const Graph& g);

} // namespace resmat
