#pragma once

#include <cstdint>

#include "resmat/graph.hpp"
#include "resmat/linalg.hpp"

namespace resmat {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Largest edge count the enumeration routes will accept.
inline constexpr int kMaxEnumEdges = 25;

// eigen: t = lambda_1 * ... * lambda_{n-1} / n.
// det: t = det L(v) for any v (v = 0 is used).
// enumerate: check every (n-1)-edge subset for acyclicity. Exact but
// exponential; refused beyond 25 edges.
enum class TreeCountMethod { eigen, det, enumerate };

std::int64_t spanning_tree_count(const Graph& g,
                                 TreeCountMethod method = TreeCountMethod::det);

enum class ForestCountMethod { det, enumerate };

// s_ij = number of 2-component spanning forests separating i from j,
// equal to det L(i,j). i == j is an error.
std::int64_t two_forest_count(const Graph& g, int i, int j,
                              ForestCountMethod method = ForestCountMethod::det);

// All pairwise s_ij at once (determinant route; zero diagonal).
CountMatrix two_forest_matrix(const Graph& g);

// Same matrix from exhaustive enumeration; the oracle for the det route.
CountMatrix two_forest_matrix_enumerate(const Graph& g);

// Number of distinct 2-component spanning forests, each counted once
// regardless of how many vertex pairs it separates. Enumeration only.
std::int64_t two_forest_total(const Graph& g);

// t, the full s matrix, and the worst deviations in the two counting
// identities sum_{i<j} s_ij = t * Kf and sum_j s_ij = t * R_i.
struct ForestReport {
    std::int64_t tree_count;
    CountMatrix two_forest;
    double pair_identity_residual;
    double rowsum_identity_residual;
};

ForestReport forest_identities(const Graph& g);

} // namespace resmat
