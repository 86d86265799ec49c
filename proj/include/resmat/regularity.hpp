#pragma once

#include <string>
#include <utility>
#include <vector>

#include "resmat/graph.hpp"
#include "resmat/linalg.hpp"

namespace resmat {

// Inverse of the Laplacian with one vertex removed. Entrywise nonnegative
// on a connected graph; its entry total feeds the regularity test.
struct BottleneckMatrix {
    int vertex;
    Matrix values;
    double l1_total;
};

BottleneckMatrix bottleneck_matrix(const Graph& g, int v);

struct CriterionResult {
    char id;
    std::string name;
    bool pass;
    double deviation;
    std::string witness; // 1-based vertex labels; empty when nothing to point at
};

// Ten equivalent characterizations of "every resistance row sum equal",
// each evaluated independently. Disagreement between them is reported as
// an internal error, never papered over.
struct RegularityReport {
    bool regular;
    double constant; // 2 Kf / n, the common row sum when regular
    double kirchhoff;
    Vector resistance_row_sums;
    std::vector<int> cut_vertices;
    std::vector<CriterionResult> criteria;
};

// tol scales every constancy test: a family passes when its spread stays
// within tol * max(1, |mean|).
RegularityReport regularity_report(const Graph& g, double tol = 1e-9);

// All edge resistances equal (same count of spanning trees through each
// edge). Requires at least one edge.
struct EquiarborealReport {
    bool equiarboreal;
    double common_resistance; // mean edge resistance
    double spread;            // max - min over edges
    std::pair<int, int> min_edge, max_edge;
    double min_resistance, max_resistance;
};

EquiarborealReport is_equiarboreal(const Graph& g);

} // namespace resmat
