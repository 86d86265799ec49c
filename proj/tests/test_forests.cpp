#include <doctest.h>

#include "resmat/corpus.hpp"
#include "resmat/errors.hpp"
#include "resmat/forests.hpp"
#include "resmat/graph.hpp"
#include "resmat/resistance.hpp"

using namespace resmat;

TEST_SUITE("forests") {

TEST_CASE("spanning tree counts of named graphs") {
    // Cayley: t(K_n) = n^(n-2)
    CHECK(spanning_tree_count(complete_graph(4)) == 16);
    CHECK(spanning_tree_count(complete_graph(6)) == 1296);
    CHECK(spanning_tree_count(complete_graph(8), TreeCountMethod::det) ==
          262144);
    CHECK(spanning_tree_count(cycle_graph(5)) == 5);
    CHECK(spanning_tree_count(path_graph(6)) == 1);
    CHECK(spanning_tree_count(petersen_graph()) == 2000);
    CHECK(spanning_tree_count(make_graph(1, {})) == 1);
}

TEST_CASE("tree count methods agree") {
    for (const NamedGraph& named : standard_corpus(30)) {
        std::int64_t via_det =
            spanning_tree_count(named.graph, TreeCountMethod::det);
        std::int64_t via_eigen =
            spanning_tree_count(named.graph, TreeCountMethod::eigen);
        CHECK(via_det == via_eigen);
        if (named.graph.edge_count() <= kMaxEnumEdges) {
            CHECK(via_det == spanning_tree_count(named.graph,
                                                 TreeCountMethod::enumerate));
        }
    }
}

TEST_CASE("enumeration refuses oversized graphs") {
    Graph k8 = complete_graph(8); // 28 edges
    CHECK_THROWS_AS(spanning_tree_count(k8, TreeCountMethod::enumerate),
                    DomainError);
    CHECK_THROWS_AS(two_forest_matrix_enumerate(k8), DomainError);
}

TEST_CASE("two-forest counts on the four-cycle") {
    Graph c4 = cycle_graph(4);
    CountMatrix s = two_forest_matrix(c4);
    CHECK(s(0, 0) == 0);
    CHECK(s(0, 1) == 3);
    CHECK(s(0, 2) == 4);
    CHECK(s(1, 3) == 4);
    CHECK(two_forest_count(c4, 0, 2) == 4);
    CHECK(two_forest_count(c4, 2, 0) == 4);
    // 4 edge-pair deletions give 4 forests, plus... total distinct is 6:
    // removing two adjacent edges leaves a path pair counted once.
    CHECK(two_forest_total(c4) == 6);
    CHECK_THROWS_AS(two_forest_count(c4, 1, 1), DomainError);
    CHECK_THROWS_AS(two_forest_count(c4, 0, 4), DomainError);
}

TEST_CASE("two-forest count on a single edge") {
    Graph p2 = path_graph(2);
    CHECK(two_forest_count(p2, 0, 1) == 1);
    CHECK(two_forest_total(p2) == 1);
}

TEST_CASE("determinant and enumeration matrices agree") {
    for (const NamedGraph& named : standard_corpus(20)) {
        if (named.graph.edge_count() > kMaxEnumEdges) continue;
        CountMatrix det = two_forest_matrix(named.graph);
        CountMatrix brute = two_forest_matrix_enumerate(named.graph);
        CHECK((det.array() == brute.array()).all());
    }
}

TEST_CASE("forest ratios reproduce resistances") {
    // s_ij / t = r_ij
    for (const NamedGraph& named : standard_corpus(15)) {
        const Graph& g = named.graph;
        double t = static_cast<double>(spanning_tree_count(g));
        CountMatrix s = two_forest_matrix(g);
        ResistanceMatrix r = resistance_matrix(g, ResistanceMethod::eigen);
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j)
                CHECK(static_cast<double>(s(i, j)) / t ==
                      doctest::Approx(r(i, j)).epsilon(1e-9));
    }
}

TEST_CASE("forest identity report") {
    for (const NamedGraph& named : standard_corpus(15)) {
        ForestReport report = forest_identities(named.graph);
        double t = static_cast<double>(report.tree_count);
        CHECK(report.pair_identity_residual < 1e-6 * std::max(1.0, t));
        CHECK(report.rowsum_identity_residual < 1e-6 * std::max(1.0, t));
    }
}

TEST_CASE("trivial graph forest report") {
    ForestReport report = forest_identities(make_graph(1, {}));
    CHECK(report.tree_count == 1);
    CHECK(report.two_forest.rows() == 1);
    CHECK(report.two_forest(0, 0) == 0);
}

} // TEST_SUITE
