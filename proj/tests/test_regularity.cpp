#include <doctest.h>

#include <set>

#include "resmat/corpus.hpp"
#include "resmat/errors.hpp"
#include "resmat/graph.hpp"
#include "resmat/regularity.hpp"

using namespace resmat;

namespace {

bool all_pass(const RegularityReport& report) {
    for (const CriterionResult& c : report.criteria)
        if (!c.pass) return false;
    return true;
}

} // namespace

TEST_SUITE("regularity") {

TEST_CASE("triangle is resistance-regular") {
    RegularityReport report = regularity_report(complete_graph(3));
    CHECK(report.regular);
    CHECK(all_pass(report));
    CHECK(report.criteria.size() == 10);
    CHECK(report.constant == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(report.kirchhoff == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(report.cut_vertices.empty());
}

TEST_CASE("cycles and complete graphs are regular") {
    for (int n = 3; n <= 6; ++n) {
        CHECK(regularity_report(cycle_graph(n)).regular);
        CHECK(regularity_report(complete_graph(n)).regular);
    }
    CHECK(regularity_report(petersen_graph()).regular);
}

TEST_CASE("three-vertex path fails every criterion") {
    RegularityReport report = regularity_report(path_graph(3));
    CHECK_FALSE(report.regular);
    for (const CriterionResult& c : report.criteria) {
        CHECK_FALSE(c.pass);
        CHECK(c.deviation > 1e-9);
    }
    CHECK(report.kirchhoff == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(report.resistance_row_sums[0] == doctest::Approx(3.0));
    CHECK(report.resistance_row_sums[1] == doctest::Approx(2.0));
    CHECK(report.resistance_row_sums[2] == doctest::Approx(3.0));
    CHECK(report.cut_vertices == std::vector<int>{1});
}

TEST_CASE("criterion ids and names are stable") {
    RegularityReport report = regularity_report(complete_graph(3));
    std::set<char> ids;
    for (const CriterionResult& c : report.criteria) {
        CHECK_FALSE(c.name.empty());
        ids.insert(c.id);
    }
    CHECK(ids == std::set<char>{'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i',
                                'j'});
}

TEST_CASE("single edge and single vertex are regular") {
    CHECK(regularity_report(path_graph(2)).regular);
    RegularityReport trivial = regularity_report(make_graph(1, {}));
    CHECK(trivial.regular);
    CHECK(trivial.criteria.size() == 10);
    for (const CriterionResult& c : trivial.criteria) CHECK(c.pass);
}

TEST_CASE("graphs with cut vertices are never regular") {
    for (const Graph& g : {path_graph(4), star_graph(4), bowtie_graph()}) {
        RegularityReport report = regularity_report(g);
        CHECK_FALSE(report.regular);
        CHECK_FALSE(report.cut_vertices.empty());
    }
}

TEST_CASE("tolerance must be positive") {
    CHECK_THROWS_AS(regularity_report(complete_graph(3), 0.0), DomainError);
    CHECK_THROWS_AS(regularity_report(complete_graph(3), -1.0), DomainError);
}

TEST_CASE("bottleneck matrix of the triangle") {
    // deleting one vertex of K3 leaves a single edge; its inverse-minor is
    // (1/3) [[2,1],[1,2]]
    BottleneckMatrix b = bottleneck_matrix(complete_graph(3), 2);
    Matrix expected(2, 2);
    expected << 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0;
    CHECK(max_abs(b.values - expected) < 1e-12);
    CHECK(b.l1_total == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("bottleneck at the middle of a path is the identity") {
    BottleneckMatrix b = bottleneck_matrix(path_graph(3), 1);
    CHECK(max_abs(b.values - Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("equiarboreal detection") {
    EquiarborealReport k4 = is_equiarboreal(complete_graph(4));
    CHECK(k4.equiarboreal);
    CHECK(k4.common_resistance == doctest::Approx(0.5).epsilon(1e-12));

    EquiarborealReport paw = is_equiarboreal(paw_graph());
    CHECK_FALSE(paw.equiarboreal);
    CHECK(paw.spread > 1e-9);
    CHECK(paw.min_resistance < paw.max_resistance);

    CHECK_THROWS_AS(is_equiarboreal(make_graph(1, {})), DomainError);
}

TEST_CASE("equiarboreal matches degree regularity on the corpus") {
    // a connected graph has all edge resistances equal and is
    // resistance-regular exactly when it is degree-regular
    for (const NamedGraph& named : standard_corpus(30)) {
        const Graph& g = named.graph;
        if (g.edge_count() == 0) continue;
        bool degree_regular = true;
        for (int v = 1; v < g.n; ++v)
            if (g.degree(v) != g.degree(0)) degree_regular = false;
        bool both = is_equiarboreal(g).equiarboreal &&
                    regularity_report(g).regular;
        CHECK(both == degree_regular);
    }
}

} // TEST_SUITE
