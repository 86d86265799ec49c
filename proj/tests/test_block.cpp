#include <doctest.h>

#include "resmat/block.hpp"
#include "resmat/corpus.hpp"
#include "resmat/errors.hpp"
#include "resmat/graph.hpp"
#include "resmat/linalg.hpp"

using namespace resmat;

namespace {

MWGraph two_vertex_example() {
    Matrix w(2, 2);
    w << 7, 5, 5, 5;
    return make_mwgraph(make_graph(2, {{0, 1}}), 2, {w});
}

MWGraph worked_path() {
    Matrix w1(1, 1), w2(1, 1);
    w1 << 2;
    w2 << 5;
    return make_mwgraph(make_graph(3, {{0, 1}, {1, 2}}), 1, {w1, w2});
}

} // namespace

TEST_SUITE("block") {

TEST_CASE("block matrix accessors") {
    BlockMatrix m(2, 2, Matrix::Zero(4, 4));
    m.block(0, 1) << 1, 2, 3, 4;
    CHECK(m.dense()(0, 2) == 1.0);
    CHECK(m.dense()(1, 3) == 4.0);
    CHECK(m.blocks() == 2);
    CHECK(m.block_order() == 2);
    CHECK(m.dim() == 4);
    CHECK_THROWS_AS(BlockMatrix(2, 2, Matrix::Zero(3, 3)), DomainError);
}

TEST_CASE("block transpose swaps blocks without transposing them") {
    Matrix dense(4, 4);
    dense << 1, 2, 5, 6, 3, 4, 7, 8, 9, 10, 13, 14, 11, 12, 15, 16;
    BlockMatrix m(2, 2, dense);
    BlockMatrix t = block_transpose(m);
    CHECK(max_abs(t.block(0, 1) - m.block(1, 0)) == 0.0);
    CHECK(max_abs(t.block(1, 0) - m.block(0, 1)) == 0.0);
    CHECK(max_abs(block_transpose(t).dense() - dense) == 0.0);
}

TEST_CASE("blockwise product with the all-identity pattern") {
    BlockMatrix ones(3, 2, ones_blocks(3, 2));
    Matrix dense = Matrix::Random(6, 6);
    BlockMatrix m(3, 2, dense);
    CHECK(max_abs(boxtimes(m, ones).dense() - dense) < 1e-14);
    CHECK(max_abs(boxtimes(ones, m).dense() - dense) < 1e-14);
    Matrix sum = Matrix::Zero(2, 2);
    Matrix diag = Matrix::Zero(2, 2);
    for (int i = 0; i < 3; ++i) {
        diag += m.block(i, i);
        for (int j = 0; j < 3; ++j) sum += m.block(i, j);
    }
    CHECK(max_abs(block_total(m) - sum) < 1e-14);
    CHECK(max_abs(block_trace(m) - diag) < 1e-14);
}

TEST_CASE("single block edge: resistance equals the weight") {
    MWGraph g = two_vertex_example();
    BlockMatrix r = block_resistance(g);
    CHECK(max_abs(r.block(0, 1) - g.weights[0]) < 1e-10);
    CHECK(max_abs(r.block(0, 0)) == 0.0);
    CHECK(max_abs(r.block(1, 1)) == 0.0);
}

TEST_CASE("unit-order blocks reduce to the scalar theory") {
    MWGraph g = worked_path();
    BlockMatrix lap = block_laplacian(g);
    Matrix expected(3, 3);
    expected << 0.5, -0.5, 0, -0.5, 0.7, -0.2, 0, -0.2, 0.2;
    CHECK(max_abs(lap.dense() - expected) < 1e-12);

    BlockMatrix r = block_resistance(g);
    CHECK(r.block(0, 1)(0, 0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.block(1, 2)(0, 0) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(r.block(0, 2)(0, 0) == doctest::Approx(7.0).epsilon(1e-9));
}

TEST_CASE("pseudoinverse identities in block form") {
    for (const NamedMWGraph& named : mw_corpus(20)) {
        const MWGraph& g = named.graph;
        int n = g.graph.n, k = g.block_order;
        BlockMatrix lap = block_laplacian(g);
        BlockPseudoinverse pinv = block_pinv(g);
        Matrix product = lap.dense() * pinv.lplus.dense();
        Matrix expected =
            Matrix::Identity(n * k, n * k) - ones_blocks(n, k) / n;
        CHECK(max_abs(product - expected) < 1e-8);
    }
}

TEST_CASE("trace-product identity and vertex weights") {
    for (const NamedMWGraph& named : mw_corpus(25)) {
        const MWGraph& g = named.graph;
        int k = g.block_order;
        CHECK(lr_identity_residual(g) < 1e-7);
        std::vector<Matrix> taus = tau(g);
        Matrix total = Matrix::Zero(k, k);
        for (const Matrix& t : taus) total += t;
        CHECK(max_abs(total - 2.0 * Matrix::Identity(k, k)) < 1e-7);
    }
}

TEST_CASE("one-inverse of a tree laplacian") {
    MWGraph g = worked_path();
    BlockMatrix one_inv = tree_one_inverse(g);
    // inverse of the leading 2x2 corner [[.5,-.5],[-.5,.7]] is [[7,5],[5,5]]
    Matrix expected(3, 3);
    expected << 7, 5, 0, 5, 5, 0, 0, 0, 0;
    CHECK(max_abs(one_inv.dense() - expected) < 1e-10);

    BlockMatrix lap = block_laplacian(g);
    Matrix lgl = lap.dense() * one_inv.dense() * lap.dense();
    CHECK(max_abs(lgl - lap.dense()) < 1e-10);

    BlockMatrix via_g = block_resistance_via_one_inverse(g);
    BlockMatrix via_pinv = block_resistance(g);
    CHECK(max_abs(via_g.dense() - via_pinv.dense()) < 1e-9);

    Matrix cw(1, 1);
    cw << 1;
    MWGraph cyc = make_mwgraph(make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), 1,
                               {cw, cw, cw});
    CHECK_THROWS_AS(tree_one_inverse(cyc), DomainError);
}

TEST_CASE("reconstruction recovers the worked example") {
    Matrix r(3, 3);
    r << 0, 2, 7, 2, 0, 5, 7, 5, 0;
    MWGraph rebuilt = reconstruct_tree(BlockMatrix(3, 1, r));
    CHECK(rebuilt.graph.n == 3);
    CHECK(rebuilt.graph.edges ==
          std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(rebuilt.weights[0](0, 0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rebuilt.weights[1](0, 0) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(format_mwgraph(rebuilt) == "3 2 1\n1 2\n2\n2 3\n5\n");
}

TEST_CASE("reconstruction round-trips random trees") {
    for (const NamedMWGraph& named : mw_tree_corpus(15)) {
        const MWGraph& g = named.graph;
        MWGraph rebuilt = reconstruct_tree(block_resistance(g));
        CHECK(rebuilt.graph.edges == g.graph.edges);
        REQUIRE(rebuilt.weights.size() == g.weights.size());
        for (std::size_t e = 0; e < g.weights.size(); ++e) {
            double scale = std::max(1.0, max_abs(g.weights[e]));
            CHECK(max_abs(rebuilt.weights[e] - g.weights[e]) < 1e-6 * scale);
        }
    }
}

TEST_CASE("reconstruction rejects non-tree inputs") {
    // resistance matrix of an unweighted four-cycle: not realizable by a tree
    Matrix r(4, 4);
    r << 0, 0.75, 1, 0.75, 0.75, 0, 0.75, 1, 1, 0.75, 0, 0.75, 0.75, 1, 0.75,
        0;
    CHECK_THROWS_AS(reconstruct_tree(BlockMatrix(4, 1, r)), DomainError);

    Matrix bad(2, 2);
    bad << 0, 1, 2, 0;
    CHECK_THROWS_AS(reconstruct_tree(BlockMatrix(2, 1, bad)), DomainError);

    Matrix diag(2, 2);
    diag << 1, 1, 1, 0;
    CHECK_THROWS_AS(reconstruct_tree(BlockMatrix(2, 1, diag)), DomainError);
}

TEST_CASE("weights must be symmetric positive definite") {
    Graph edge = make_graph(2, {{0, 1}});
    Matrix not_pd(2, 2);
    not_pd << 1, 2, 2, 1;
    CHECK_THROWS_AS(make_mwgraph(edge, 2, {not_pd}), DomainError);
    Matrix asym(2, 2);
    asym << 1, 1, 0, 1;
    CHECK_THROWS_AS(make_mwgraph(edge, 2, {asym}), DomainError);
    Matrix wrong_size(1, 1);
    wrong_size << 1;
    CHECK_THROWS_AS(make_mwgraph(edge, 2, {wrong_size}), DomainError);
}

} // TEST_SUITE
