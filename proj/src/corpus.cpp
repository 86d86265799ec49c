#include "resmat/corpus.hpp"

#include <utility>

namespace resmat {

namespace {

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
    return out;
}

} // namespace

Graph complete_graph(int n) { return make_graph(n, all_pairs(n)); }

Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return make_graph(n, std::move(edges));
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return make_graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return make_graph(leaves + 1, std::move(edges));
}

Graph petersen_graph() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);         // outer cycle
        edges.emplace_back(i, i + 5);               // spokes
        edges.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
    }
    return make_graph(10, std::move(edges));
}

Graph bowtie_graph() {
    return make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
}

Graph paw_graph() {
    return make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
}

Graph random_tree(int n, std::mt19937& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.emplace_back(pick(rng), v);
    }
    return make_graph(n, std::move(edges));
}

Graph random_connected_graph(int n, std::mt19937& rng) {
    Graph tree = random_tree(n, rng);
    std::vector<std::pair<int, int>> edges = tree.edges;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double density = 0.6 * unit(rng);
    for (auto [i, j] : all_pairs(n)) {
        if (tree.has_edge(i, j)) continue;
        if (unit(rng) < density) edges.emplace_back(i, j);
    }
    return make_graph(n, std::move(edges));
}

Matrix random_pd_matrix(int k, std::mt19937& rng, double lo, double hi) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix seed(k, k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) seed(r, c) = gauss(rng);
    Matrix q = Eigen::HouseholderQR<Matrix>(seed).householderQ();

    std::uniform_real_distribution<double> spectrum(lo, hi);
    Vector values(k);
    for (int i = 0; i < k; ++i) values[i] = spectrum(rng);

    Matrix w = q * values.asDiagonal() * q.transpose();
    return 0.5 * (w + w.transpose());
}

MWGraph random_mwgraph(int n, int k, std::mt19937& rng) {
    Graph graph = random_connected_graph(n, rng);
    std::vector<Matrix> weights;
    weights.reserve(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        weights.push_back(random_pd_matrix(k, rng));
    return make_mwgraph(std::move(graph), k, std::move(weights));
}

MWGraph random_mw_tree(int n, int k, std::mt19937& rng) {
    Graph graph = random_tree(n, rng);
    std::vector<Matrix> weights;
    weights.reserve(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
        weights.push_back(random_pd_matrix(k, rng));
    return make_mwgraph(std::move(graph), k, std::move(weights));
}

std::vector<NamedGraph> standard_corpus(int random_count, unsigned seed) {
    std::vector<NamedGraph> out;
    for (int n = 2; n <= 6; ++n)
        out.push_back({"K" + std::to_string(n), complete_graph(n)});
    for (int n = 3; n <= 8; ++n)
        out.push_back({"C" + std::to_string(n), cycle_graph(n)});
    for (int n = 2; n <= 8; ++n)
        out.push_back({"P" + std::to_string(n), path_graph(n)});
    for (int leaves = 3; leaves <= 6; ++leaves)
        out.push_back({"K1," + std::to_string(leaves), star_graph(leaves)});
    out.push_back({"petersen", petersen_graph()});
    out.push_back({"bowtie", bowtie_graph()});
    out.push_back({"paw", paw_graph()});

    std::mt19937 rng(seed);
    for (int i = 0; i < random_count; ++i) {
        int n = 2 + i % 6;
        out.push_back({"random" + std::to_string(i),
                       random_connected_graph(n, rng)});
    }
    return out;
}

std::vector<NamedMWGraph> mw_corpus(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<NamedMWGraph> out;
    for (int i = 0; i < count; ++i) {
        int n = 2 + i % 5;
        int k = 1 + i % 3;
        out.push_back({"mw" + std::to_string(i), random_mwgraph(n, k, rng)});
    }
    return out;
}

std::vector<NamedMWGraph> mw_tree_corpus(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<NamedMWGraph> out;
    for (int i = 0; i < count; ++i) {
        int n = 2 + i % 7;
        int k = 1 + i % 3;
        out.push_back({"mwtree" + std::to_string(i), random_mw_tree(n, k, rng)});
    }
    return out;
}

} // namespace resmat
