#pragma once

#include <random>
#include <string>
#include <vector>

#include "resmat/block.hpp"
#include "resmat/graph.hpp"

namespace resmat {

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);
Graph petersen_graph();
// Two triangles sharing one vertex.
Graph bowtie_graph();
// Triangle with one pendant vertex.
Graph paw_graph();

// Uniform random recursive tree, connected by construction.
Graph random_tree(int n, std::mt19937& rng);

// Random tree plus a random sprinkling of extra edges.
Graph random_connected_graph(int n, std::mt19937& rng);

// Symmetric with eigenvalues drawn uniformly from [lo, hi] and a random
// orthogonal eigenbasis.
Matrix random_pd_matrix(int k, std::mt19937& rng, double lo = 0.1,
                        double hi = 10.0);

MWGraph random_mwgraph(int n, int k, std::mt19937& rng);
MWGraph random_mw_tree(int n, int k, std::mt19937& rng);

struct NamedGraph {
    std::string name;
    Graph graph;
};

struct NamedMWGraph {
    std::string name;
    MWGraph graph;
};

// The reference corpus every cross-check runs over: complete graphs K2..K6,
// cycles C3..C8, paths P2..P8, stars K1,3..K1,6, the Petersen graph, the
// bowtie and paw, plus `random_count` seeded random connected graphs with
// 2..7 vertices. Fixed seed: identical corpus on every run.
std::vector<NamedGraph> standard_corpus(int random_count = 200,
                                        unsigned seed = 20240601);

// Seeded matrix-weighted graphs: 2..6 vertices, block order cycling 1..3.
std::vector<NamedMWGraph> mw_corpus(int count = 50, unsigned seed = 20240602);

// Seeded matrix-weighted trees: 2..8 vertices, block order cycling 1..3.
std::vector<NamedMWGraph> mw_tree_corpus(int count = 50,
                                         unsigned seed = 20240603);

} // namespace resmat
