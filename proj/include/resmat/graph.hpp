#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace resmat {

// Simple undirected graph on vertices 0..n-1. Edges are stored normalized
// (first < second) and sorted lexicographically; adj holds sorted neighbor
// lists. Instances built through make_graph are validated; the default
// requires connectivity, which every analysis in this library assumes.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    int order() const { return n; }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int i, int j) const;
};

// Validates vertex ids, rejects self-loops and duplicate edges, builds
// adjacency. With require_connected (the default) a disconnected graph
// is rejected.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                 bool require_connected = true);

// Text format: '#' comment lines, first data line "n m", then m lines
// "i j" with 1-based endpoints. Vertices are stored 0-based.
Graph parse_graph(std::string_view text);

bool is_connected(const Graph& g);

// L = D - A.
Eigen::MatrixXd laplacian(const Graph& g);

// Articulation points, ascending. A vertex whose removal disconnects
// the graph forces unequal resistance row sums, so callers use this as
// a cheap structural pre-check.
std::vector<int> cut_vertices(const Graph& g);

} // namespace resmat
