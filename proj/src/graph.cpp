#include "resmat/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "resmat/errors.hpp"
#include "line_scanner.hpp"

namespace resmat {

namespace {

bool stream_exhausted(std::istringstream& ss) {
    std::string rest;
    return !(ss >> rest);
}

} // namespace

bool Graph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                 bool require_connected) {
    if (n < 1) throw DomainError("graph must have at least one vertex");
    for (auto& [i, j] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw DomainError("edge endpoint out of range");
        if (i == j) throw DomainError("self-loops are not allowed");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw DomainError("duplicate edge");

    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.adj.assign(n, {});
    for (auto [i, j] : g.edges) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
    }
    for (auto& list : g.adj) std::sort(list.begin(), list.end());

    if (require_connected && !is_connected(g))
        throw DomainError("graph is not connected");
    return g;
}

Graph parse_graph(std::string_view text) {
    auto lines = detail::data_lines(text);
    if (lines.empty()) throw ParseError("empty input");

    int n = 0, m = 0;
    {
        std::istringstream ss(lines[0].text);
        if (!(ss >> n >> m) || !stream_exhausted(ss))
            throw ParseError("expected header \"n m\"", lines[0].number);
    }
    if (n < 1) throw ParseError("vertex count must be at least 1", lines[0].number);
    if (m < 0) throw ParseError("negative edge count", lines[0].number);
    if (static_cast<int>(lines.size()) - 1 < m)
        throw ParseError("expected " + std::to_string(m) + " edge lines, got " +
                             std::to_string(lines.size() - 1),
                         lines.back().number);
    if (static_cast<int>(lines.size()) - 1 > m)
        throw ParseError("unexpected content after edge list", lines[m + 1].number);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (int e = 0; e < m; ++e) {
        const auto& line = lines[e + 1];
        std::istringstream ss(line.text);
        int i = 0, j = 0;
        if (!(ss >> i >> j) || !stream_exhausted(ss))
            throw ParseError("expected edge \"i j\"", line.number);
        if (i < 1 || i > n || j < 1 || j > n)
            throw ParseError("edge endpoint out of range 1.." + std::to_string(n),
                             line.number);
        if (i == j) throw ParseError("self-loop", line.number);
        edges.emplace_back(i - 1, j - 1);
    }

    try {
        return make_graph(n, std::move(edges));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

bool is_connected(const Graph& g) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == g.n;
}

Eigen::MatrixXd laplacian(const Graph& g) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n, g.n);
    for (auto [i, j] : g.edges) {
        lap(i, j) -= 1.0;
        lap(j, i) -= 1.0;
        lap(i, i) += 1.0;
        lap(j, j) += 1.0;
    }
    return lap;
}

std::vector<int> cut_vertices(const Graph& g) {
    std::vector<int> depth(g.n, -1), low(g.n, 0);
    std::vector<char> is_cut(g.n, 0);

    std::function<void(int, int, int)> dfs = [&](int v, int parent, int d) {
        depth[v] = low[v] = d;
        int children = 0;
        for (int w : g.adj[v]) {
            if (depth[w] < 0) {
                ++children;
                dfs(w, v, d + 1);
                low[v] = std::min(low[v], low[w]);
                if (parent >= 0 && low[w] >= depth[v]) is_cut[v] = 1;
            } else if (w != parent) {
                low[v] = std::min(low[v], depth[w]);
            }
        }
        if (parent < 0 && children > 1) is_cut[v] = 1;
    };
    for (int v = 0; v < g.n; ++v)
        if (depth[v] < 0) dfs(v, -1, 0);

    std::vector<int> result;
    for (int v = 0; v < g.n; ++v)
        if (is_cut[v]) result.push_back(v);
    return result;
}

} // namespace resmat
