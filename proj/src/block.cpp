#include "resmat/block.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resmat/errors.hpp"
#include "resmat/format.hpp"
#include "line_scanner.hpp"

namespace resmat {

namespace {

void require_same_shape(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.blocks() != b.blocks() || a.block_order() != b.block_order())
        throw DomainError("block matrices have different shapes");
}

bool stream_exhausted(std::istringstream& ss) {
    std::string rest;
    return !(ss >> rest);
}

BlockMatrix resistance_from_blocks(const BlockMatrix& m) {
    const int n = m.blocks(), k = m.block_order();
    BlockMatrix r(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                r.block(i, j) =
                    m.block(i, i) + m.block(j, j) - m.block(i, j) - m.block(j, i);
    return r;
}

BlockMatrix resistance_from_pinv(const BlockPseudoinverse& pinv) {
    BlockMatrix r = resistance_from_blocks(pinv.x);
    BlockMatrix check = resistance_from_blocks(pinv.lplus);
    double gap = max_abs(r.dense() - check.dense());
    if (gap > 1e-8 * std::max(1.0, max_abs(r.dense())))
        throw InternalError("block resistance routes disagree");
    return r;
}

} // namespace

BlockMatrix::BlockMatrix(int blocks, int block_order)
    : n_(blocks), k_(block_order) {
    if (blocks < 1 || block_order < 1)
        throw DomainError("block matrix needs positive dimensions");
    dense_ = Matrix::Zero(dim(), dim());
}

BlockMatrix::BlockMatrix(int blocks, int block_order, Matrix dense)
    : n_(blocks), k_(block_order), dense_(std::move(dense)) {
    if (blocks < 1 || block_order < 1)
        throw DomainError("block matrix needs positive dimensions");
    if (dense_.rows() != dim() || dense_.cols() != dim())
        throw DomainError("dense matrix does not match block dimensions");
}

BlockMatrix boxtimes(const BlockMatrix& a, const BlockMatrix& b) {
    require_same_shape(a, b);
    const int n = a.blocks(), k = a.block_order();
    BlockMatrix out(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.block(i, j) = a.block(i, j) * b.block(i, j);
    return out;
}

Matrix block_total(const BlockMatrix& m) {
    const int n = m.blocks(), k = m.block_order();
    Matrix total = Matrix::Zero(k, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) total += m.block(i, j);
    return total;
}

Matrix block_trace(const BlockMatrix& m) {
    const int k = m.block_order();
    Matrix total = Matrix::Zero(k, k);
    for (int i = 0; i < m.blocks(); ++i) total += m.block(i, i);
    return total;
}

BlockMatrix block_transpose(const BlockMatrix& m) {
    const int n = m.blocks(), k = m.block_order();
    BlockMatrix out(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.block(i, j) = m.block(j, i);
    return out;
}

Matrix ones_blocks(int n, int k) {
    if (n < 1 || k < 1) throw DomainError("dimensions must be positive");
    return Matrix::Identity(k, k).replicate(n, n);
}

const Matrix& MWGraph::weight(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto key = std::make_pair(i, j);
    auto it = std::lower_bound(graph.edges.begin(), graph.edges.end(), key);
    if (it == graph.edges.end() || *it != key) throw DomainError("no such edge");
    return weights[it - graph.edges.begin()];
}

void require_positive_definite(const Matrix& w) {
    if (w.rows() != w.cols() || w.rows() == 0)
        throw DomainError("weight matrix must be square and nonempty");
    if (!is_symmetric(w)) throw DomainError("weight matrix is not symmetric");

    Matrix sym = 0.5 * (w + w.transpose());
    EigenPairs ep = sym_eigen(sym);
    double largest = ep.values[0];
    double smallest = ep.values[ep.values.size() - 1];
    if (!(largest > 0.0) || smallest <= 1e-12 * largest)
        throw DomainError("weight matrix is not positive definite");

    Eigen::LLT<Matrix> llt(sym);
    if (llt.info() != Eigen::Success)
        throw DomainError("weight matrix is not positive definite");
}

MWGraph make_mwgraph(Graph graph, int block_order, std::vector<Matrix> weights) {
    if (block_order < 1) throw DomainError("block order must be at least 1");
    if (weights.size() != graph.edges.size())
        throw DomainError("need exactly one weight per edge");
    for (const Matrix& w : weights) {
        if (w.rows() != block_order || w.cols() != block_order)
            throw DomainError("weight matrix has wrong dimensions");
        require_positive_definite(w);
    }
    return {std::move(graph), block_order, std::move(weights)};
}

BlockMatrix block_laplacian(const MWGraph& g) {
    const int n = g.graph.n, k = g.block_order;
    BlockMatrix lap(n, k);
    for (std::size_t e = 0; e < g.weights.size(); ++e) {
        auto [i, j] = g.graph.edges[e];
        Matrix winv = inverse(g.weights[e]);
        winv = (0.5 * (winv + winv.transpose())).eval();
        lap.block(i, j) -= winv;
        lap.block(j, i) -= winv;
        lap.block(i, i) += winv;
        lap.block(j, j) += winv;
    }
    return lap;
}

BlockPseudoinverse block_pinv(const MWGraph& g) {
    const int n = g.graph.n, k = g.block_order;
    Matrix shift = ones_blocks(n, k) / static_cast<double>(n);
    Matrix shifted = block_laplacian(g).dense() + shift;
    Matrix x;
    try {
        x = inverse(shifted);
    } catch (const DomainError&) {
        throw DomainError("shifted block Laplacian is singular");
    }
    return {BlockMatrix(n, k, x), BlockMatrix(n, k, x - shift)};
}

BlockMatrix block_resistance(const MWGraph& g) {
    return resistance_from_pinv(block_pinv(g));
}

Matrix block_kirchhoff(const MWGraph& g) {
    BlockPseudoinverse pinv = block_pinv(g);
    BlockMatrix r = resistance_from_pinv(pinv);

    Matrix from_trace = static_cast<double>(g.graph.n) * block_trace(pinv.lplus);
    Matrix from_sum = 0.5 * block_total(r);
    if (max_abs(from_trace - from_sum) > 1e-8 * std::max(1.0, max_abs(from_trace)))
        throw InternalError("block Kirchhoff formulas disagree");
    return 0.5 * (from_trace + from_trace.transpose());
}

double lr_identity_residual(const MWGraph& g) {
    const int n = g.graph.n, k = g.block_order;
    Matrix total = block_total(boxtimes(block_laplacian(g), block_resistance(g)));
    Matrix expected = -2.0 * static_cast<double>(n - 1) * Matrix::Identity(k, k);
    return max_abs(total - expected);
}

std::vector<Matrix> tau(const MWGraph& g) {
    const int n = g.graph.n, k = g.block_order;
    BlockMatrix lap = block_laplacian(g);
    BlockMatrix r = block_resistance(g);

    std::vector<Matrix> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Matrix t = 2.0 * Matrix::Identity(k, k);
        for (int j : g.graph.adj[i]) t += lap.block(i, j) * r.block(i, j);
        out.push_back(std::move(t));
    }
    return out;
}

BlockMatrix tree_one_inverse(const MWGraph& g) {
    const int n = g.graph.n, k = g.block_order;
    if (g.graph.edge_count() != n - 1)
        throw DomainError("graph is not a tree");

    BlockMatrix out(n, k);
    if (n > 1) {
        const int reduced = (n - 1) * k;
        out.dense().topLeftCorner(reduced, reduced) =
            inverse(block_laplacian(g).dense().topLeftCorner(reduced, reduced));
    }
    return out;
}

BlockMatrix block_resistance_via_one_inverse(const MWGraph& g) {
    return resistance_from_blocks(tree_one_inverse(g));
}

MWGraph reconstruct_tree(const BlockMatrix& r) {
    const int n = r.blocks(), k = r.block_order();
    const double scale = std::max(1.0, max_abs(r.dense()));

    if (!is_symmetric(r.dense(), 1e-8))
        throw DomainError("resistance matrix is not symmetric");
    for (int i = 0; i < n; ++i)
        if (max_abs(r.block(i, i)) > 1e-8 * scale)
            throw DomainError("resistance diagonal blocks must be zero");

    if (n == 1) return make_mwgraph(make_graph(1, {}), k, {});

    // Bottleneck matrix at the last vertex from pairwise resistances.
    const int u = n - 1;
    const int reduced = (n - 1) * k;
    Matrix bottleneck(reduced, reduced);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i; j < n - 1; ++j) {
            Matrix b = 0.5 * (r.block(i, u) + Matrix(r.block(j, u)) - r.block(i, j));
            if (max_abs(b - b.transpose()) > 1e-8 * scale)
                throw DomainError("not a tree resistance matrix: "
                                  "recovered bottleneck block is not symmetric");
            b = (0.5 * (b + b.transpose())).eval();
            bottleneck.block(i * k, j * k, k, k) = b;
            bottleneck.block(j * k, i * k, k, k) = b;
        }
    }

    Matrix reduced_lap;
    try {
        reduced_lap = inverse(bottleneck);
    } catch (const DomainError&) {
        throw DomainError("not a tree resistance matrix: "
                          "recovered bottleneck matrix is singular");
    }

    // Complete the Laplacian: block rows sum to zero, symmetric overall.
    Matrix full = Matrix::Zero(n * k, n * k);
    full.topLeftCorner(reduced, reduced) = reduced_lap;
    Matrix corner = Matrix::Zero(k, k);
    for (int i = 0; i < n - 1; ++i) {
        Matrix row_sum = Matrix::Zero(k, k);
        for (int j = 0; j < n - 1; ++j)
            row_sum += reduced_lap.block(i * k, j * k, k, k);
        full.block(i * k, u * k, k, k) = -row_sum;
        full.block(u * k, i * k, k, k) = -row_sum.transpose();
        corner += row_sum;
    }
    full.block(u * k, u * k, k, k) = 0.5 * (corner + corner.transpose());

    // Edges are the off-diagonal blocks that are not numerically zero.
    double max_block = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            max_block = std::max(max_block, max_abs(full.block(i * k, j * k, k, k)));
    if (max_block <= 0.0)
        throw DomainError("not a tree resistance matrix: no edges recovered");

    std::vector<std::pair<int, int>> edges;
    std::vector<Matrix> weights;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Matrix off = full.block(i * k, j * k, k, k);
            if (max_abs(off) <= 1e-8 * max_block) continue;
            Matrix w;
            try {
                w = inverse(Matrix(-off));
            } catch (const DomainError&) {
                throw DomainError("not a tree resistance matrix: "
                                  "recovered weight block is singular");
            }
            w = (0.5 * (w + w.transpose())).eval();
            edges.emplace_back(i, j);
            weights.push_back(std::move(w));
        }
    }
    if (static_cast<int>(edges.size()) != n - 1)
        throw DomainError("not a tree resistance matrix: "
                          "recovered graph is not a tree");

    Graph graph;
    try {
        graph = make_graph(n, edges);
    } catch (const DomainError&) {
        throw DomainError("not a tree resistance matrix: "
                          "recovered graph is not connected");
    }
    try {
        return make_mwgraph(std::move(graph), k, std::move(weights));
    } catch (const DomainError&) {
        throw DomainError("not a tree resistance matrix: "
                          "recovered weight is not positive definite");
    }
}

MWGraph parse_mwgraph(std::string_view text) {
    auto lines = detail::data_lines(text);
    if (lines.empty()) throw ParseError("empty input");

    int n = 0, m = 0, k = 0;
    {
        std::istringstream ss(lines[0].text);
        if (!(ss >> n >> m >> k) || !stream_exhausted(ss))
            throw ParseError("expected header \"n m k\"", lines[0].number);
    }
    if (n < 1) throw ParseError("vertex count must be at least 1", lines[0].number);
    if (m < 0) throw ParseError("negative edge count", lines[0].number);
    if (k < 1) throw ParseError("block order must be at least 1", lines[0].number);

    const std::size_t expected = 1 + static_cast<std::size_t>(m) * (1 + k);
    if (lines.size() < expected)
        throw ParseError("unexpected end of input: expected " +
                             std::to_string(expected - 1) + " lines after header",
                         lines.back().number);
    if (lines.size() > expected)
        throw ParseError("unexpected content after edge list",
                         lines[expected].number);

    std::vector<std::pair<int, int>> edges;
    std::vector<Matrix> weights;
    std::size_t at = 1;
    for (int e = 0; e < m; ++e) {
        {
            std::istringstream ss(lines[at].text);
            int i = 0, j = 0;
            if (!(ss >> i >> j) || !stream_exhausted(ss))
                throw ParseError("expected edge \"i j\"", lines[at].number);
            if (i < 1 || i > n || j < 1 || j > n)
                throw ParseError("edge endpoint out of range 1.." + std::to_string(n),
                                 lines[at].number);
            if (i == j) throw ParseError("self-loop", lines[at].number);
            edges.emplace_back(i - 1, j - 1);
        }
        ++at;
        Matrix w(k, k);
        for (int row = 0; row < k; ++row, ++at) {
            std::istringstream ss(lines[at].text);
            for (int col = 0; col < k; ++col)
                if (!(ss >> w(row, col)))
                    throw ParseError("expected " + std::to_string(k) +
                                         " weight entries",
                                     lines[at].number);
            if (!stream_exhausted(ss))
                throw ParseError("expected " + std::to_string(k) +
                                     " weight entries",
                                 lines[at].number);
        }
        weights.push_back(std::move(w));
    }

    // Weights follow file edge order; sorting the graph reorders edges, so
    // pair them up again explicitly.
    Graph graph;
    try {
        graph = make_graph(n, edges);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    std::vector<Matrix> ordered(weights.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto key = edges[e];
        if (key.first > key.second) std::swap(key.first, key.second);
        auto it = std::lower_bound(graph.edges.begin(), graph.edges.end(), key);
        ordered[it - graph.edges.begin()] = std::move(weights[e]);
    }
    try {
        return make_mwgraph(std::move(graph), k, std::move(ordered));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

std::string format_mwgraph(const MWGraph& g) {
    std::ostringstream out;
    out << g.graph.n << ' ' << g.graph.edge_count() << ' ' << g.block_order << '\n';
    for (std::size_t e = 0; e < g.weights.size(); ++e) {
        out << g.graph.edges[e].first + 1 << ' ' << g.graph.edges[e].second + 1
            << '\n';
        for (int row = 0; row < g.block_order; ++row) {
            for (int col = 0; col < g.block_order; ++col) {
                if (col) out << ' ';
                out << g9(g.weights[e](row, col));
            }
            out << '\n';
        }
    }
    return out.str();
}

BlockMatrix parse_block_resistance(std::string_view text) {
    auto lines = detail::data_lines(text);
    if (lines.empty()) throw ParseError("empty input");

    int n = 0, k = 0;
    {
        std::istringstream ss(lines[0].text);
        if (!(ss >> n >> k) || !stream_exhausted(ss))
            throw ParseError("expected header \"n k\"", lines[0].number);
    }
    if (n < 1 || k < 1)
        throw ParseError("dimensions must be positive", lines[0].number);

    const std::size_t dim = static_cast<std::size_t>(n) * k;
    if (lines.size() < dim + 1)
        throw ParseError("unexpected end of input: expected " +
                             std::to_string(dim) + " matrix rows",
                         lines.back().number);
    if (lines.size() > dim + 1)
        throw ParseError("unexpected content after matrix", lines[dim + 1].number);

    Matrix dense(dim, dim);
    for (std::size_t row = 0; row < dim; ++row) {
        std::istringstream ss(lines[row + 1].text);
        for (std::size_t col = 0; col < dim; ++col)
            if (!(ss >> dense(row, col)))
                throw ParseError("expected " + std::to_string(dim) + " entries",
                                 lines[row + 1].number);
        if (!stream_exhausted(ss))
            throw ParseError("expected " + std::to_string(dim) + " entries",
                             lines[row + 1].number);
    }
    return BlockMatrix(n, k, std::move(dense));
}

} // namespace resmat
