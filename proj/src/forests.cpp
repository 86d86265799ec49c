#include "resmat/forests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resmat/errors.hpp"
#include "resmat/resistance.hpp"

namespace resmat {

namespace {

// Integer counts are computed through floating-point determinants; anything
// farther than this from an integer means precision was actually lost.
std::int64_t round_to_count(double v) {
    double nearest = std::round(v);
    if (std::abs(v - nearest) > 1e-6 * std::max(1.0, std::abs(v)))
        throw InternalError("count is not close to an integer");
    if (nearest < 0.0 || nearest > 9.0e18)
        throw DomainError("count outside exact integer range");
    return static_cast<std::int64_t>(nearest);
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    // false when u and v were already connected
    bool unite(int u, int v) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        parent[ru] = rv;
        return true;
    }
};

void require_enumerable(const Graph& g) {
    if (g.edge_count() > kMaxEnumEdges)
        throw DomainError("enumeration supports at most " +
                          std::to_string(kMaxEnumEdges) + " edges");
}

// Visits every edge subset of the given size as a bitmask (Gosper's hack).
template <typename Fn>
void for_each_edge_subset(int edge_total, int size, Fn&& fn) {
    if (size == 0) {
        fn(0u);
        return;
    }
    if (size > edge_total) return;
    std::uint32_t mask = (1u << size) - 1u;
    const std::uint32_t limit = 1u << edge_total;
    while (mask < limit) {
        fn(mask);
        std::uint32_t low = mask & (~mask + 1u);
        std::uint32_t ripple = mask + low;
        mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
}

// Returns component roots when the edge subset is acyclic, empty otherwise.
bool acyclic_components(const Graph& g, std::uint32_t mask, UnionFind& uf) {
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(mask & (1u << e))) continue;
        if (!uf.unite(g.edges[e].first, g.edges[e].second)) return false;
    }
    return true;
}

// det L(i,j); at n == 2 this is the empty determinant, 1.
double det_minor_pair(const Matrix& lap, int i, int j) {
    return determinant(with_rows_cols_removed(lap, {i, j}));
}

std::int64_t tree_count_enumerate(const Graph& g) {
    require_enumerable(g);
    std::int64_t count = 0;
    for_each_edge_subset(g.edge_count(), g.n - 1, [&](std::uint32_t mask) {
        UnionFind uf(g.n);
        if (acyclic_components(g, mask, uf)) ++count;
    });
    return count;
}

} // namespace

std::int64_t spanning_tree_count(const Graph& g, TreeCountMethod method) {
    if (g.n == 1) return 1;
    switch (method) {
        case TreeCountMethod::eigen: {
            EigenPairs ep = sym_eigen(laplacian(g));
            if (count_zero_eigenvalues(ep.values) != 1)
                throw InternalError(
                    "connected-graph Laplacian must have exactly one zero eigenvalue");
            double product = 1.0;
            for (int k = 0; k < g.n - 1; ++k) product *= ep.values[k];
            return round_to_count(product / static_cast<double>(g.n));
        }
        case TreeCountMethod::det:
            return round_to_count(principal_minor(laplacian(g), {0}));
        case TreeCountMethod::enumerate:
            return tree_count_enumerate(g);
    }
    throw DomainError("unknown tree count method");
}

std::int64_t two_forest_count(const Graph& g, int i, int j,
                              ForestCountMethod method) {
    if (i < 0 || i >= g.n || j < 0 || j >= g.n)
        throw DomainError("vertex out of range");
    if (i == j) throw DomainError("two-forest count needs distinct vertices");

    if (method == ForestCountMethod::det)
        return round_to_count(det_minor_pair(laplacian(g), i, j));

    require_enumerable(g);
    std::int64_t count = 0;
    for_each_edge_subset(g.edge_count(), g.n - 2, [&](std::uint32_t mask) {
        UnionFind uf(g.n);
        if (acyclic_components(g, mask, uf) && uf.find(i) != uf.find(j)) ++count;
    });
    return count;
}

CountMatrix two_forest_matrix(const Graph& g) {
    Matrix lap = laplacian(g);
    CountMatrix s = CountMatrix::Zero(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            s(i, j) = round_to_count(det_minor_pair(lap, i, j));
            s(j, i) = s(i, j);
        }
    }
    return s;
}

CountMatrix two_forest_matrix_enumerate(const Graph& g) {
    require_enumerable(g);
    CountMatrix s = CountMatrix::Zero(g.n, g.n);
    std::vector<int> side_a, side_b;
    for_each_edge_subset(g.edge_count(), g.n - 2, [&](std::uint32_t mask) {
        UnionFind uf(g.n);
        if (!acyclic_components(g, mask, uf)) return;
        // n-2 acyclic edges on n vertices leave exactly two components
        side_a.clear();
        side_b.clear();
        int root = uf.find(0);
        for (int v = 0; v < g.n; ++v)
            (uf.find(v) == root ? side_a : side_b).push_back(v);
        for (int a : side_a) {
            for (int b : side_b) {
                ++s(a, b);
                ++s(b, a);
            }
        }
    });
    return s;
}

std::int64_t two_forest_total(const Graph& g) {
    if (g.n == 1) return 0;
    require_enumerable(g);
    std::int64_t count = 0;
    for_each_edge_subset(g.edge_count(), g.n - 2, [&](std::uint32_t mask) {
        UnionFind uf(g.n);
        if (acyclic_components(g, mask, uf)) ++count;
    });
    return count;
}

ForestReport forest_identities(const Graph& g) {
    ForestReport report;
    report.tree_count = spanning_tree_count(g, TreeCountMethod::det);
    report.two_forest = two_forest_matrix(g);

    ResistanceMatrix r = resistance_matrix(g, ResistanceMethod::eigen);
    Vector rs = row_sums(r);
    double kf = 0.5 * rs.sum();
    const double t = static_cast<double>(report.tree_count);

    double pair_sum = 0.5 * static_cast<double>(report.two_forest.sum());
    report.pair_identity_residual = std::abs(pair_sum - t * kf);

    report.rowsum_identity_residual = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double row = static_cast<double>(report.two_forest.row(i).sum());
        report.rowsum_identity_residual =
            std::max(report.rowsum_identity_residual, std::abs(row - t * rs[i]));
    }
    return report;
}

} // namespace resmat
