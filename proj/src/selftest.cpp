#include "resmat/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "resmat/block.hpp"
#include "resmat/corpus.hpp"
#include "resmat/errors.hpp"
#include "resmat/forests.hpp"
#include "resmat/format.hpp"
#include "resmat/graph.hpp"
#include "resmat/linalg.hpp"
#include "resmat/regularity.hpp"
#include "resmat/resistance.hpp"

namespace resmat {

namespace {

// Accumulates the worst deviation and the first failure for one check.
struct Check {
    double worst = 0.0;
    std::string failure;

    void observe(double dev, double limit, const std::string& where) {
        worst = std::max(worst, dev);
        if (dev > limit && failure.empty())
            failure = where + ": deviation " + g9(dev) + " exceeds " + g9(limit);
    }
    void require(bool ok, const std::string& where) {
        if (!ok && failure.empty()) failure = where;
    }
};

struct Harness {
    std::vector<CheckResult> results;

    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        Check check;
        try {
            fn(check);
        } catch (const std::exception& e) {
            if (check.failure.empty()) check.failure = e.what();
        }
        results.push_back(
            {name, check.failure.empty(), check.worst, check.failure});
    }
};

bool connected_without(const Graph& g, int skip) {
    if (g.n <= 2) return true;
    int start = skip == 0 ? 1 : 0;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj[v]) {
            if (w == skip || seen[w]) continue;
            seen[w] = 1;
            ++count;
            stack.push_back(w);
        }
    }
    return count == g.n - 1;
}

// Component labels of g with vertex `skip` removed; skip gets label -1.
std::vector<int> components_without(const Graph& g, int skip) {
    std::vector<int> label(g.n, -1);
    int next = 0;
    for (int s = 0; s < g.n; ++s) {
        if (s == skip || label[s] >= 0) continue;
        label[s] = next;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.adj[v]) {
                if (w == skip || label[w] >= 0) continue;
                label[w] = next;
                stack.push_back(w);
            }
        }
        ++next;
    }
    return label;
}

std::vector<double> elementary_symmetric(const Vector& values) {
    std::vector<double> e(values.size() + 1, 0.0);
    e[0] = 1.0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        for (Eigen::Index s = i; s >= 0; --s) e[s + 1] += e[s] * values[i];
    return e;
}

std::int64_t rounded_count(double v, Check& check, const std::string& where) {
    double nearest = std::round(v);
    check.observe(std::abs(v - nearest), 1e-6 * std::max(1.0, std::abs(v)),
                  where);
    return static_cast<std::int64_t>(nearest);
}

double penrose_deviation(const Matrix& m, const Matrix& p) {
    Matrix mp = m * p, pm = p * m;
    double dev = max_abs(mp * m - m);
    dev = std::max(dev, max_abs(pm * p - p));
    dev = std::max(dev, max_abs(Matrix(mp.transpose()) - mp));
    dev = std::max(dev, max_abs(Matrix(pm.transpose()) - pm));
    return dev;
}

Matrix scalar_block(double v) { return Matrix::Constant(1, 1, v); }

void graph_checks(Harness& h, const std::vector<NamedGraph>& corpus) {
    h.run("laplacian-row-sums-vanish", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            Matrix lap = laplacian(g);
            c.observe(lap.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12, name);
            c.require(is_symmetric(lap), name + ": Laplacian not symmetric");
        }
    });

    h.run("degree-sum-is-twice-edges", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            int total = 0;
            for (int v = 0; v < g.n; ++v) total += g.degree(v);
            c.require(total == 2 * g.edge_count(), name);
        }
    });

    h.run("cut-vertices-match-deletion-test", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            std::vector<int> brute;
            for (int v = 0; v < g.n; ++v)
                if (!connected_without(g, v)) brute.push_back(v);
            c.require(brute == cut_vertices(g), name);
        }
    });
}

void linalg_checks(Harness& h, const std::vector<NamedGraph>& corpus) {
    h.run("pinv-penrose-conditions", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            Matrix lap = laplacian(g);
            for (auto method : {PinvMethod::eigen, PinvMethod::shift}) {
                Matrix p = moore_penrose(lap, method);
                c.observe(penrose_deviation(lap, p), 1e-8, name);
            }
        }
    });

    h.run("pinv-methods-agree", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            Matrix lap = laplacian(g);
            c.observe(max_abs(moore_penrose(lap, PinvMethod::eigen) -
                              moore_penrose(lap, PinvMethod::shift)),
                      1e-8, name);
        }
    });

    h.run("pinv-ones-identities", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            const int n = g.n;
            Matrix lap = laplacian(g);
            Matrix p = moore_penrose(lap, PinvMethod::shift);
            Matrix jn = Matrix::Constant(n, n, 1.0 / n);
            c.observe(max_abs(p * Matrix::Ones(n, 1)), 1e-8, name + ": P*1");
            c.observe(max_abs(Matrix::Ones(1, n) * p), 1e-8, name + ": 1'*P");
            c.observe(max_abs(lap * p - (Matrix::Identity(n, n) - jn)), 1e-8,
                      name + ": LP");
            c.observe(max_abs(p * lap - (Matrix::Identity(n, n) - jn)), 1e-8,
                      name + ": PL");
        }
    });

    h.run("shifted-laplacian-spectrum", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            const int n = g.n;
            Matrix lap = laplacian(g);
            EigenPairs base = sym_eigen(lap);
            for (double a : {1.0 / n, 1.0}) {
                Vector shifted =
                    sym_eigen(lap + Matrix::Constant(n, n, a)).values;
                std::vector<double> expected(base.values.data(),
                                             base.values.data() + n - 1);
                expected.push_back(n * a);
                std::sort(expected.begin(), expected.end(),
                          std::greater<double>());
                for (int i = 0; i < n; ++i)
                    c.observe(std::abs(shifted[i] - expected[i]), 1e-8, name);
            }
        }
    });

    h.run("principal-minor-sums-match-spectrum", [&](Check& c) {
        std::mt19937 rng(777);
        std::uniform_real_distribution<double> entry(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 2 + trial % 5;
            Matrix m(n, n);
            for (int i = 0; i < n; ++i) {
                m(i, i) = entry(rng);
                for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = entry(rng);
            }
            auto e = elementary_symmetric(sym_eigen(m).values);
            for (int order : {1, n - 1, n}) {
                if (order < 1) continue;
                double sum = 0.0, scale = 1.0;
                std::vector<char> pick(n, 0);
                std::fill(pick.begin(), pick.begin() + order, 1);
                do {
                    std::vector<int> removed;
                    for (int i = 0; i < n; ++i)
                        if (!pick[i]) removed.push_back(i);
                    double minor = order == n ? determinant(m)
                                              : principal_minor(m, removed);
                    sum += minor;
                    scale += std::abs(minor);
                } while (std::prev_permutation(pick.begin(), pick.end()));
                c.observe(std::abs(sum - e[order]), 1e-9 * scale,
                          "trial " + std::to_string(trial) + " order " +
                              std::to_string(order));
            }
        }
    });

    h.run("laplacian-submatrix-inverse-nonnegative", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            if (g.n > 6 || g.n < 2) continue;
            Matrix lap = laplacian(g);
            std::vector<std::vector<int>> removals;
            for (int v = 0; v < g.n; ++v) removals.push_back({v});
            if (g.n > 2)
                for (int v = 0; v < g.n; ++v)
                    for (int w = v + 1; w < g.n; ++w) removals.push_back({v, w});
            for (const auto& removed : removals) {
                Matrix inv = inverse(with_rows_cols_removed(lap, removed));
                if (inv.size() > 0)
                    c.observe(std::max(0.0, -inv.minCoeff()), 1e-10, name);
            }
        }
    });
}

void resistance_checks(Harness& h, const std::vector<NamedGraph>& corpus) {
    h.run("resistance-methods-agree", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            Matrix a = resistance_matrix(g, ResistanceMethod::eigen).values;
            Matrix b = resistance_matrix(g, ResistanceMethod::pinv).values;
            Matrix d = resistance_matrix(g, ResistanceMethod::det).values;
            c.observe(max_abs(a - b), 1e-8, name + ": eigen vs pinv");
            c.observe(max_abs(a - d), 1e-8, name + ": eigen vs det");
            c.observe(max_abs(b - d), 1e-8, name + ": pinv vs det");
        }
    });

    h.run("resistance-triangle-inequality", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            ResistanceMatrix r = resistance_matrix(g);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    for (int k = 0; k < g.n; ++k)
                        c.observe(std::max(0.0, r(i, k) - r(i, j) - r(j, k)),
                                  1e-9, name);
        }
    });

    h.run("cut-vertex-resistance-additivity", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            std::vector<int> cuts = cut_vertices(g);
            if (cuts.empty()) continue;
            ResistanceMatrix r = resistance_matrix(g);
            for (int cut : cuts) {
                std::vector<int> label = components_without(g, cut);
                for (int i = 0; i < g.n; ++i) {
                    if (i == cut) continue;
                    for (int j = i + 1; j < g.n; ++j) {
                        if (j == cut || label[i] == label[j]) continue;
                        c.observe(std::abs(r(i, j) - r(i, cut) - r(cut, j)),
                                  1e-9, name);
                    }
                }
            }
        }
    });

    h.run("resistance-row-sum-theorem", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            const double n = g.n;
            ResistanceMatrix r = resistance_matrix(g);
            Vector rs = row_sums(r);
            double kf = kirchhoff_index(g);
            Matrix p = moore_penrose(laplacian(g), PinvMethod::shift);
            for (int i = 0; i < g.n; ++i)
                c.observe(std::abs(rs[i] - (kf / n + n * p(i, i))), 1e-8, name);
            c.observe(std::abs(rs.sum() - 2.0 * kf), 1e-8, name + ": total");
        }
    });

    h.run("foster-edge-resistance-sum", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            ResistanceMatrix r = resistance_matrix(g);
            double total = 0.0;
            for (auto [i, j] : g.edges) total += r(i, j);
            c.observe(std::abs(total - (g.n - 1)), 1e-8, name);
        }
    });

    h.run("lplus-recovered-from-resistance", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            Matrix recovered =
                lplus_from_resistance(resistance_matrix(g).values);
            Matrix direct = moore_penrose(laplacian(g), PinvMethod::shift);
            c.observe(max_abs(recovered - direct), 1e-8, name);
        }
    });

    h.run("cofactor-resistance-identity", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            double t =
                static_cast<double>(spanning_tree_count(g, TreeCountMethod::det));
            c.observe(cofactor_identity_residual(g), 1e-6 * t * g.n, name);
        }
    });

    h.run("named-resistance-values", [&](Check& c) {
        ResistanceMatrix k3 = resistance_matrix(complete_graph(3));
        c.observe(std::abs(k3(0, 1) - 2.0 / 3.0), 1e-9, "K3 edge");
        ResistanceMatrix p3 = resistance_matrix(path_graph(3));
        c.observe(std::abs(p3(0, 1) - 1.0), 1e-9, "P3 edge");
        c.observe(std::abs(p3(0, 2) - 2.0), 1e-9, "P3 ends");
        ResistanceMatrix c4 = resistance_matrix(cycle_graph(4));
        c.observe(std::abs(c4(0, 1) - 0.75), 1e-9, "C4 adjacent");
        c.observe(std::abs(c4(0, 2) - 1.0), 1e-9, "C4 opposite");
        ResistanceMatrix pet = resistance_matrix(petersen_graph());
        c.observe(std::abs(pet(0, 1) - 0.6), 1e-9, "petersen adjacent");
        c.observe(std::abs(pet(0, 7) - 0.8), 1e-9, "petersen non-adjacent");
        c.observe(std::abs(kirchhoff_index(complete_graph(3)) - 2.0), 1e-8,
                  "Kf K3");
        c.observe(std::abs(kirchhoff_index(path_graph(3)) - 4.0), 1e-8,
                  "Kf P3");
        c.observe(std::abs(kirchhoff_index(cycle_graph(4)) - 5.0), 1e-8,
                  "Kf C4");
        c.observe(std::abs(kirchhoff_index(petersen_graph()) - 33.0), 1e-8,
                  "Kf petersen");
        Vector rs = row_sums(p3);
        c.observe(std::abs(rs[0] - 3.0) + std::abs(rs[1] - 2.0) +
                      std::abs(rs[2] - 3.0),
                  1e-9, "P3 row sums");
    });
}

void forest_checks(Harness& h, const std::vector<NamedGraph>& corpus) {
    h.run("tree-count-methods-agree", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            std::int64_t by_det = spanning_tree_count(g, TreeCountMethod::det);
            std::int64_t by_eigen = spanning_tree_count(g, TreeCountMethod::eigen);
            c.require(by_det == by_eigen, name + ": det vs eigen");
            if (g.edge_count() <= 25)
                c.require(by_det ==
                              spanning_tree_count(g, TreeCountMethod::enumerate),
                          name + ": det vs enumeration");
        }
    });

    h.run("tree-count-vertex-independent", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            if (g.n < 2) continue;
            Matrix lap = laplacian(g);
            std::int64_t first = rounded_count(principal_minor(lap, {0}), c, name);
            for (int v = 1; v < g.n; ++v)
                c.require(rounded_count(principal_minor(lap, {v}), c, name) ==
                              first,
                          name + ": det L(v) varies with v");
        }
    });

    h.run("two-forest-det-vs-enumeration", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            if (g.edge_count() > 25) continue;
            CountMatrix det = two_forest_matrix(g);
            CountMatrix brute = two_forest_matrix_enumerate(g);
            c.require((det.array() == brute.array()).all(), name);
        }
    });

    h.run("forest-counting-identities", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            ForestReport report = forest_identities(g);
            double t = static_cast<double>(report.tree_count);
            c.observe(report.pair_identity_residual, 1e-6 * std::max(1.0, t),
                      name + ": pair sum");
            c.observe(report.rowsum_identity_residual, 1e-6 * std::max(1.0, t),
                      name + ": row sum");
        }
    });

    h.run("two-forest-ratio-gives-resistance", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            CountMatrix s = two_forest_matrix(g);
            double t =
                static_cast<double>(spanning_tree_count(g, TreeCountMethod::det));
            ResistanceMatrix r = resistance_matrix(g);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    c.observe(std::abs(static_cast<double>(s(i, j)) / t - r(i, j)),
                              1e-9, name);
        }
    });

    h.run("named-forest-counts", [&](Check& c) {
        c.require(spanning_tree_count(complete_graph(3)) == 3, "t(K3)");
        c.require(spanning_tree_count(cycle_graph(4)) == 4, "t(C4)");
        c.require(spanning_tree_count(complete_graph(4)) == 16, "t(K4)");
        c.require(spanning_tree_count(complete_graph(6)) == 1296, "t(K6)");
        c.require(spanning_tree_count(path_graph(8)) == 1, "t(P8)");
        c.require(spanning_tree_count(petersen_graph()) == 2000, "t(petersen)");
        c.require(two_forest_count(cycle_graph(4), 0, 2) == 4, "s(C4 opposite)");
        c.require(two_forest_count(cycle_graph(4), 0, 1) == 3, "s(C4 adjacent)");
        c.require(two_forest_count(path_graph(3), 0, 2) == 2, "s(P3 ends)");
        c.require(two_forest_count(complete_graph(3), 0, 1) == 2, "s(K3)");
        c.require(two_forest_total(cycle_graph(4)) == 6, "distinct 2-forests C4");
    });
}

void regularity_checks(Harness& h, const std::vector<NamedGraph>& corpus) {
    h.run("regularity-criteria-consistent", [&](Check& c) {
        // regularity_report throws if any of the ten criteria disagree, so
        // the content of the check is that it runs everywhere.
        for (const auto& [name, g] : corpus) {
            RegularityReport report = regularity_report(g);
            if (report.regular) {
                Vector rs = report.resistance_row_sums;
                c.observe(rs.maxCoeff() - rs.minCoeff(),
                          1e-9 * std::max(1.0, report.constant),
                          name + ": row sums of a regular graph");
            }
        }
    });

    h.run("named-regularity-verdicts", [&](Check& c) {
        for (int n = 2; n <= 6; ++n)
            c.require(regularity_report(complete_graph(n)).regular,
                      "K" + std::to_string(n));
        for (int n = 3; n <= 8; ++n)
            c.require(regularity_report(cycle_graph(n)).regular,
                      "C" + std::to_string(n));
        c.require(regularity_report(petersen_graph()).regular, "petersen");
        c.require(!regularity_report(path_graph(3)).regular, "P3");
        c.require(!regularity_report(star_graph(3)).regular, "K1,3");
        c.require(!regularity_report(bowtie_graph()).regular, "bowtie");
        c.require(!regularity_report(paw_graph()).regular, "paw");

        RegularityReport p3 = regularity_report(path_graph(3));
        c.require(p3.cut_vertices == std::vector<int>{1},
                  "P3 cut vertex pre-check");
        Vector rs = p3.resistance_row_sums;
        c.observe(std::abs(rs[0] - 3.0) + std::abs(rs[1] - 2.0) +
                      std::abs(rs[2] - 3.0),
                  1e-9, "P3 row sums");
    });

    h.run("cut-vertex-implies-irregular", [&](Check& c) {
        for (const auto& [name, g] : corpus)
            if (!cut_vertices(g).empty())
                c.require(!regularity_report(g).regular, name);
    });

    h.run("regular-lplus-diagonal-dominance", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            if (g.n < 2 || !regularity_report(g).regular) continue;
            Matrix p = moore_penrose(laplacian(g), PinvMethod::shift);
            double min_diag = p.diagonal().minCoeff();
            double max_off = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    if (i != j) max_off = std::max(max_off, p(i, j));
            c.require(min_diag > max_off - 1e-10, name);
        }
    });

    h.run("equiarboreal-regular-iff-degree-regular", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            if (g.edge_count() == 0) continue;
            EquiarborealReport eq = is_equiarboreal(g);
            if (!eq.equiarboreal) continue;
            bool degree_regular = true;
            for (int v = 1; v < g.n; ++v)
                if (g.degree(v) != g.degree(0)) degree_regular = false;
            c.require(regularity_report(g).regular == degree_regular, name);
        }
        c.require(is_equiarboreal(complete_graph(4)).equiarboreal, "K4");
        c.observe(std::abs(is_equiarboreal(complete_graph(4)).common_resistance -
                           0.5),
                  1e-9, "K4 common resistance");
        c.require(is_equiarboreal(path_graph(3)).equiarboreal, "P3 (tree)");
        c.require(!is_equiarboreal(paw_graph()).equiarboreal, "paw");
    });

    h.run("regular-two-forest-lplus-relation", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            RegularityReport report = regularity_report(g);
            if (!report.regular || g.n < 2) continue;
            Matrix p = moore_penrose(laplacian(g), PinvMethod::shift);
            CountMatrix s = two_forest_matrix(g);
            double t =
                static_cast<double>(spanning_tree_count(g, TreeCountMethod::det));
            double k_over_n = report.constant / g.n;
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    c.observe(std::abs(p(i, j) -
                                       0.5 * (k_over_n -
                                              static_cast<double>(s(i, j)) / t)),
                              1e-8, name);
        }
    });

    h.run("bottleneck-matrix-properties", [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            if (g.n < 2) continue;
            ResistanceMatrix r = resistance_matrix(g);
            for (int v = 0; v < g.n; ++v) {
                BottleneckMatrix b = bottleneck_matrix(g, v);
                std::vector<int> rest;
                for (int w = 0; w < g.n; ++w)
                    if (w != v) rest.push_back(w);
                for (std::size_t a = 0; a < rest.size(); ++a) {
                    for (std::size_t d = 0; d < rest.size(); ++d) {
                        double expected =
                            0.5 * (r(rest[a], v) + r(rest[d], v) -
                                   r(rest[a], rest[d]));
                        c.observe(std::abs(b.values(a, d) - expected), 1e-8,
                                  name);
                    }
                }
            }
        }
    });
}

void block_checks(Harness& h, const std::vector<NamedMWGraph>& mw,
                  const std::vector<NamedMWGraph>& trees,
                  const std::vector<NamedGraph>& corpus) {
    h.run("block-pinv-penrose-conditions", [&](Check& c) {
        for (const auto* group : {&mw, &trees}) {
            for (const auto& [name, g] : *group) {
                const int n = g.graph.n, k = g.block_order;
                Matrix lap = block_laplacian(g).dense();
                BlockPseudoinverse pinv = block_pinv(g);
                c.observe(penrose_deviation(lap, pinv.lplus.dense()), 1e-8, name);
                Matrix expected = Matrix::Identity(n * k, n * k) -
                                  ones_blocks(n, k) / static_cast<double>(n);
                c.observe(max_abs(lap * pinv.lplus.dense() - expected), 1e-8,
                          name + ": LL+");
            }
        }
    });

    h.run("block-x-column-sums-are-identity", [&](Check& c) {
        for (const auto& [name, g] : mw) {
            const int n = g.graph.n, k = g.block_order;
            BlockMatrix x = block_pinv(g).x;
            for (int j = 0; j < n; ++j) {
                Matrix sum = Matrix::Zero(k, k);
                for (int i = 0; i < n; ++i) sum += x.block(i, j);
                c.observe(max_abs(sum - Matrix::Identity(k, k)), 1e-8, name);
            }
        }
    });

    h.run("block-lr-product-identity", [&](Check& c) {
        for (const auto* group : {&mw, &trees})
            for (const auto& [name, g] : *group)
                c.observe(lr_identity_residual(g), 1e-7, name);
    });

    h.run("block-tau-sums-to-2i", [&](Check& c) {
        for (const auto* group : {&mw, &trees}) {
            for (const auto& [name, g] : *group) {
                const int k = g.block_order;
                std::vector<Matrix> taus = tau(g);
                Matrix total = Matrix::Zero(k, k);
                for (const Matrix& t : taus) total += t;
                c.observe(max_abs(total - 2.0 * Matrix::Identity(k, k)), 1e-7,
                          name);
            }
        }
    });

    h.run("block-kirchhoff-routes-agree", [&](Check& c) {
        // block_kirchhoff throws when its two formulas disagree.
        for (const auto* group : {&mw, &trees}) {
            for (const auto& [name, g] : *group) {
                Matrix kf = block_kirchhoff(g);
                c.observe(max_abs(kf - kf.transpose()), 1e-10,
                          name + ": symmetry");
            }
        }
    });

    h.run("block-rank-deficiency-is-k", [&](Check& c) {
        for (const auto* group : {&mw, &trees}) {
            for (const auto& [name, g] : *group) {
                EigenPairs ep = sym_eigen(block_laplacian(g).dense());
                c.require(count_zero_eigenvalues(ep.values) == g.block_order,
                          name);
            }
        }
    });

    h.run("block-tree-resistance-is-path-weight-sum", [&](Check& c) {
        for (const auto& [name, g] : trees) {
            const int n = g.graph.n, k = g.block_order;
            BlockMatrix r = block_resistance(g);
            // parent pointers from vertex 0 give the unique tree paths
            std::vector<int> parent(n, -1), order;
            std::vector<char> seen(n, 0);
            order.push_back(0);
            seen[0] = 1;
            for (std::size_t at = 0; at < order.size(); ++at) {
                int v = order[at];
                for (int w : g.graph.adj[v]) {
                    if (seen[w]) continue;
                    seen[w] = 1;
                    parent[w] = v;
                    order.push_back(w);
                }
            }
            std::vector<int> depth(n, 0);
            for (std::size_t at = 1; at < order.size(); ++at)
                depth[order[at]] = depth[parent[order[at]]] + 1;

            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    Matrix sum = Matrix::Zero(k, k);
                    int a = i, b = j;
                    while (a != b) {
                        if (depth[a] < depth[b]) std::swap(a, b);
                        sum += g.weight(a, parent[a]);
                        a = parent[a];
                    }
                    c.observe(max_abs(Matrix(r.block(i, j)) - sum),
                              1e-8 * std::max(1.0, max_abs(sum)), name);
                }
            }
        }
    });

    h.run("block-tree-one-inverse-routes", [&](Check& c) {
        for (const auto& [name, g] : trees) {
            const int n = g.graph.n, k = g.block_order;
            Matrix lap = block_laplacian(g).dense();
            BlockMatrix g1 = tree_one_inverse(g);
            c.observe(max_abs(lap * g1.dense() * lap - lap),
                      1e-8 * std::max(1.0, max_abs(lap)), name + ": LGL=L");
            if (n > 1) {
                c.require(max_abs(g1.dense().bottomRows(k)) == 0.0,
                          name + ": last block row not zero");
                c.require(max_abs(g1.dense().rightCols(k)) == 0.0,
                          name + ": last block column not zero");
            }
            c.observe(max_abs(block_resistance_via_one_inverse(g).dense() -
                              block_resistance(g).dense()),
                      1e-8, name + ": resistance route");
        }
    });

    h.run("block-k1-unit-weights-match-scalar-module", [&](Check& c) {
        int used = 0;
        for (const auto& [name, g] : corpus) {
            if (g.n > 7) continue;
            if (++used > 40) break;
            std::vector<Matrix> unit(g.edges.size(), scalar_block(1.0));
            MWGraph lifted = make_mwgraph(g, 1, unit);
            c.observe(max_abs(block_laplacian(lifted).dense() - laplacian(g)),
                      1e-12, name + ": laplacian");
            c.observe(max_abs(block_pinv(lifted).lplus.dense() -
                              moore_penrose(laplacian(g), PinvMethod::shift)),
                      1e-9, name + ": pinv");
            c.observe(max_abs(block_resistance(lifted).dense() -
                              resistance_matrix(g).values),
                      1e-9, name + ": resistance");
            c.observe(std::abs(block_kirchhoff(lifted)(0, 0) -
                               kirchhoff_index(g)),
                      1e-9, name + ": kirchhoff");
        }
    });

    h.run("block-reconstruct-roundtrip", [&](Check& c) {
        for (const auto& [name, g] : trees) {
            MWGraph rec = reconstruct_tree(block_resistance(g));
            c.require(rec.graph.edges == g.graph.edges, name + ": edge set");
            c.require(rec.block_order == g.block_order, name + ": block order");
            for (std::size_t e = 0; e < g.weights.size(); ++e)
                c.observe(max_abs(rec.weights[e] - g.weights[e]),
                          1e-6 * std::max(1.0, max_abs(g.weights[e])),
                          name + ": weights");
        }
    });

    h.run("block-reconstruct-rejects-non-tree-input", [&](Check& c) {
        Graph c4 = cycle_graph(4);
        BlockMatrix r(4, 1, resistance_matrix(c4).values);
        bool threw = false;
        try {
            reconstruct_tree(r);
        } catch (const DomainError&) {
            threw = true;
        }
        c.require(threw, "cycle resistance accepted as a tree");

        Matrix bad = Matrix::Zero(2, 2);
        bad(0, 1) = 1.0;
        bad(1, 0) = 2.0;
        threw = false;
        try {
            reconstruct_tree(BlockMatrix(2, 1, bad));
        } catch (const DomainError&) {
            threw = true;
        }
        c.require(threw, "asymmetric matrix accepted");
    });

    h.run("block-reconstruct-worked-example", [&](Check& c) {
        Matrix r(3, 3);
        r << 0, 2, 7, 2, 0, 5, 7, 5, 0;
        MWGraph rec = reconstruct_tree(BlockMatrix(3, 1, r));
        c.require(rec.graph.edges ==
                      std::vector<std::pair<int, int>>{{0, 1}, {1, 2}},
                  "edge set");
        c.observe(std::abs(rec.weights[0](0, 0) - 2.0), 1e-9, "weight 1-2");
        c.observe(std::abs(rec.weights[1](0, 0) - 5.0), 1e-9, "weight 2-3");
        c.require(format_mwgraph(rec) == "3 2 1\n1 2\n2\n2 3\n5\n",
                  "formatted output");
    });

    h.run("block-algebra-identities", [&](Check& c) {
        std::mt19937 rng(4242);
        std::uniform_real_distribution<double> entry(-2.0, 2.0);
        const int n = 3, k = 2;
        Matrix dense(n * k, n * k);
        for (int i = 0; i < n * k; ++i)
            for (int j = 0; j < n * k; ++j) dense(i, j) = entry(rng);
        BlockMatrix a(n, k, dense);

        c.require(max_abs(block_transpose(block_transpose(a)).dense() -
                          a.dense()) == 0.0,
                  "block transpose is not an involution");
        BlockMatrix ones(n, k, ones_blocks(n, k));
        c.require(max_abs(boxtimes(a, ones).dense() - a.dense()) == 0.0,
                  "identity blocks are not neutral for boxtimes");

        Matrix total = Matrix::Zero(k, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) total += a.block(i, j);
        c.require(max_abs(block_total(a) - total) == 0.0, "block total mismatch");

        MWGraph single =
            make_mwgraph(path_graph(2), 2, {random_pd_matrix(2, rng)});
        BlockMatrix lr = boxtimes(block_laplacian(single),
                                  block_resistance(single));
        c.observe(max_abs(Matrix(lr.block(0, 0))), 1e-10, "single edge (0,0)");
        c.observe(max_abs(Matrix(lr.block(0, 1)) + Matrix::Identity(2, 2)),
                  1e-10, "single edge (0,1)");
        c.observe(max_abs(block_resistance(single).block(0, 1) -
                          single.weights[0]),
                  1e-10, "single edge resistance is the weight");
        std::vector<Matrix> t = tau(single);
        c.observe(max_abs(t[0] - Matrix::Identity(2, 2)), 1e-10,
                  "single edge tau");
    });

    h.run("mwgraph-format-roundtrip", [&](Check& c) {
        for (const auto* group : {&mw, &trees}) {
            int used = 0;
            for (const auto& [name, g] : *group) {
                if (++used > 10) break;
                MWGraph back = parse_mwgraph(format_mwgraph(g));
                c.require(back.graph.edges == g.graph.edges, name + ": edges");
                for (std::size_t e = 0; e < g.weights.size(); ++e)
                    c.observe(max_abs(back.weights[e] - g.weights[e]),
                              1e-7 * std::max(1.0, max_abs(g.weights[e])),
                              name + ": weights");
            }
        }
    });
}

} // namespace

std::vector<CheckResult> run_selftest() {
    const std::vector<NamedGraph> corpus = standard_corpus();
    const std::vector<NamedMWGraph> mw = mw_corpus();
    const std::vector<NamedMWGraph> trees = mw_tree_corpus();

    Harness h;
    graph_checks(h, corpus);
    linalg_checks(h, corpus);
    resistance_checks(h, corpus);
    forest_checks(h, corpus);
    regularity_checks(h, corpus);
    block_checks(h, mw, trees, corpus);
    return h.results;
}

bool print_selftest(std::ostream& os, const std::vector<CheckResult>& results) {
    int passed = 0;
    for (const auto& r : results) {
        os << "check " << r.name << ' ' << (r.pass ? "PASS" : "FAIL")
           << " max_dev " << g9(r.deviation);
        if (!r.detail.empty()) os << " (" << r.detail << ')';
        os << '\n';
        if (r.pass) ++passed;
    }
    os << "selftest " << passed << '/' << results.size() << " passed\n";
    return passed == static_cast<int>(results.size());
}

} // namespace resmat
