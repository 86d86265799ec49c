// Acceptance gate: ten pinned criteria over the built-in corpora, one
// pass/fail line each. Exits 0 only when every criterion holds. Expects
// the CLI binary path as argv[1] (used by the determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "resmat/block.hpp"
#include "resmat/corpus.hpp"
#include "resmat/errors.hpp"
#include "resmat/forests.hpp"
#include "resmat/format.hpp"
#include "resmat/graph.hpp"
#include "resmat/linalg.hpp"
#include "resmat/regularity.hpp"
#include "resmat/resistance.hpp"

using namespace resmat;

namespace {

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

struct Gate {
    int passed = 0;
    int total = 0;

    template <typename Fn>
    void criterion(const std::string& name, double time_cap_seconds, Fn&& fn) {
        ++total;
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            fn(check);
        } catch (const std::exception& e) {
            if (check.failure.empty()) check.failure = e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (time_cap_seconds > 0.0 && seconds > time_cap_seconds &&
            check.failure.empty())
            check.failure = "runtime " + g9(seconds) + "s exceeds cap " +
                            g9(time_cap_seconds) + "s";

        bool ok = check.failure.empty();
        if (ok) ++passed;
        std::printf("[%2d] %s %-34s max_dev=%s time=%.2fs%s%s\n", total,
                    ok ? "PASS" : "FAIL", name.c_str(),
                    g9(check.worst).c_str(), seconds,
                    ok ? "" : " ", check.failure.c_str());
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli_path = argc > 1 ? argv[1] : "";

    const std::vector<NamedGraph> corpus = standard_corpus();
    const std::vector<NamedMWGraph> mw = mw_corpus();
    const std::vector<NamedMWGraph> mw_trees = mw_tree_corpus();

    Gate gate;

    gate.criterion("resistance-method-agreement", 10.0, [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            Matrix a = resistance_matrix(g, ResistanceMethod::eigen).values;
            Matrix b = resistance_matrix(g, ResistanceMethod::pinv).values;
            Matrix d = resistance_matrix(g, ResistanceMethod::det).values;
            c.observe(max_abs(a - b), 1e-8, name + " eigen/pinv");
            c.observe(max_abs(a - d), 1e-8, name + " eigen/det");
        }
    });

    gate.criterion("resistance-row-sum-theorem", 0.0, [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            Vector rs = row_sums(resistance_matrix(g));
            double kf = kirchhoff_index(g);
            Matrix lp = moore_penrose(laplacian(g), PinvMethod::shift);
            for (int i = 0; i < g.n; ++i)
                c.observe(std::abs(rs[i] - (kf / g.n + g.n * lp(i, i))), 1e-8,
                          name);
        }
    });

    gate.criterion("forest-count-oracle-equivalence", 60.0, [&](Check& c) {
        int checked = 0;
        for (const auto& [name, g] : corpus) {
            if (g.edge_count() > 25) continue;
            ++checked;
            c.require(spanning_tree_count(g, TreeCountMethod::det) ==
                          spanning_tree_count(g, TreeCountMethod::enumerate),
                      name + ": t");
            c.require((two_forest_matrix(g).array() ==
                       two_forest_matrix_enumerate(g).array())
                          .all(),
                      name + ": s");
        }
        c.require(checked >= 200, "fewer than 200 enumerable graphs");
    });

    gate.criterion("forest-counting-identities", 0.0, [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            ForestReport report = forest_identities(g);
            double t = static_cast<double>(report.tree_count);
            c.observe(report.pair_identity_residual, 1e-6 * t, name + ": pairs");
            c.observe(report.rowsum_identity_residual, 1e-6 * t,
                      name + ": rows");
        }
    });

    gate.criterion("regularity-equivalence", 0.0, [&](Check& c) {
        // regularity_report throws when any two of its criteria disagree
        for (const auto& [name, g] : corpus) {
            RegularityReport report = regularity_report(g);
            if (!cut_vertices(g).empty())
                c.require(!report.regular, name + ": cut vertex but regular");
        }
        for (int n = 2; n <= 6; ++n)
            c.require(regularity_report(complete_graph(n)).regular,
                      "K" + std::to_string(n));
        for (int n = 3; n <= 8; ++n)
            c.require(regularity_report(cycle_graph(n)).regular,
                      "C" + std::to_string(n));
        c.require(regularity_report(petersen_graph()).regular, "petersen");

        RegularityReport p3 = regularity_report(path_graph(3));
        c.require(!p3.regular, "P3 classified regular");
        Vector rs = p3.resistance_row_sums;
        c.observe(std::abs(rs[0] - 3.0), 1e-9, "P3 row sum 1");
        c.observe(std::abs(rs[1] - 2.0), 1e-9, "P3 row sum 2");
        c.observe(std::abs(rs[2] - 3.0), 1e-9, "P3 row sum 3");
    });

    gate.criterion("concrete-values", 0.0, [&](Check& c) {
        for (auto method : {ResistanceMethod::eigen, ResistanceMethod::pinv,
                            ResistanceMethod::det})
            c.observe(std::abs(resistance_matrix(complete_graph(3), method)(0, 1) -
                               2.0 / 3.0),
                      1e-9, "r(K3)");
        c.observe(std::abs(kirchhoff_index(cycle_graph(4)) - 5.0), 1e-8,
                  "Kf(C4)");
        for (auto method : {TreeCountMethod::eigen, TreeCountMethod::det,
                            TreeCountMethod::enumerate})
            c.require(spanning_tree_count(complete_graph(4), method) == 16,
                      "t(K4)");
        for (auto method : {ForestCountMethod::det, ForestCountMethod::enumerate})
            c.require(two_forest_count(cycle_graph(4), 0, 2, method) == 4,
                      "s(C4 opposite)");
    });

    gate.criterion("block-weighted-identities", 30.0, [&](Check& c) {
        c.require(mw.size() >= 50, "fewer than 50 matrix-weighted graphs");
        for (const auto& [name, g] : mw) {
            const int n = g.graph.n, k = g.block_order;
            c.observe(lr_identity_residual(g), 1e-7, name + ": L boxtimes R");

            Matrix tau_sum = Matrix::Zero(k, k);
            for (const Matrix& t : tau(g)) tau_sum += t;
            c.observe(max_abs(tau_sum - 2.0 * Matrix::Identity(k, k)), 1e-7,
                      name + ": tau total");

            BlockPseudoinverse pinv = block_pinv(g);
            Matrix lap = block_laplacian(g).dense();
            Matrix expected = Matrix::Identity(n * k, n * k) -
                              ones_blocks(n, k) / static_cast<double>(n);
            c.observe(max_abs(lap * pinv.lplus.dense() - expected), 1e-8,
                      name + ": LL+");

            Matrix kf = block_kirchhoff(g);
            Matrix from_trace =
                static_cast<double>(n) * block_trace(pinv.lplus);
            c.observe(max_abs(kf - 0.5 * (from_trace + from_trace.transpose())),
                      1e-8, name + ": Kf");
        }
    });

    gate.criterion("tree-reconstruction-roundtrip", 0.0, [&](Check& c) {
        c.require(mw_trees.size() >= 50, "fewer than 50 matrix-weighted trees");
        for (const auto& [name, g] : mw_trees) {
            MWGraph rec = reconstruct_tree(block_resistance(g));
            c.require(rec.graph.edges == g.graph.edges, name + ": edge set");
            for (std::size_t e = 0; e < g.weights.size(); ++e)
                c.observe(max_abs(rec.weights[e] - g.weights[e]),
                          1e-6 * std::max(1.0, max_abs(g.weights[e])),
                          name + ": weight");
        }

        Matrix r(3, 3);
        r << 0, 2, 7, 2, 0, 5, 7, 5, 0;
        MWGraph rec = reconstruct_tree(BlockMatrix(3, 1, r));
        c.require(rec.graph.edges ==
                      std::vector<std::pair<int, int>>{{0, 1}, {1, 2}},
                  "worked example: edge set");
        c.observe(std::abs(rec.weights[0](0, 0) - 2.0), 1e-9,
                  "worked example: weight 1-2");
        c.observe(std::abs(rec.weights[1](0, 0) - 5.0), 1e-9,
                  "worked example: weight 2-3");
        c.require(format_mwgraph(rec) == "3 2 1\n1 2\n2\n2 3\n5\n",
                  "worked example: text output");
    });

    gate.criterion("k1-reduction-matches-scalar", 0.0, [&](Check& c) {
        for (const auto& [name, g] : corpus) {
            std::vector<Matrix> unit(g.edges.size(),
                                     Matrix::Constant(1, 1, 1.0));
            MWGraph lifted = make_mwgraph(g, 1, unit);
            c.observe(max_abs(block_laplacian(lifted).dense() - laplacian(g)),
                      1e-9, name + ": laplacian");
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

    gate.criterion("cli-selftest-determinism", 0.0, [&](Check& c) {
        c.require(!cli_path.empty(), "CLI path not supplied as argv[1]");
        if (cli_path.empty()) return;
        const std::string out1 = "acceptance_selftest_1.out";
        const std::string out2 = "acceptance_selftest_2.out";
        for (const std::string& out : {out1, out2}) {
            std::string cmd = "\"" + cli_path + "\" selftest > " + out + " 2>&1";
            int status = std::system(cmd.c_str());
            bool clean_exit = WIFEXITED(status) && WEXITSTATUS(status) == 0;
            c.require(clean_exit, "selftest exited nonzero");
        }
        std::string first = slurp(out1), second = slurp(out2);
        c.require(!first.empty(), "selftest produced no output");
        c.require(first == second, "selftest output differs between runs");
        c.require(first.find("FAIL") == std::string::npos,
                  "selftest reports a failing check");
    });

    std::printf("acceptance: %d/%d criteria passed\n", gate.passed, gate.total);
    return gate.passed == gate.total ? 0 : 1;
}
