#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "resmat/block.hpp"
#include "resmat/errors.hpp"
#include "resmat/forests.hpp"
#include "resmat/format.hpp"
#include "resmat/graph.hpp"
#include "resmat/regularity.hpp"
#include "resmat/resistance.hpp"
#include "resmat/selftest.hpp"

using json = nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw resmat::DomainError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json matrix_rows(const resmat::Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json matrix_rows(const resmat::CountMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_entries(const resmat::Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

resmat::ResistanceMethod parse_method(const std::string& name) {
    if (name == "eigen") return resmat::ResistanceMethod::eigen;
    if (name == "pinv") return resmat::ResistanceMethod::pinv;
    if (name == "det") return resmat::ResistanceMethod::det;
    throw resmat::DomainError("unknown method: " + name);
}

int run_resist(const std::string& path, const std::string& method_name,
               bool as_json) {
    resmat::Graph g = resmat::parse_graph(read_file(path));
    resmat::ResistanceMethod method = parse_method(method_name);
    resmat::ResistanceMatrix r = resmat::resistance_matrix(g, method);
    resmat::Vector rs = resmat::row_sums(r);
    double kf = resmat::kirchhoff_index(g);

    if (as_json) {
        json out{{"n", g.n},
                 {"m", g.edge_count()},
                 {"method", method_name},
                 {"r", matrix_rows(r.values)},
                 {"row_sums", vector_entries(rs)},
                 {"kf", kf}};
        std::cout << out.dump() << '\n';
        return 0;
    }
    std::cout << "n " << g.n << '\n' << "m " << g.edge_count() << '\n'
              << "method " << method_name << '\n';
    resmat::write_matrix(std::cout, "R", r.values);
    resmat::write_vector(std::cout, "row_sums", rs);
    std::cout << "kf " << resmat::g9(kf) << '\n';
    return 0;
}

int run_regular(const std::string& path, double tol, bool as_json) {
    resmat::Graph g = resmat::parse_graph(read_file(path));
    resmat::RegularityReport report = resmat::regularity_report(g, tol);

    if (as_json) {
        json criteria = json::array();
        for (const auto& c : report.criteria)
            criteria.push_back({{"id", std::string(1, c.id)},
                                {"name", c.name},
                                {"pass", c.pass},
                                {"max_dev", c.deviation},
                                {"witness", c.witness}});
        json cuts = json::array();
        for (int v : report.cut_vertices) cuts.push_back(v + 1);
        json out{{"n", g.n},
                 {"m", g.edge_count()},
                 {"regular", report.regular},
                 {"constant", report.constant},
                 {"kf", report.kirchhoff},
                 {"row_sums", vector_entries(report.resistance_row_sums)},
                 {"cut_vertices", cuts},
                 {"criteria", criteria}};
        std::cout << out.dump() << '\n';
        return 0;
    }

    std::cout << "n " << g.n << '\n' << "m " << g.edge_count() << '\n'
              << "regular " << (report.regular ? "true" : "false") << '\n';
    if (report.regular)
        std::cout << "constant " << resmat::g9(report.constant) << '\n';
    std::cout << "kf " << resmat::g9(report.kirchhoff) << '\n';
    resmat::write_vector(std::cout, "row_sums", report.resistance_row_sums);
    std::cout << "cut_vertices";
    if (report.cut_vertices.empty()) {
        std::cout << " none";
    } else {
        for (int v : report.cut_vertices) std::cout << ' ' << v + 1;
    }
    std::cout << '\n';
    for (const auto& c : report.criteria) {
        std::cout << "criterion " << c.id << ' ' << c.name << ' '
                  << (c.pass ? "PASS" : "FAIL") << " max_dev "
                  << resmat::g9(c.deviation);
        if (!c.witness.empty()) std::cout << " (" << c.witness << ')';
        std::cout << '\n';
    }
    return 0;
}

int run_forests(const std::string& path, bool oracle, bool as_json) {
    resmat::Graph g = resmat::parse_graph(read_file(path));
    resmat::ForestReport report = resmat::forest_identities(g);

    std::int64_t oracle_t = 0, oracle_total = 0;
    if (oracle) {
        oracle_t = resmat::spanning_tree_count(g, resmat::TreeCountMethod::enumerate);
        oracle_total = resmat::two_forest_total(g);
        resmat::CountMatrix brute = resmat::two_forest_matrix_enumerate(g);
        if (oracle_t != report.tree_count ||
            !(brute.array() == report.two_forest.array()).all())
            throw resmat::InternalError(
                "determinant counts disagree with enumeration");
    }

    if (as_json) {
        json out{{"n", g.n},
                 {"m", g.edge_count()},
                 {"t", report.tree_count},
                 {"s", matrix_rows(report.two_forest)},
                 {"pair_identity_residual", report.pair_identity_residual},
                 {"rowsum_identity_residual", report.rowsum_identity_residual}};
        if (oracle)
            out["oracle"] = {{"t", oracle_t},
                             {"two_forest_total", oracle_total},
                             {"match", true}};
        std::cout << out.dump() << '\n';
        return 0;
    }

    std::cout << "n " << g.n << '\n' << "m " << g.edge_count() << '\n'
              << "t " << report.tree_count << '\n';
    resmat::write_matrix(std::cout, "s", report.two_forest);
    std::cout << "pair_identity_residual "
              << resmat::g9(report.pair_identity_residual) << '\n'
              << "rowsum_identity_residual "
              << resmat::g9(report.rowsum_identity_residual) << '\n';
    if (oracle) {
        std::cout << "oracle_t " << oracle_t << '\n'
                  << "oracle_two_forest_total " << oracle_total << '\n'
                  << "oracle_match true\n";
    }
    return 0;
}

int run_blockresist(const std::string& path, bool as_json) {
    resmat::MWGraph g = resmat::parse_mwgraph(read_file(path));
    const int k = g.block_order;
    resmat::BlockMatrix r = resmat::block_resistance(g);
    resmat::Matrix kf = resmat::block_kirchhoff(g);
    double lr = resmat::lr_identity_residual(g);

    resmat::Matrix tau_sum = resmat::Matrix::Zero(k, k);
    for (const resmat::Matrix& t : resmat::tau(g)) tau_sum += t;
    double tau_residual =
        resmat::max_abs(tau_sum - 2.0 * resmat::Matrix::Identity(k, k));

    if (as_json) {
        json out{{"n", g.graph.n},
                 {"m", g.graph.edge_count()},
                 {"k", k},
                 {"r", matrix_rows(r.dense())},
                 {"kf", matrix_rows(kf)},
                 {"lr_residual", lr},
                 {"tau_residual", tau_residual}};
        std::cout << out.dump() << '\n';
        return 0;
    }

    std::cout << "n " << g.graph.n << '\n' << "m " << g.graph.edge_count()
              << '\n' << "k " << k << '\n';
    resmat::write_matrix(std::cout, "R", r.dense());
    resmat::write_matrix(std::cout, "kf", kf);
    std::cout << "lr_residual " << resmat::g9(lr) << '\n'
              << "tau_residual " << resmat::g9(tau_residual) << '\n';
    return 0;
}

int run_reconstruct(const std::string& path, bool as_json) {
    resmat::BlockMatrix r = resmat::parse_block_resistance(read_file(path));
    resmat::MWGraph rec = resmat::reconstruct_tree(r);

    if (as_json) {
        json edges = json::array();
        json weights = json::array();
        for (std::size_t e = 0; e < rec.weights.size(); ++e) {
            edges.push_back({rec.graph.edges[e].first + 1,
                             rec.graph.edges[e].second + 1});
            weights.push_back(matrix_rows(rec.weights[e]));
        }
        json out{{"n", rec.graph.n},
                 {"m", rec.graph.edge_count()},
                 {"k", rec.block_order},
                 {"edges", edges},
                 {"weights", weights}};
        std::cout << out.dump() << '\n';
        return 0;
    }
    std::cout << resmat::format_mwgraph(rec);
    return 0;
}

int run_selftest_cmd(bool as_json) {
    std::vector<resmat::CheckResult> results = resmat::run_selftest();
    if (as_json) {
        json checks = json::array();
        int passed = 0;
        for (const auto& r : results) {
            checks.push_back({{"name", r.name},
                              {"pass", r.pass},
                              {"max_dev", r.deviation},
                              {"detail", r.detail}});
            if (r.pass) ++passed;
        }
        json out{{"checks", checks},
                 {"passed", passed},
                 {"total", results.size()}};
        std::cout << out.dump() << '\n';
        return passed == static_cast<int>(results.size()) ? 0 : 2;
    }
    return resmat::print_selftest(std::cout, results) ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resistance distance, forest counts, and block-weighted "
                 "Laplacian analytics for connected graphs"};
    app.require_subcommand(1);

    std::string resist_file, resist_method = "eigen";
    bool resist_json = false;
    CLI::App* resist = app.add_subcommand(
        "resist", "resistance matrix, row sums, and Kirchhoff index");
    resist->add_option("file", resist_file, "edge-list graph file")->required();
    resist->add_option("--method", resist_method,
                       "computation route: eigen, pinv, or det")
        ->check(CLI::IsMember({"eigen", "pinv", "det"}));
    resist->add_flag("--json", resist_json, "emit JSON");

    std::string regular_file;
    double regular_tol = 1e-9;
    bool regular_json = false;
    CLI::App* regular = app.add_subcommand(
        "regular", "resistance-regularity verdict with all ten criteria");
    regular->add_option("file", regular_file, "edge-list graph file")->required();
    regular->add_option("--tol", regular_tol,
                        "constancy tolerance scale (default 1e-9)");
    regular->add_flag("--json", regular_json, "emit JSON");

    std::string forests_file;
    bool forests_oracle = false, forests_json = false;
    CLI::App* forests = app.add_subcommand(
        "forests", "spanning tree and 2-forest counts with identities");
    forests->add_option("file", forests_file, "edge-list graph file")->required();
    forests->add_flag("--oracle", forests_oracle,
                      "verify counts by exhaustive enumeration (<= 25 edges)");
    forests->add_flag("--json", forests_json, "emit JSON");

    std::string block_file;
    bool block_json = false;
    CLI::App* blockresist = app.add_subcommand(
        "blockresist", "block resistance matrix of a matrix-weighted graph");
    blockresist->add_option("file", block_file, "matrix-weighted graph file")
        ->required();
    blockresist->add_flag("--json", block_json, "emit JSON");

    std::string reconstruct_file;
    bool reconstruct_json = false;
    CLI::App* reconstruct = app.add_subcommand(
        "reconstruct", "recover a matrix-weighted tree from its block "
                       "resistance matrix");
    reconstruct->add_option("file", reconstruct_file,
                            "block resistance matrix file")
        ->required();
    reconstruct->add_flag("--json", reconstruct_json, "emit JSON");

    bool selftest_json = false;
    CLI::App* selftest = app.add_subcommand(
        "selftest", "run the full deterministic cross-check battery");
    selftest->add_flag("--json", selftest_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (resist->parsed())
            return run_resist(resist_file, resist_method, resist_json);
        if (regular->parsed())
            return run_regular(regular_file, regular_tol, regular_json);
        if (forests->parsed())
            return run_forests(forests_file, forests_oracle, forests_json);
        if (blockresist->parsed())
            return run_blockresist(block_file, block_json);
        if (reconstruct->parsed())
            return run_reconstruct(reconstruct_file, reconstruct_json);
        if (selftest->parsed()) return run_selftest_cmd(selftest_json);
    } catch (const resmat::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    } catch (const resmat::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
