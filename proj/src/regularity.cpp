#include "resmat/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "resmat/errors.hpp"
#include "resmat/forests.hpp"
#include "resmat/resistance.hpp"

namespace resmat {

namespace {

std::string vertex_label(int v) { return "vertex " + std::to_string(v + 1); }

std::string pair_label(int i, int j) {
    return "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// Everything the ten criteria share, computed once.
struct Context {
    const Graph& g;
    int n;
    double tol;
    Matrix lap;
    EigenPairs eig;
    Matrix lplus; // shift route
    Matrix r;     // pinv route, consistent with lplus
    Vector rs;
    double kf;
    double t;
};

CriterionResult constancy(const Context& ctx, char id, std::string name,
                          const std::vector<double>& family,
                          const std::vector<std::string>& labels) {
    auto [min_it, max_it] = std::minmax_element(family.begin(), family.end());
    double mean = 0.0;
    for (double v : family) mean += v;
    mean /= static_cast<double>(family.size());

    CriterionResult res;
    res.id = id;
    res.name = std::move(name);
    res.deviation = *max_it - *min_it;
    res.pass = res.deviation <= ctx.tol * std::max(1.0, std::abs(mean));
    if (!res.pass)
        res.witness = "min at " + labels[min_it - family.begin()] + ", max at " +
                      labels[max_it - family.begin()];
    return res;
}

CriterionResult target_match(const Context& ctx, char id, std::string name,
                             const std::vector<double>& values,
                             const std::vector<double>& targets,
                             const std::vector<std::string>& labels) {
    double worst = 0.0, scale = 1.0;
    std::size_t worst_at = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        double dev = std::abs(values[k] - targets[k]);
        if (dev > worst) {
            worst = dev;
            worst_at = k;
        }
        scale = std::max(scale, std::abs(targets[k]));
    }
    CriterionResult res;
    res.id = id;
    res.name = std::move(name);
    res.deviation = worst;
    res.pass = worst <= ctx.tol * scale;
    if (!res.pass) res.witness = labels[worst_at];
    return res;
}

std::vector<std::string> vertex_labels(int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int v = 0; v < n; ++v) out.push_back(vertex_label(v));
    return out;
}

CriterionResult row_sums_equal(const Context& ctx) {
    std::vector<double> family(ctx.rs.data(), ctx.rs.data() + ctx.n);
    return constancy(ctx, 'a', "equal-resistance-row-sums", family,
                     vertex_labels(ctx.n));
}

CriterionResult lplus_diagonal(const Context& ctx) {
    std::vector<double> values, targets;
    double target = ctx.kf / (static_cast<double>(ctx.n) * ctx.n);
    for (int i = 0; i < ctx.n; ++i) {
        values.push_back(ctx.lplus(i, i));
        targets.push_back(target);
    }
    return target_match(ctx, 'b', "lplus-diagonal-at-kf-over-n2", values, targets,
                        vertex_labels(ctx.n));
}

CriterionResult shifted_sum_constant(const Context& ctx) {
    std::vector<double> family;
    std::vector<std::string> labels;
    for (int i = 0; i < ctx.n; ++i) {
        for (int j = i; j < ctx.n; ++j) {
            family.push_back(ctx.r(i, j) + 2.0 * ctx.lplus(i, j));
            labels.push_back(pair_label(i, j));
        }
    }
    return constancy(ctx, 'c', "resistance-plus-2lplus-constant", family, labels);
}

CriterionResult resistance_from_lplus(const Context& ctx) {
    std::vector<double> values, targets;
    std::vector<std::string> labels;
    for (int i = 0; i < ctx.n; ++i) {
        for (int j = 0; j < ctx.n; ++j) {
            values.push_back(ctx.r(i, j));
            targets.push_back(2.0 * (ctx.lplus(0, 0) - ctx.lplus(i, j)));
            labels.push_back(pair_label(i, j));
        }
    }
    return target_match(ctx, 'd', "resistance-determined-by-lplus", values,
                        targets, labels);
}

CriterionResult bottleneck_totals(const Context& ctx) {
    std::vector<double> family;
    for (int v = 0; v < ctx.n; ++v)
        family.push_back(bottleneck_matrix(ctx.g, v).l1_total);
    return constancy(ctx, 'e', "bottleneck-entry-totals-constant", family,
                     vertex_labels(ctx.n));
}

CriterionResult spectral_diagonal(const Context& ctx) {
    double thr = zero_eigenvalue_threshold(ctx.eig.values);
    std::vector<double> family(ctx.n, 0.0);
    for (int k = 0; k < ctx.n; ++k) {
        if (std::abs(ctx.eig.values[k]) <= thr) continue;
        for (int i = 0; i < ctx.n; ++i) {
            double c = ctx.eig.vectors(i, k);
            family[i] += c * c / ctx.eig.values[k];
        }
    }
    return constancy(ctx, 'f', "spectral-lplus-diagonal-constant", family,
                     vertex_labels(ctx.n));
}

CriterionResult shifted_minors(const Context& ctx) {
    Matrix shifted =
        ctx.lap + Matrix::Constant(ctx.n, ctx.n, 1.0 / static_cast<double>(ctx.n));
    double target = ctx.t * (1.0 + ctx.kf / static_cast<double>(ctx.n));
    std::vector<double> values, targets;
    for (int v = 0; v < ctx.n; ++v) {
        values.push_back(ctx.n == 1 ? 1.0 : principal_minor(shifted, {v}));
        targets.push_back(target);
    }
    return target_match(ctx, 'g', "shifted-laplacian-minors-at-t(1+kf/n)", values,
                        targets, vertex_labels(ctx.n));
}

CriterionResult neighbor_lplus_sums(const Context& ctx) {
    const double nn = static_cast<double>(ctx.n);
    std::vector<double> values, targets;
    for (int i = 0; i < ctx.n; ++i) {
        double sum = 0.0;
        for (int j : ctx.g.adj[i]) sum += ctx.lplus(i, j);
        values.push_back(sum);
        targets.push_back(ctx.g.degree(i) * ctx.kf / (nn * nn) + 1.0 / nn - 1.0);
    }
    return target_match(ctx, 'h', "neighbor-lplus-row-sums", values, targets,
                        vertex_labels(ctx.n));
}

CriterionResult neighbor_resistance_sums(const Context& ctx) {
    const double nn = static_cast<double>(ctx.n);
    std::vector<double> values, targets;
    for (int i = 0; i < ctx.n; ++i) {
        double sum = 0.0;
        for (int j : ctx.g.adj[i]) sum += ctx.r(i, j);
        values.push_back(sum);
        targets.push_back(2.0 - 2.0 / nn);
    }
    return target_match(ctx, 'i', "neighbor-resistance-sums", values, targets,
                        vertex_labels(ctx.n));
}

// Pins vertex u = 0 and compares each v against it through the Schur
// complement of the shifted Laplacian: the quadratic-form gap must equal
// the degree gap.
CriterionResult schur_degree_balance(const Context& ctx) {
    const int n = ctx.n;
    Matrix shifted =
        ctx.lap + Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
    std::vector<double> values, targets;
    std::vector<std::string> labels;
    const int u = 0;
    for (int v = 1; v < n; ++v) {
        std::vector<int> keep;
        for (int w = 0; w < n; ++w)
            if (w != u && w != v) keep.push_back(w);
        const int p = static_cast<int>(keep.size());
        Matrix block(p, p);
        Vector x(p), y(p);
        for (int a = 0; a < p; ++a) {
            x[a] = shifted(keep[a], u);
            y[a] = shifted(keep[a], v);
            for (int b = 0; b < p; ++b) block(a, b) = shifted(keep[a], keep[b]);
        }
        double gap = 0.0;
        if (p > 0) {
            Eigen::LLT<Matrix> llt(block);
            if (llt.info() != Eigen::Success)
                throw InternalError("shifted Laplacian submatrix not positive definite");
            gap = y.dot(llt.solve(y)) - x.dot(llt.solve(x));
        }
        values.push_back(gap);
        targets.push_back(static_cast<double>(ctx.g.degree(v) - ctx.g.degree(u)));
        labels.push_back(pair_label(u, v));
    }
    if (values.empty()) { // n == 1
        values.push_back(0.0);
        targets.push_back(0.0);
        labels.push_back(vertex_label(0));
    }
    return target_match(ctx, 'j', "schur-quadratic-degree-balance", values,
                        targets, labels);
}

} // namespace

BottleneckMatrix bottleneck_matrix(const Graph& g, int v) {
    if (v < 0 || v >= g.n) throw DomainError("vertex out of range");

    BottleneckMatrix out;
    out.vertex = v;
    if (g.n == 1) {
        out.values = Matrix(0, 0);
        out.l1_total = 0.0;
        return out;
    }

    Matrix reduced = with_rows_cols_removed(laplacian(g), {v});
    out.values = inverse(reduced);

    double residual = (reduced * out.values -
                       Matrix::Identity(g.n - 1, g.n - 1))
                          .cwiseAbs()
                          .maxCoeff();
    if (residual > 1e-8)
        throw InternalError("bottleneck inverse residual above tolerance");
    if (out.values.minCoeff() < -1e-10)
        throw InternalError("bottleneck matrix has a negative entry");

    out.l1_total = out.values.sum();
    return out;
}

RegularityReport regularity_report(const Graph& g, double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

    RegularityReport report;
    report.cut_vertices = cut_vertices(g);
    report.kirchhoff = kirchhoff_index(g);
    report.constant = 2.0 * report.kirchhoff / static_cast<double>(g.n);

    ResistanceMatrix r = resistance_matrix(g, ResistanceMethod::pinv);
    report.resistance_row_sums = row_sums(r);

    if (g.n == 1) {
        // Single vertex: every characterization holds vacuously.
        report.regular = true;
        const char* names[] = {
            "equal-resistance-row-sums",      "lplus-diagonal-at-kf-over-n2",
            "resistance-plus-2lplus-constant", "resistance-determined-by-lplus",
            "bottleneck-entry-totals-constant", "spectral-lplus-diagonal-constant",
            "shifted-laplacian-minors-at-t(1+kf/n)", "neighbor-lplus-row-sums",
            "neighbor-resistance-sums",       "schur-quadratic-degree-balance"};
        for (int k = 0; k < 10; ++k)
            report.criteria.push_back(
                {static_cast<char>('a' + k), names[k], true, 0.0, ""});
        return report;
    }

    Context ctx{g,
                g.n,
                tol,
                laplacian(g),
                sym_eigen(laplacian(g)),
                moore_penrose(laplacian(g), PinvMethod::shift),
                r.values,
                report.resistance_row_sums,
                report.kirchhoff,
                static_cast<double>(spanning_tree_count(g, TreeCountMethod::det))};

    report.criteria.push_back(row_sums_equal(ctx));
    report.criteria.push_back(lplus_diagonal(ctx));
    report.criteria.push_back(shifted_sum_constant(ctx));
    report.criteria.push_back(resistance_from_lplus(ctx));
    report.criteria.push_back(bottleneck_totals(ctx));
    report.criteria.push_back(spectral_diagonal(ctx));
    report.criteria.push_back(shifted_minors(ctx));
    report.criteria.push_back(neighbor_lplus_sums(ctx));
    report.criteria.push_back(neighbor_resistance_sums(ctx));
    report.criteria.push_back(schur_degree_balance(ctx));

    bool first = report.criteria.front().pass;
    for (const auto& c : report.criteria) {
        if (c.pass != first) {
            std::string ids;
            for (const auto& d : report.criteria)
                if (d.pass != first) ids += d.id;
            throw InternalError("equivalent regularity criteria disagree: " + ids);
        }
    }
    report.regular = first;

    // A cut vertex forces unequal row sums; agreement here is part of the
    // theorem and worth a hard check.
    if (report.regular && !report.cut_vertices.empty())
        throw InternalError("graph with a cut vertex classified as regular");

    return report;
}

EquiarborealReport is_equiarboreal(const Graph& g) {
    if (g.edge_count() == 0)
        throw DomainError("equiarboreal test needs at least one edge");

    ResistanceMatrix r = resistance_matrix(g, ResistanceMethod::eigen);
    EquiarborealReport report;
    report.min_resistance = std::numeric_limits<double>::infinity();
    report.max_resistance = -std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (auto [i, j] : g.edges) {
        double value = r(i, j);
        total += value;
        if (value < report.min_resistance) {
            report.min_resistance = value;
            report.min_edge = {i, j};
        }
        if (value > report.max_resistance) {
            report.max_resistance = value;
            report.max_edge = {i, j};
        }
    }
    report.common_resistance = total / static_cast<double>(g.edge_count());
    report.spread = report.max_resistance - report.min_resistance;
    report.equiarboreal = report.spread <= 1e-9;
    return report;
}

} // namespace resmat
