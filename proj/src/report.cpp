#include "influx/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>

namespace influx {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json real(double x) {
    if (!std::isfinite(x)) return nullptr;
    return quantize(x);
}

json reals(std::span<const double> v) {
    json arr = json::array();
    for (double x : v) arr.push_back(real(x));
    return arr;
}

long long label_of(const GraphSummary& graph, Vertex v) {
    return graph.labels.empty() ? static_cast<long long>(v) : graph.labels.at(v - 1);
}

json ranking(std::span<const double> shown, const GraphSummary& graph) {
    json arr = json::array();
    for (const RankedVertex& r : rank_vertices(shown)) {
        arr.push_back({{"vertex", label_of(graph, r.vertex)}, {"score", real(r.score)}});
    }
    return arr;
}

json graph_json(const GraphSummary& graph) {
    json g = {{"n", graph.n}, {"edges", graph.edges}};
    if (!graph.family.empty()) g["family"] = graph.family;
    json labels = json::array();
    for (Vertex v = 1; v <= graph.n; ++v) labels.push_back(label_of(graph, v));
    g["vertices"] = labels;
    return g;
}

json config_json(const MethodConfig& config) {
    return std::visit(overloaded{
                          [](const PwpConfig& c) -> json {
                              return {{"name", "pwp"}, {"lambda", real(c.lambda)}, {"tol", real(c.tol)}};
                          },
                          [](const MicmacConfig& c) -> json {
                              return {{"name", "micmac"}, {"k", c.k}};
                          },
                          [](const PageRankConfig& c) -> json {
                              return {{"name", "pagerank"},
                                      {"p", real(c.damping)},
                                      {"tol", real(c.tol)},
                                      {"max_iter", c.max_iter}};
                          },
                      },
                      config);
}

json diagnostics_json(const Diagnostics& diagnostics) {
    return std::visit(overloaded{
                          [](const std::monostate&) -> json { return json::object(); },
                          [](const SeriesReport& r) -> json {
                              return {{"terms_used", r.terms_used}, {"tail_bound", real(r.tail_bound)}};
                          },
                          [](const PowerIterationReport& r) -> json {
                              return {{"iterations", r.iterations}, {"residual", real(r.residual)}};
                          },
                      },
                      diagnostics);
}

// Dependence and influence scores as reported (display precision, optional
// --paper-scale factor for PWP, stationary form for PageRank).
struct ShownVectors {
    std::vector<double> dependence;
    std::vector<double> influence;
};

ShownVectors shown_vectors(const IndirectInfluenceResult& result, bool paper_scale) {
    std::vector<double> d = result.vectors.dependence;
    std::vector<double> f = result.vectors.influence;
    if (std::holds_alternative<PageRankConfig>(result.config)) d = result.stationary;
    if (const auto* c = std::get_if<PwpConfig>(&result.config); c && paper_scale) {
        const double scale = std::expm1(c->lambda);
        for (double& x : d) x *= scale;
        for (double& x : f) x *= scale;
    }
    return {display_values(d), display_values(f)};
}

std::string csv_real(const json& value) {
    if (value.is_null()) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", kReportDigits, value.get<double>());
    return buf;
}

}  // namespace

double quantize(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*e", kReportDigits - 1, x);
    return std::strtod(buf, nullptr);
}

std::vector<double> display_values(std::span<const double> v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(std::abs(x) < 1e-13 * scale ? 0.0 : quantize(x));
    return out;
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = std::min(a.size(), b.size());
    long long concordant = 0;
    long long discordant = 0;
    long long ties_a = 0;
    long long ties_b = 0;
    long long pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ++pairs;
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if (da == 0.0) ++ties_a;
            if (db == 0.0) ++ties_b;
            if (da == 0.0 || db == 0.0) continue;
            ((da > 0.0) == (db > 0.0) ? concordant : discordant) += 1;
        }
    }
    const bool constant_a = ties_a == pairs;
    const bool constant_b = ties_b == pairs;
    if (constant_a && constant_b) return 1.0;
    if (constant_a || constant_b) return std::numeric_limits<double>::quiet_NaN();
    const double denom = std::sqrt(static_cast<double>(pairs - ties_a) *
                                   static_cast<double>(pairs - ties_b));
    return static_cast<double>(concordant - discordant) / denom;
}

nlohmann::json method_report(const IndirectInfluenceResult& result, const GraphSummary& graph,
                             const ReportOptions& options) {
    const bool is_pwp = std::holds_alternative<PwpConfig>(result.config);
    const ShownVectors shown = shown_vectors(result, options.paper_scale);
    json report = {
        {"method", config_json(result.config)},
        {"dependence", reals(shown.dependence)},
        {"influence", reals(shown.influence)},
        {"ranking_by_dependence", ranking(shown.dependence, graph)},
        {"ranking_by_influence", ranking(shown.influence, graph)},
        {"diagnostics", diagnostics_json(result.diagnostics)},
        {"paper_scale", options.paper_scale && is_pwp},
    };
    if (std::holds_alternative<PageRankConfig>(result.config)) {
        report["eqdf_row_sums"] = reals(display_values(result.vectors.dependence));
    }
    if (options.emit_matrix) {
        json rows = json::array();
        for (std::size_t i = 0; i < result.T.rows(); ++i) {
            std::vector<double> row(result.T.cols());
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = result.T(i, j);
            rows.push_back(reals(row));
        }
        report["T"] = rows;
    }
    return report;
}

nlohmann::json compute_report(const IndirectInfluenceResult& result, const GraphSummary& graph,
                              const ReportOptions& options) {
    json report = method_report(result, graph, options);
    report["command"] = "compute";
    report["graph"] = graph_json(graph);
    return report;
}

nlohmann::json compare_report(std::span<const IndirectInfluenceResult> results,
                              const GraphSummary& graph, const ReportOptions& options) {
    json methods = json::array();
    std::vector<ShownVectors> shown;
    for (const auto& r : results) {
        methods.push_back(method_report(r, graph, options));
        shown.push_back(shown_vectors(r, options.paper_scale));
    }
    json dependence = json::array();
    json influence = json::array();
    for (std::size_t a = 0; a < results.size(); ++a) {
        for (std::size_t b = a + 1; b < results.size(); ++b) {
            const std::string first = method_name(results[a].config);
            const std::string second = method_name(results[b].config);
            dependence.push_back({{"methods", {first, second}},
                                  {"kendall_tau", real(kendall_tau(shown[a].dependence, shown[b].dependence))}});
            influence.push_back({{"methods", {first, second}},
                                 {"kendall_tau", real(kendall_tau(shown[a].influence, shown[b].influence))}});
        }
    }
    return {
        {"command", "compare"},
        {"graph", graph_json(graph)},
        {"results", methods},
        {"rank_agreement", {{"dependence", dependence}, {"influence", influence}}},
    };
}

nlohmann::json montecarlo_report(const MonteCarloEstimate& estimate, const Matrix& exact,
                                 double lambda, std::uint64_t seed, const GraphSummary& graph) {
    json table = json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < exact.rows(); ++i) {
        for (std::size_t j = 0; j < exact.cols(); ++j) {
            const double err = std::abs(estimate.estimate(i, j) - exact(i, j));
            worst = std::max(worst, err);
            table.push_back({{"row", label_of(graph, i + 1)},
                             {"col", label_of(graph, j + 1)},
                             {"estimate", real(estimate.estimate(i, j))},
                             {"exact", real(exact(i, j))},
                             {"abs_error", real(err)}});
        }
    }
    const MomentSummary m = moments(lambda);
    const auto samples = static_cast<double>(estimate.samples);
    return {
        {"command", "montecarlo"},
        {"graph", graph_json(graph)},
        {"lambda", real(lambda)},
        {"samples", estimate.samples},
        {"seed", seed},
        {"max_abs_error", real(worst)},
        {"mean_length", real(estimate.mean_length())},
        {"expected_mean_length", real(m.mean)},
        {"mean_length_stderr", real(std::sqrt(m.variance / samples))},
        {"error_table", table},
    };
}

std::string canonical_json(const nlohmann::json& report) { return report.dump(2) + "\n"; }

void write_vectors_csv(std::ostream& out, const nlohmann::json& report) {
    auto rows = [&](const json& body, const std::string& prefix) {
        const auto& vertices = report.at("graph").at("vertices");
        const auto& d = body.at("dependence");
        const auto& f = body.at("influence");
        for (std::size_t v = 0; v < d.size(); ++v) {
            out << prefix << vertices.at(v).get<long long>() << ',' << csv_real(d.at(v)) << ','
                << csv_real(f.at(v)) << '\n';
        }
    };
    if (report.contains("results")) {
        out << "method,vertex,d,f\n";
        for (const auto& body : report.at("results")) {
            rows(body, body.at("method").at("name").get<std::string>() + ",");
        }
    } else {
        out << "vertex,d,f\n";
        rows(report, "");
    }
}

void write_error_table_csv(std::ostream& out, const nlohmann::json& report) {
    out << "row,col,estimate,exact,abs_error\n";
    for (const auto& e : report.at("error_table")) {
        out << e.at("row").get<long long>() << ',' << e.at("col").get<long long>() << ','
            << csv_real(e.at("estimate")) << ',' << csv_real(e.at("exact")) << ','
            << csv_real(e.at("abs_error")) << '\n';
    }
}

}  // namespace influx
