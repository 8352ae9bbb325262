#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "influx/error.hpp"
#include "influx/families.hpp"
#include "influx/graph.hpp"
#include "influx/methods.hpp"
#include "influx/report.hpp"
#include "influx/stochastic.hpp"

namespace influx::cli {

namespace {

struct InputOptions {
    std::string graph_path;
    std::string format = "edges";
    std::string family;
    std::size_t n = 0;
    double a = 0.0;
};

struct MethodOptions {
    std::vector<std::string> methods;
    double lambda = kDefaultLambda;
    unsigned k = 4;
    double damping = 0.86;
    std::optional<double> tol;
    int max_iter = 10000;
    bool web_normalize = false;
};

struct OutputOptions {
    bool paper_scale = false;
    bool emit_matrix = false;
    bool csv = false;
    std::string output_path;
    std::string matrix_out;
};

struct Loaded {
    Matrix d;
    DirectInfluenceGraph graph{1, {}};
    GraphSummary summary;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FamilySpec family_spec(const std::string& name, std::size_t n, double a) {
    if (n < 1) throw UsageError("family size -n must be >= 1");
    if (name == "line") return Line{n};
    if (name == "cycle") return Cycle{n};
    if (name == "jordan") return Jordan{n, a};
    if (name == "star") return Star{n};
    throw UsageError("unknown family '" + name + "' (expected line, cycle, jordan or star)");
}

void add_input_options(CLI::App& cmd, InputOptions& in) {
    cmd.add_option("graph", in.graph_path, "Edge-list (or matrix) file");
    cmd.add_option("--format", in.format, "Input file format")
        ->check(CLI::IsMember({"edges", "matrix"}))
        ->capture_default_str();
    cmd.add_option("--family", in.family, "Use a generated family instead of a file")
        ->check(CLI::IsMember({"line", "cycle", "jordan", "star"}));
    cmd.add_option("-n", in.n, "Family size (leaf count for star)");
    cmd.add_option("-a", in.a, "Jordan diagonal weight");
}

void add_method_options(CLI::App& cmd, MethodOptions& m, bool many) {
    auto* method = cmd.add_option("--method", m.methods, many ? "Methods to compare (default: all)"
                                                              : "Influence method")
                       ->check(CLI::IsMember({"pwp", "micmac", "pagerank"}))
                       ->allow_extra_args(false);
    if (!many) method->required()->expected(1);
    cmd.add_option("--lambda", m.lambda, "PWP rate lambda > 0")->capture_default_str();
    cmd.add_option("-k", m.k, "MICMAC power")->capture_default_str();
    cmd.add_option("-p", m.damping, "PageRank damping in (0,1)")->capture_default_str();
    cmd.add_option("--tol", m.tol, "Tolerance for PWP series and PageRank iteration");
    cmd.add_option("--max-iter", m.max_iter, "PageRank iteration cap")->capture_default_str();
    cmd.add_flag("--web-normalize", m.web_normalize,
                 "Feed PageRank the 1/out-degree matrix of the graph structure");
}

void add_output_options(CLI::App& cmd, OutputOptions& o, bool vectors) {
    if (vectors) {
        cmd.add_flag("--paper-scale", o.paper_scale, "Multiply PWP vectors by e^lambda - 1");
        cmd.add_flag("--emit-matrix", o.emit_matrix, "Include the full matrix T");
    }
    cmd.add_flag("--csv", o.csv, "Emit a CSV table instead of JSON");
    cmd.add_option("-o", o.output_path, "Write the report to this file");
}

Loaded load(const InputOptions& in) {
    Loaded loaded;
    if (!in.family.empty()) {
        if (!in.graph_path.empty()) throw UsageError("give either a graph file or --family, not both");
        const FamilySpec spec = family_spec(in.family, in.n, in.a);
        loaded.graph = build(spec);
        loaded.summary.family = family_name(spec);
        loaded.summary.labels = vertex_labels(spec);
        loaded.d = to_matrix(loaded.graph);
    } else if (!in.graph_path.empty()) {
        if (in.format == "matrix") {
            loaded.d = read_matrix(in.graph_path);
            loaded.graph = from_matrix(loaded.d);
        } else {
            loaded.graph = read_edge_list(in.graph_path);
            loaded.d = to_matrix(loaded.graph);
        }
    } else {
        throw UsageError("no input: give a graph file or --family");
    }
    loaded.summary.n = loaded.graph.size();
    loaded.summary.edges = loaded.graph.edges().size();
    return loaded;
}

MethodConfig config_for(const std::string& name, const MethodOptions& m) {
    if (name == "pwp") return PwpConfig{m.lambda, m.tol.value_or(kDefaultTol)};
    if (name == "micmac") return MicmacConfig{m.k};
    return PageRankConfig{m.damping, m.tol.value_or(1e-12), m.max_iter};
}

IndirectInfluenceResult run_method(const Loaded& loaded, const MethodConfig& config,
                                   const MethodOptions& m) {
    if (std::holds_alternative<PageRankConfig>(config) && m.web_normalize) {
        return compute(web_normalize(loaded.graph), config);
    }
    return compute(loaded.d, config);
}

void emit(const std::string& text, const OutputOptions& o, std::ostream& out) {
    if (o.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.output_path);
    if (!file) throw UsageError("cannot write '" + o.output_path + "'");
    file << text;
}

void emit_report(const nlohmann::json& report, const OutputOptions& o, std::ostream& out,
                 void (*csv)(std::ostream&, const nlohmann::json&)) {
    if (o.csv) {
        std::ostringstream s;
        csv(s, report);
        emit(s.str(), o, out);
    } else {
        emit(canonical_json(report), o, out);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Indirect influence rankings on weighted directed graphs", "influx"};
    app.require_subcommand(1);

    InputOptions input;
    MethodOptions methods;
    OutputOptions output;

    auto* compute_cmd = app.add_subcommand("compute", "Run one method and report d, f and rankings");
    add_input_options(*compute_cmd, input);
    add_method_options(*compute_cmd, methods, false);
    add_output_options(*compute_cmd, output, true);
    compute_cmd->add_option("--matrix-out", output.matrix_out, "Also write T as a matrix file");

    auto* compare_cmd = app.add_subcommand("compare", "Run several methods side by side");
    add_input_options(*compare_cmd, input);
    add_method_options(*compare_cmd, methods, true);
    add_output_options(*compare_cmd, output, true);

    std::string family;
    std::size_t family_n = 0;
    double family_a = 0.0;
    auto* generate_cmd = app.add_subcommand("generate", "Write an example family as an edge list");
    generate_cmd->add_option("family", family, "line, cycle, jordan or star")
        ->required()
        ->check(CLI::IsMember({"line", "cycle", "jordan", "star"}));
    generate_cmd->add_option("-n", family_n, "Size (leaf count for star)")->required();
    generate_cmd->add_option("-a", family_a, "Jordan diagonal weight");
    generate_cmd->add_option("-o", output.output_path, "Output file (default stdout)");

    std::uint64_t samples = 0;
    std::uint64_t seed = 20240521;
    unsigned workers = 1;
    auto* mc_cmd = app.add_subcommand("montecarlo", "Monte Carlo estimate of the PWP matrix");
    add_input_options(*mc_cmd, input);
    mc_cmd->add_option("--lambda", methods.lambda, "PWP rate lambda > 0")->capture_default_str();
    mc_cmd->add_option("-N", samples, "Number of sampled walk lengths")->required();
    mc_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    mc_cmd->add_option("--tol", methods.tol, "Tolerance of the exact PWP reference");
    mc_cmd->add_option("--workers", workers, "Sampling threads (result does not depend on it)")
        ->capture_default_str();
    add_output_options(*mc_cmd, output, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrParse;
    }

    try {
        if (compute_cmd->parsed()) {
            const Loaded loaded = load(input);
            const MethodConfig config = config_for(methods.methods.front(), methods);
            validate(config);
            const auto result = run_method(loaded, config, methods);
            const auto report = compute_report(result, loaded.summary,
                                               {output.paper_scale, output.emit_matrix});
            if (!output.matrix_out.empty()) {
                std::ofstream file(output.matrix_out);
                if (!file) throw UsageError("cannot write '" + output.matrix_out + "'");
                write_matrix(file, result.T);
            }
            emit_report(report, output, out, write_vectors_csv);
        } else if (compare_cmd->parsed()) {
            const Loaded loaded = load(input);
            std::vector<std::string> names = methods.methods;
            if (names.empty()) names = {"pwp", "micmac", "pagerank"};
            std::vector<IndirectInfluenceResult> results;
            for (const auto& name : names) {
                const MethodConfig config = config_for(name, methods);
                validate(config);
                results.push_back(run_method(loaded, config, methods));
            }
            const auto report = compare_report(results, loaded.summary,
                                               {output.paper_scale, output.emit_matrix});
            emit_report(report, output, out, write_vectors_csv);
        } else if (generate_cmd->parsed()) {
            const FamilySpec spec = family_spec(family, family_n, family_a);
            std::ostringstream s;
            write_edge_list(s, build(spec));
            emit(s.str(), output, out);
        } else if (mc_cmd->parsed()) {
            if (samples == 0) throw UsageError("-N must be at least 1");
            const Loaded loaded = load(input);
            const PwpConfig config{methods.lambda, methods.tol.value_or(kDefaultTol)};
            validate(config);
            const auto estimate = monte_carlo_pwp(loaded.d, config.lambda, samples, seed, workers);
            const Matrix exact = pwp_matrix(loaded.d, config.lambda, config.tol);
            const auto report = montecarlo_report(estimate, exact, config.lambda, seed, loaded.summary);
            emit_report(report, output, out, write_error_table_csv);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrParse;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrParse;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrParse;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kUsageOrParse;
    } catch (const NotSubstochastic& e) {
        err << "error: " << e.what()
            << " (PageRank needs columns summing to 0 or 1; try --web-normalize)\n";
        return kNumericFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    }
    return kOk;
}

}  // namespace influx::cli
