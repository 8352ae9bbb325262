#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "influx/methods.hpp"
#include "influx/stochastic.hpp"

namespace influx {

/// Significant digits kept in every reported real.
inline constexpr int kReportDigits = 12;

/// x rounded to kReportDigits significant digits.
double quantize(double x);

/// Values as printed: entries below 1e-13 of the vector's largest magnitude
/// are cleared, the rest are quantized. Rankings are computed on these.
std::vector<double> display_values(std::span<const double> v);

/// Kendall's tau-b. Two constant vectors agree perfectly (1); if only one is
/// constant the coefficient is undefined and NaN is returned.
double kendall_tau(std::span<const double> a, std::span<const double> b);

struct GraphSummary {
    std::size_t n = 0;
    std::size_t edges = 0;
    /// Generator family, empty for graphs read from files.
    std::string family;
    /// Printed label per vertex; 1..n when empty.
    std::vector<long long> labels;
};

struct ReportOptions {
    bool paper_scale = false;
    bool emit_matrix = false;
};

/// Report body for one method: config, d, f, rankings and diagnostics.
nlohmann::json method_report(const IndirectInfluenceResult& result, const GraphSummary& graph,
                             const ReportOptions& options);

nlohmann::json compute_report(const IndirectInfluenceResult& result, const GraphSummary& graph,
                              const ReportOptions& options);

/// Per-method reports plus pairwise Kendall tau of the dependence and
/// influence scores.
nlohmann::json compare_report(std::span<const IndirectInfluenceResult> results,
                              const GraphSummary& graph, const ReportOptions& options);

nlohmann::json montecarlo_report(const MonteCarloEstimate& estimate, const Matrix& exact,
                                 double lambda, std::uint64_t seed, const GraphSummary& graph);

/// Pretty-printed with sorted keys and a trailing newline. Parsing the
/// output and serializing again reproduces it byte for byte.
std::string canonical_json(const nlohmann::json& report);

/// "vertex,d,f" rows (with a leading "method" column for comparisons).
void write_vectors_csv(std::ostream& out, const nlohmann::json& report);
void write_error_table_csv(std::ostream& out, const nlohmann::json& report);

}  // namespace influx
