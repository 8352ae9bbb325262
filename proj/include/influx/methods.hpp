#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "influx/graph.hpp"
#include "influx/matrix.hpp"

namespace influx {

/// Normalized exponential: T = e_+^{lambda D} / e_+^{lambda}.
struct PwpConfig {
    double lambda = kDefaultLambda;
    double tol = kDefaultTol;
};

/// Fixed power: T = D^k.
struct MicmacConfig {
    unsigned k = 4;
};

/// Damped stationary distribution of p * repair(D) + (1 - p) * E_n.
struct PageRankConfig {
    double damping = 0.86;
    double tol = 1e-12;
    int max_iter = 10000;
};

using MethodConfig = std::variant<PwpConfig, MicmacConfig, PageRankConfig>;

/// Throws DomainError when a parameter is outside its admissible range.
void validate(const MethodConfig& config);
std::string method_name(const MethodConfig& config);

/// Dependence (row sums of T) and influence (column sums of T).
struct InfluenceVectors {
    std::vector<double> dependence;
    std::vector<double> influence;
};

struct PowerIterationReport {
    int iterations = 0;
    /// ||M d - d||_1 for the returned stationary vector d.
    double residual = 0.0;
};

using Diagnostics = std::variant<std::monostate, SeriesReport, PowerIterationReport>;

struct IndirectInfluenceResult {
    Matrix T;
    InfluenceVectors vectors;
    MethodConfig config;
    Diagnostics diagnostics;
    /// PageRank only: the stationary distribution (sums to 1). The dependence
    /// vector in `vectors` is the row-sum form, n times this.
    std::vector<double> stationary;
};

InfluenceVectors influence_dependence(const Matrix& t);

IndirectInfluenceResult micmac(const Matrix& d, unsigned k);

/// Replaces each all-zero column by the uniform column 1/n. Throws
/// NotSubstochastic unless every entry is >= 0 and every column sums to 0 or
/// 1 within 1e-9.
Matrix pagerank_repair(const Matrix& d);

/// p * pagerank_repair(D) + (1 - p) * E_n.
Matrix damped_matrix(const Matrix& d, double damping);

/// Power iteration from the uniform vector. Throws NoConvergence when
/// max_iter steps do not bring ||x_new - x||_1 below tol.
IndirectInfluenceResult pagerank(const Matrix& d, const PageRankConfig& config = {});
/// Same, from a caller-supplied start distribution (nonnegative, nonzero).
IndirectInfluenceResult pagerank(const Matrix& d, const PageRankConfig& config,
                                 std::span<const double> start);

IndirectInfluenceResult pwp(const Matrix& d, const PwpConfig& config = {});

IndirectInfluenceResult compute(const Matrix& d, const MethodConfig& config);

struct RankedVertex {
    Vertex vertex = 0;
    double score = 0.0;

    bool operator==(const RankedVertex&) const = default;
};

/// Vertices by descending score; equal scores keep ascending vertex order.
std::vector<RankedVertex> rank_vertices(std::span<const double> scores);

}  // namespace influx
