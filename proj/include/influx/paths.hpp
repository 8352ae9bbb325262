#pragma once

#include <cstddef>
#include <vector>

#include "influx/graph.hpp"
#include "influx/matrix.hpp"

namespace influx {

/// Walk of length >= 1; consecutive edges share endpoints. Vertices and edges
/// may repeat.
struct Path {
    std::vector<Edge> edges;

    std::size_t length() const noexcept { return edges.size(); }
    Vertex start() const { return edges.front().source; }
    Vertex end() const { return edges.back().target; }
    /// Product of the edge weights.
    double weight() const noexcept;
    /// True iff non-empty and t(e_m) == s(e_{m+1}) for every consecutive pair.
    bool connected() const noexcept;
};

/// A finite set of paths together with its valuation (sum of path weights).
struct WeightedPathSet {
    std::vector<Path> paths;
    double valuation = 0.0;
};

/// Default cap on the number of enumerated paths; INFLUX_BUDGET overrides it.
double default_path_budget();

/// Number of walks of length k from j to i (ignoring weights).
double count_walks(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k);

/// All walks of length k from j to i, depth-first in lexicographic edge
/// order. Throws BudgetExceeded if there are more than `budget` of them.
std::vector<Path> enumerate_paths(const DirectInfluenceGraph& g, Vertex i, Vertex j,
                                  std::size_t k, double budget = default_path_budget());

/// The walks from j to i of length k, valued by the product of edge weights.
WeightedPathSet omega_path_set(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k,
                               double budget = default_path_budget());

/// Sum over walks of length k from j to i of the product of their edge
/// weights, by explicit enumeration.
double omega_sum(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k,
                 double budget = default_path_budget());

/// Same valuation without listing walks: walks of length m ending at v split
/// by their last edge u -> v into walks of length m - 1 ending at u. Works on
/// the edge list only.
double omega_sum_by_last_edge(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k);

enum class OracleRoute {
    /// Enumerate when within budget, otherwise use the recurrence.
    Automatic,
    /// Enumerate; BudgetExceeded when over budget.
    Enumerate,
    Recurrence,
};

/// Complete graph on [n] weighted by p * repair(D) + (1 - p) * E_n.
DirectInfluenceGraph damped_complete_graph(const Matrix& d, double damping);

/// Sum over walks of length k from j to i in the damped complete graph of the
/// product of damped weights. The recurrence route is a matrix power of the
/// damped matrix.
double rho_sum(const Matrix& d, Vertex i, Vertex j, std::size_t k, double damping,
               OracleRoute route = OracleRoute::Automatic, double budget = default_path_budget());

struct TruncatedSeries {
    double value = 0.0;
    /// Upper bound on the omitted terms k > K; infinite when the bound does
    /// not apply yet.
    double tail_bound = 0.0;
};

/// sum_{k=1}^{K} omega_sum(g, i, j, k) * lambda^k / (e_+^lambda k!).
TruncatedSeries omega_lambda_sum(const DirectInfluenceGraph& g, Vertex i, Vertex j, double lambda,
                                 std::size_t max_length,
                                 OracleRoute route = OracleRoute::Automatic,
                                 double budget = default_path_budget());

}  // namespace influx
