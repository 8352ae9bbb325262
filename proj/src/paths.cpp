#include "influx/paths.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "influx/error.hpp"
#include "influx/methods.hpp"

namespace influx {

namespace {

constexpr double kBuiltinBudget = 1e7;

void check_query(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k) {
    if (i < 1 || i > g.size() || j < 1 || j > g.size()) {
        throw DomainError("path query (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") outside vertices 1.." + std::to_string(g.size()));
    }
    if (k < 1) throw DomainError("path length must be >= 1");
}

// reach[r][v]: some walk of exactly r edges leads from v to `target`.
std::vector<std::vector<char>> reachability(const DirectInfluenceGraph& g, Vertex target,
                                            std::size_t k) {
    std::vector<std::vector<char>> reach(k + 1, std::vector<char>(g.size() + 1, 0));
    reach[0][target] = 1;
    for (std::size_t r = 1; r <= k; ++r) {
        for (Vertex v = 1; v <= g.size(); ++v) {
            for (const Edge& e : g.out_edges(v)) {
                if (reach[r - 1][e.target]) {
                    reach[r][v] = 1;
                    break;
                }
            }
        }
    }
    return reach;
}

void extend(const DirectInfluenceGraph& g, const std::vector<std::vector<char>>& reach,
            Vertex at, std::size_t remaining, Path& current, std::vector<Path>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (const Edge& e : g.out_edges(at)) {
        if (!reach[remaining - 1][e.target]) continue;
        current.edges.push_back(e);
        extend(g, reach, e.target, remaining - 1, current, out);
        current.edges.pop_back();
    }
}

}  // namespace

double Path::weight() const noexcept {
    double w = 1.0;
    for (const Edge& e : edges) w *= e.weight;
    return w;
}

bool Path::connected() const noexcept {
    if (edges.empty()) return false;
    for (std::size_t m = 1; m < edges.size(); ++m)
        if (edges[m - 1].target != edges[m].source) return false;
    return true;
}

double default_path_budget() {
    if (const char* env = std::getenv("INFLUX_BUDGET")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end != env && *end == '\0' && value > 0.0) return value;
    }
    return kBuiltinBudget;
}

double count_walks(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k) {
    check_query(g, i, j, k);
    std::vector<double> count(g.size() + 1, 0.0);
    count[j] = 1.0;
    for (std::size_t step = 0; step < k; ++step) {
        std::vector<double> next(g.size() + 1, 0.0);
        for (const Edge& e : g.edges()) next[e.target] += count[e.source];
        count = std::move(next);
    }
    return count[i];
}

std::vector<Path> enumerate_paths(const DirectInfluenceGraph& g, Vertex i, Vertex j,
                                  std::size_t k, double budget) {
    const double expected = count_walks(g, i, j, k);
    if (expected > budget) {
        throw BudgetExceeded("P_" + std::to_string(k) + "(" + std::to_string(i) + "," +
                             std::to_string(j) + ") has " + format_real(expected) +
                             " walks, budget is " + format_real(budget));
    }
    const auto reach = reachability(g, i, k);
    std::vector<Path> out;
    out.reserve(static_cast<std::size_t>(expected));
    if (!reach[k][j]) return out;
    Path current;
    current.edges.reserve(k);
    extend(g, reach, j, k, current, out);
    return out;
}

WeightedPathSet omega_path_set(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k,
                               double budget) {
    WeightedPathSet set{enumerate_paths(g, i, j, k, budget), 0.0};
    for (const Path& p : set.paths) set.valuation += p.weight();
    return set;
}

double omega_sum(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k,
                 double budget) {
    return omega_path_set(g, i, j, k, budget).valuation;
}

double omega_sum_by_last_edge(const DirectInfluenceGraph& g, Vertex i, Vertex j, std::size_t k) {
    check_query(g, i, j, k);
    // value[v]: valuation of the walks of the current length from j to v.
    std::vector<double> value(g.size() + 1, 0.0);
    value[j] = 1.0;
    for (std::size_t step = 0; step < k; ++step) {
        std::vector<double> next(g.size() + 1, 0.0);
        for (const Edge& e : g.edges()) next[e.target] += value[e.source] * e.weight;
        value = std::move(next);
    }
    return value[i];
}

DirectInfluenceGraph damped_complete_graph(const Matrix& d, double damping) {
    const Matrix m = damped_matrix(d, damping);
    std::vector<Edge> edges;
    edges.reserve(m.rows() * m.cols());
    for (std::size_t src = 0; src < m.cols(); ++src)
        for (std::size_t dst = 0; dst < m.rows(); ++dst) edges.push_back({src + 1, dst + 1, m(dst, src)});
    return DirectInfluenceGraph(m.rows(), std::move(edges));
}

double rho_sum(const Matrix& d, Vertex i, Vertex j, std::size_t k, double damping,
               OracleRoute route, double budget) {
    const DirectInfluenceGraph complete = damped_complete_graph(d, damping);
    check_query(complete, i, j, k);
    const bool enumerable = count_walks(complete, i, j, k) <= budget;
    if (route == OracleRoute::Enumerate || (route == OracleRoute::Automatic && enumerable)) {
        return omega_sum(complete, i, j, k, budget);
    }
    const Matrix power = mat_pow(damped_matrix(d, damping), static_cast<unsigned>(k));
    return power(i - 1, j - 1);
}

TruncatedSeries omega_lambda_sum(const DirectInfluenceGraph& g, Vertex i, Vertex j, double lambda,
                                 std::size_t max_length, OracleRoute route, double budget) {
    check_query(g, i, j, max_length);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("omega_lambda_sum: lambda must be > 0");
    }

    TruncatedSeries series;
    double coefficient = 1.0 / std::expm1(lambda);  // lambda^k / (e_+^lambda k!)
    for (std::size_t k = 1; k <= max_length; ++k) {
        coefficient *= lambda / static_cast<double>(k);
        double valuation = 0.0;
        const bool enumerable = count_walks(g, i, j, k) <= budget;
        if (route == OracleRoute::Enumerate || (route == OracleRoute::Automatic && enumerable)) {
            valuation = omega_sum(g, i, j, k, budget);
        } else {
            valuation = omega_sum_by_last_edge(g, i, j, k);
        }
        series.value += valuation * coefficient;
    }

    // |omega valuation of P_k(i,j)| = |(D^k)_ij| <= ||D||_inf^k.
    const double growth = lambda * norm_inf(to_matrix(g));
    const double ratio = growth / static_cast<double>(max_length + 2);
    if (growth == 0.0) {
        series.tail_bound = 0.0;
    } else if (ratio < 1.0) {
        // Next bound term: ||D||^{K+1} lambda^{K+1} / (e_+^lambda (K+1)!), in log space.
        const double log_next = static_cast<double>(max_length + 1) * std::log(growth) -
                                std::lgamma(static_cast<double>(max_length + 2)) -
                                std::log(std::expm1(lambda));
        series.tail_bound = std::exp(log_next) / (1.0 - ratio);
    } else {
        series.tail_bound = std::numeric_limits<double>::infinity();
    }
    return series;
}

}  // namespace influx
