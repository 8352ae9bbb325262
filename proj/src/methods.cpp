#include "influx/methods.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "influx/error.hpp"

namespace influx {

namespace {

constexpr double kColumnSumTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_square(const Matrix& d, const char* op) {
    if (!d.square()) {
        throw DimensionMismatch(std::string(op) + ": matrix of direct influences must be square");
    }
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

void normalize_sum(std::vector<double>& x) {
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    for (double& v : x) v /= s;
}

}  // namespace

void validate(const MethodConfig& config) {
    std::visit(overloaded{
                   [](const PwpConfig& c) {
                       if (!(c.lambda > 0.0) || !std::isfinite(c.lambda))
                           throw DomainError("pwp: lambda must be > 0");
                       if (!(c.tol > 0.0)) throw DomainError("pwp: tol must be > 0");
                   },
                   [](const MicmacConfig& c) {
                       if (c.k < 1) throw DomainError("micmac: k must be >= 1");
                   },
                   [](const PageRankConfig& c) {
                       if (!(c.damping > 0.0 && c.damping < 1.0))
                           throw DomainError("pagerank: p must lie strictly inside (0, 1)");
                       if (!(c.tol > 0.0)) throw DomainError("pagerank: tol must be > 0");
                       if (c.max_iter < 1) throw DomainError("pagerank: max_iter must be >= 1");
                   },
               },
               config);
}

std::string method_name(const MethodConfig& config) {
    return std::visit(overloaded{
                          [](const PwpConfig&) { return std::string("pwp"); },
                          [](const MicmacConfig&) { return std::string("micmac"); },
                          [](const PageRankConfig&) { return std::string("pagerank"); },
                      },
                      config);
}

InfluenceVectors influence_dependence(const Matrix& t) {
    require_square(t, "influence_dependence");
    const std::size_t n = t.rows();
    InfluenceVectors v{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            v.dependence[i] += t(i, j);
            v.influence[j] += t(i, j);
        }
    }
    return v;
}

IndirectInfluenceResult micmac(const Matrix& d, unsigned k) {
    validate(MicmacConfig{k});
    require_square(d, "micmac");
    Matrix t = mat_pow(d, k);
    auto vectors = influence_dependence(t);
    return {std::move(t), std::move(vectors), MicmacConfig{k}, std::monostate{}, {}};
}

Matrix pagerank_repair(const Matrix& d) {
    require_square(d, "pagerank_repair");
    const std::size_t n = d.rows();
    Matrix repaired = d;
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d(i, j) < 0.0) {
                throw NotSubstochastic(j + 1, "column " + std::to_string(j + 1) +
                                                  " has a negative entry in row " +
                                                  std::to_string(i + 1));
            }
            sum += d(i, j);
        }
        if (std::abs(sum) <= kColumnSumTol) {
            for (std::size_t i = 0; i < n; ++i) repaired(i, j) = 1.0 / static_cast<double>(n);
        } else if (std::abs(sum - 1.0) > kColumnSumTol) {
            throw NotSubstochastic(j + 1, "column " + std::to_string(j + 1) + " sums to " +
                                              format_real(sum) + ", expected 0 or 1");
        }
    }
    return repaired;
}

Matrix damped_matrix(const Matrix& d, double damping) {
    validate(PageRankConfig{damping, 1.0, 1});
    Matrix m = pagerank_repair(d);
    const double teleport = (1.0 - damping) / static_cast<double>(d.rows());
    for (double& x : m.data()) x = damping * x + teleport;
    return m;
}

IndirectInfluenceResult pagerank(const Matrix& d, const PageRankConfig& config) {
    require_square(d, "pagerank");
    const std::vector<double> uniform(d.rows(), 1.0 / static_cast<double>(d.rows()));
    return pagerank(d, config, uniform);
}

IndirectInfluenceResult pagerank(const Matrix& d, const PageRankConfig& config,
                                 std::span<const double> start) {
    validate(config);
    require_square(d, "pagerank");
    const std::size_t n = d.rows();
    if (start.size() != n) throw DimensionMismatch("pagerank: start vector has wrong length");
    if (std::any_of(start.begin(), start.end(), [](double x) { return !(x >= 0.0); }) ||
        std::accumulate(start.begin(), start.end(), 0.0) <= 0.0) {
        throw DomainError("pagerank: start vector must be nonnegative with positive sum");
    }

    const Matrix m = damped_matrix(d, config.damping);
    std::vector<double> x(start.begin(), start.end());
    normalize_sum(x);

    int iterations = 0;
    for (;;) {
        if (iterations >= config.max_iter) {
            throw NoConvergence("pagerank: no convergence within " +
                                std::to_string(config.max_iter) + " iterations");
        }
        auto next = mat_vec(m, x);
        normalize_sum(next);
        ++iterations;
        const double change = l1_distance(next, x);
        x = std::move(next);
        if (change < config.tol) break;
    }

    const double residual = l1_distance(mat_vec(m, x), x);
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t(i, j) = x[i];
    auto vectors = influence_dependence(t);
    return {std::move(t), std::move(vectors), config, PowerIterationReport{iterations, residual},
            std::move(x)};
}

IndirectInfluenceResult pwp(const Matrix& d, const PwpConfig& config) {
    validate(config);
    require_square(d, "pwp");
    auto [t, report] = pwp_matrix_with_report(d, config.lambda, config.tol);
    auto vectors = influence_dependence(t);
    return {std::move(t), std::move(vectors), config, report, {}};
}

IndirectInfluenceResult compute(const Matrix& d, const MethodConfig& config) {
    return std::visit(overloaded{
                          [&](const PwpConfig& c) { return pwp(d, c); },
                          [&](const MicmacConfig& c) { return micmac(d, c.k); },
                          [&](const PageRankConfig& c) { return pagerank(d, c); },
                      },
                      config);
}

std::vector<RankedVertex> rank_vertices(std::span<const double> scores) {
    std::vector<RankedVertex> ranked;
    ranked.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) ranked.push_back({i + 1, scores[i]});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedVertex& a, const RankedVertex& b) { return a.score > b.score; });
    return ranked;
}

}  // namespace influx
