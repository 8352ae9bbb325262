#pragma once

// Test-only helpers: seeded generators and conversions to Eigen, which serves
// as an independent reference for inverses and the matrix exponential.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>
#include <set>
#include <utility>

#include "influx/graph.hpp"
#include "influx/matrix.hpp"

namespace influx::test {

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(n, n);
    for (double& x : m.data()) x = dist(rng);
    return m;
}

/// Random simple digraph on n vertices with up to max_edges edges (loops
/// allowed), weights drawn from `weights`.
inline DirectInfluenceGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t max_edges,
                                         const std::vector<double>& weights) {
    std::uniform_int_distribution<std::size_t> vertex(1, n);
    std::uniform_int_distribution<std::size_t> count(0, max_edges);
    std::uniform_int_distribution<std::size_t> pick(0, weights.size() - 1);
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::vector<Edge> edges;
    const std::size_t target = std::min(count(rng), n * n);
    while (edges.size() < target) {
        const auto s = vertex(rng);
        const auto t = vertex(rng);
        if (used.insert({s, t}).second) edges.push_back({s, t, weights[pick(rng)]});
    }
    return DirectInfluenceGraph(n, std::move(edges));
}

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

inline Matrix inverse(const Matrix& m) { return from_eigen(to_eigen(m).inverse()); }

/// (e^{lambda D} - I) / (e^lambda - 1) by Eigen's Pade scaling-and-squaring.
inline Matrix reference_pwp(const Matrix& d, double lambda) {
    const Eigen::MatrixXd e = (lambda * to_eigen(d)).exp();
    Eigen::MatrixXd shifted = e - Eigen::MatrixXd::Identity(e.rows(), e.cols());
    return from_eigen(shifted / std::expm1(lambda));
}

inline Matrix adjacency(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
    Matrix d(n, n);
    for (auto [from, to] : edges) d(to - 1, from - 1) = 1.0;
    return d;
}

}  // namespace influx::test
