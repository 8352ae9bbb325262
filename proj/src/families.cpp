#include "influx/families.hpp"

#include <cmath>
#include <functional>

#include "influx/error.hpp"

namespace influx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Sums term(0) + term(1) + ... where term(m+1) / term(m) = ratio(m) and the
// ratios eventually decrease below 1. Stops once the geometric bound on the
// remaining terms is below 1e-18.
double sum_series(double first, const std::function<double(int)>& ratio) {
    double term = first;
    double sum = 0.0;
    for (int m = 0; m < 100000; ++m) {
        sum += term;
        const double r = ratio(m);
        if (r < 1.0 && term * r / (1.0 - r) < 1e-18) break;
        term *= r;
    }
    return sum;
}

}  // namespace

void validate(const FamilySpec& spec) {
    std::visit([](const auto& s) {
        if (s.n < 1) throw DomainError("family size n must be >= 1");
    }, spec);
    if (const auto* j = std::get_if<Jordan>(&spec); j && !std::isfinite(j->a)) {
        throw DomainError("jordan: a must be finite");
    }
}

std::string family_name(const FamilySpec& spec) {
    return std::visit(overloaded{
                          [](const Line&) { return std::string("line"); },
                          [](const Cycle&) { return std::string("cycle"); },
                          [](const Jordan&) { return std::string("jordan"); },
                          [](const Star&) { return std::string("star"); },
                      },
                      spec);
}

std::size_t vertex_count(const FamilySpec& spec) {
    if (const auto* s = std::get_if<Star>(&spec)) return s->n + 1;
    return std::visit([](const auto& s) { return s.n; }, spec);
}

std::vector<long long> vertex_labels(const FamilySpec& spec) {
    const std::size_t count = vertex_count(spec);
    std::vector<long long> labels(count);
    for (std::size_t v = 0; v < count; ++v) labels[v] = static_cast<long long>(v + 1);
    if (std::holds_alternative<Star>(spec)) labels.back() = 0;
    return labels;
}

DirectInfluenceGraph build(const FamilySpec& spec) {
    validate(spec);
    std::vector<Edge> edges;
    std::visit(overloaded{
                   [&](const Line& s) {
                       for (Vertex i = 1; i < s.n; ++i) edges.push_back({i, i + 1, 1.0});
                   },
                   [&](const Cycle& s) {
                       for (Vertex i = 1; i < s.n; ++i) edges.push_back({i, i + 1, 1.0});
                       edges.push_back({s.n, 1, 1.0});
                   },
                   [&](const Jordan& s) {
                       for (Vertex j = 1; j <= s.n; ++j) {
                           edges.push_back({j, j, s.a});
                           if (j < s.n) edges.push_back({j, j + 1, 1.0});
                       }
                   },
                   [&](const Star& s) {
                       const Vertex center = s.n + 1;
                       for (Vertex i = 1; i <= s.n; ++i) {
                           edges.push_back({center, i, 1.0});
                           edges.push_back({i, center, 1.0});
                       }
                   },
               },
               spec);
    return DirectInfluenceGraph(vertex_count(spec), std::move(edges));
}

Matrix closed_form_pwp(const FamilySpec& spec, double lambda) {
    validate(spec);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be > 0");
    const double norm = std::expm1(lambda);
    const std::size_t count = vertex_count(spec);
    Matrix t(count, count);

    std::visit(
        overloaded{
            [&](const Line& s) {
                // T_{j+s,j} = lambda^s / (e_+^lambda s!)
                for (std::size_t j = 0; j < s.n; ++j) {
                    double coefficient = 1.0 / norm;
                    for (std::size_t off = 1; j + off < s.n; ++off) {
                        coefficient *= lambda / static_cast<double>(off);
                        t(j + off, j) = coefficient;
                    }
                }
            },
            [&](const Cycle& s) {
                // T_{j+s,j} = (1/e_+^lambda) sum_{k>=0} lambda^{nk+s} / (nk+s)!
                const auto n = static_cast<double>(s.n);
                for (std::size_t off = 1; off <= s.n; ++off) {
                    const double first = std::exp(static_cast<double>(off) * std::log(lambda) -
                                                  std::lgamma(static_cast<double>(off) + 1.0));
                    const double value = sum_series(first, [&](int m) {
                        // lambda^n / ((m n + s + 1) ... (m n + s + n))
                        double r = 1.0;
                        const double base = m * n + static_cast<double>(off);
                        for (std::size_t q = 1; q <= s.n; ++q) r *= lambda / (base + static_cast<double>(q));
                        return r;
                    }) / norm;
                    for (std::size_t j = 0; j < s.n; ++j) t((j + off) % s.n, j) = value;
                }
            },
            [&](const Jordan& s) {
                // Off-diagonal: e^{a lambda} lambda^s / ((e^lambda - 1) s!).
                // Diagonal: (e^{a lambda} - 1) / (e^lambda - 1).
                const double diagonal = std::expm1(s.a * lambda) / norm;
                for (std::size_t j = 0; j < s.n; ++j) {
                    t(j, j) = diagonal;
                    double coefficient = std::exp(s.a * lambda) / norm;
                    for (std::size_t off = 1; j + off < s.n; ++off) {
                        coefficient *= lambda / static_cast<double>(off);
                        t(j + off, j) = coefficient;
                    }
                }
            },
            [&](const Star& s) {
                const auto n = static_cast<double>(s.n);
                const double x = lambda * std::sqrt(n);
                const double half = std::sinh(x / 2.0);
                const double cosh_minus_one = 2.0 * half * half;
                // (1/e_+^lambda) sum_{k>=0} n^k lambda^{2k+1} / (2k+1)!
                const double spoke = sum_series(lambda, [&](int m) {
                    return n * lambda * lambda / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
                }) / norm;
                const std::size_t center = s.n;
                t(center, center) = cosh_minus_one / norm;
                for (std::size_t i = 0; i < s.n; ++i) {
                    t(i, center) = spoke;
                    t(center, i) = spoke;
                    for (std::size_t j = 0; j < s.n; ++j) t(i, j) = cosh_minus_one / (n * norm);
                }
            },
        },
        spec);
    return t;
}

std::size_t line_argmax_offset(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be > 0");
    return lambda >= 1.0 ? static_cast<std::size_t>(std::floor(lambda)) : 1;
}

}  // namespace influx
