#include "influx/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "influx/error.hpp"

namespace influx {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("lambda must be a positive finite number");
    }
}

}  // namespace

LengthDistribution::LengthDistribution(double lambda) : lambda_(lambda) { check_lambda(lambda); }

double LengthDistribution::pmf(std::uint64_t k) const {
    if (k == 0) throw DomainError("the length law has no mass at k = 0");
    // Direct product is exact to a few ulps for moderate arguments; beyond
    // that, log space avoids overflow of lambda^k and k!.
    if (k <= 30 && lambda_ <= 50.0) {
        double p = 1.0 / std::expm1(lambda_);
        for (std::uint64_t m = 1; m <= k; ++m) p *= lambda_ / static_cast<double>(m);
        return p;
    }
    const double kd = static_cast<double>(k);
    // log(e^lambda - 1) = lambda + log(1 - e^{-lambda})
    const double log_norm = lambda_ + std::log(-std::expm1(-lambda_));
    return std::exp(kd * std::log(lambda_) - std::lgamma(kd + 1.0) - log_norm);
}

double LengthDistribution::tail_bound(std::uint64_t max_length) const {
    const double ratio = lambda_ / static_cast<double>(max_length + 2);
    if (ratio >= 1.0) return 1.0;
    return std::min(1.0, pmf(max_length + 1) / (1.0 - ratio));
}

std::uint64_t LengthDistribution::sample(SplitMix64& rng) const {
    for (;;) {
        const std::uint64_t k = sample_poisson(lambda_, rng);
        if (k > 0) return k;
    }
}

double pmf(double lambda, std::uint64_t k) { return LengthDistribution(lambda).pmf(k); }

double poisson_pmf(double lambda, std::uint64_t k) {
    check_lambda(lambda);
    const double kd = static_cast<double>(k);
    return std::exp(kd * std::log(lambda) - std::lgamma(kd + 1.0) - lambda);
}

MomentSummary moments(double lambda) {
    check_lambda(lambda);
    // Numerators and denominators divided through by e^lambda (e^{2 lambda}
    // for the variance) so that large lambda does not overflow.
    const double q = -std::expm1(-lambda);  // 1 - e^{-lambda}
    MomentSummary m;
    m.mean = lambda / q;
    m.second_moment = (lambda * lambda + lambda) / q;
    m.variance = (lambda - (lambda * lambda + lambda) * std::exp(-lambda)) / (q * q);
    return m;
}

double chebyshev_bound(double lambda, double c) {
    if (!(c > 0.0)) throw DomainError("chebyshev_bound: c must be > 0");
    return std::min(1.0, moments(lambda).variance / (c * c));
}

std::uint64_t sample_length(double lambda, SplitMix64& rng) {
    return LengthDistribution(lambda).sample(rng);
}

double MonteCarloEstimate::mean_length() const {
    if (samples == 0) return 0.0;
    double total = 0.0;
    for (const auto& [k, count] : length_counts) total += static_cast<double>(k * count);
    return total / static_cast<double>(samples);
}

MonteCarloEstimate monte_carlo_pwp(const Matrix& d, double lambda, std::uint64_t samples,
                                   std::uint64_t seed, unsigned workers) {
    if (!d.square()) throw DimensionMismatch("monte_carlo_pwp: matrix must be square");
    if (samples == 0) throw DomainError("monte_carlo_pwp: need at least one sample");
    const LengthDistribution law(lambda);

    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(
                                                           std::min<std::uint64_t>(samples, 256))));
    std::vector<std::map<std::uint64_t, std::uint64_t>> shard_counts(workers);
    auto run_shard = [&](unsigned shard) {
        const std::uint64_t begin = samples * shard / workers;
        const std::uint64_t end = samples * (shard + 1) / workers;
        auto& counts = shard_counts[shard];
        for (std::uint64_t s = begin; s < end; ++s) {
            SplitMix64 rng = SplitMix64::substream(seed, s);
            ++counts[law.sample(rng)];
        }
    };
    if (workers == 1) {
        run_shard(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_shard, w);
    }

    MonteCarloEstimate result;
    result.samples = samples;
    for (const auto& counts : shard_counts)
        for (const auto& [k, c] : counts) result.length_counts[k] += c;

    // Sum count_k * D^k in ascending k, then divide once.
    Matrix total(d.rows(), d.cols());
    for (const auto& [k, count] : result.length_counts) {
        Matrix power = mat_pow(d, static_cast<unsigned>(k));
        power *= static_cast<double>(count);
        total += power;
    }
    for (double& x : total.data()) x /= static_cast<double>(samples);
    result.estimate = std::move(total);
    return result;
}

std::vector<Rational> bernoulli_numbers(unsigned max_index) {
    std::vector<Rational> b(max_index + 1);
    b[0] = 1;
    for (unsigned k = 1; k <= max_index; ++k) {
        // C(k+1, k) B_k = -sum_{j<k} C(k+1, j) B_j
        Rational acc = 0;
        boost::multiprecision::cpp_int binom = 1;  // C(k+1, 0)
        for (unsigned j = 0; j < k; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        b[k] = -acc / Rational(binom);
    }
    return b;
}

double bernoulli_series(double lambda, unsigned max_index) {
    if (!(lambda > 0.0) || !(lambda < 2.0 * std::numbers::pi)) {
        throw DomainError("bernoulli_series: need 0 < lambda < 2 pi, got " + std::to_string(lambda));
    }
    const auto b = bernoulli_numbers(max_index);
    double sum = 0.0;
    double power = 1.0;  // lambda^k / k!
    for (unsigned k = 0; k <= max_index; ++k) {
        if (k > 0) power *= lambda / static_cast<double>(k);
        if (b[k] != 0) sum += b[k].convert_to<double>() * power;
    }
    return sum;
}

}  // namespace influx
