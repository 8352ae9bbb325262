#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "influx/matrix.hpp"
#include "influx/random.hpp"

namespace influx {

/// Zero-truncated Poisson law on k >= 1: p(k) = lambda^k / (e_+^lambda k!).
/// It weights walks of length k in the normalized exponential.
class LengthDistribution {
public:
    explicit LengthDistribution(double lambda);

    double lambda() const noexcept { return lambda_; }
    /// Throws DomainError for k = 0, which carries no mass.
    double pmf(std::uint64_t k) const;
    /// Rigorous bound on sum_{k > K} p(k).
    double tail_bound(std::uint64_t max_length) const;
    std::uint64_t sample(SplitMix64& rng) const;

private:
    double lambda_;
};

double pmf(double lambda, std::uint64_t k);
/// Ordinary Poisson: e^{-lambda} lambda^k / k!.
double poisson_pmf(double lambda, std::uint64_t k);

struct MomentSummary {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
};

/// Closed-form mean, E[X^2] and variance of the length law.
MomentSummary moments(double lambda);

/// Chebyshev: P(|X - EX| >= c) <= min(1, VX / c^2).
double chebyshev_bound(double lambda, double c);

/// Poisson(lambda) resampled until nonzero.
std::uint64_t sample_length(double lambda, SplitMix64& rng);

struct MonteCarloEstimate {
    Matrix estimate;
    /// Sampled length -> number of draws.
    std::map<std::uint64_t, std::uint64_t> length_counts;
    std::uint64_t samples = 0;

    double mean_length() const;
};

/// Averages D^k over `samples` lengths k drawn from the length law. Draw s
/// uses SplitMix64::substream(seed, s), so the estimate depends only on
/// (D, lambda, samples, seed) and not on `workers`.
MonteCarloEstimate monte_carlo_pwp(const Matrix& d, double lambda, std::uint64_t samples,
                                   std::uint64_t seed, unsigned workers = 1);

using Rational = boost::multiprecision::cpp_rational;

/// B_0 .. B_K as exact rationals, from sum_{j=0}^{k} C(k+1, j) B_j = 0 with
/// B_0 = 1 (so B_1 = -1/2).
std::vector<Rational> bernoulli_numbers(unsigned max_index);

/// sum_{k=0}^{K} B_k lambda^k / k!, the series of lambda / (e^lambda - 1).
/// Requires 0 < lambda < 2 pi.
double bernoulli_series(double lambda, unsigned max_index);

}  // namespace influx
