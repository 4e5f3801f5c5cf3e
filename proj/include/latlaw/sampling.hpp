#pragma once

// Random variates for the lattice catalog.
//
// Generator: std::mt19937_64 seeded through std::seed_seq from
// (seed, stream, kRngVersion). Both the engine and seed_seq are fully
// specified by the standard, and the integer-valued distributions come from
// Boost.Random, so a (seed, stream) pair reproduces the same variates on
// any platform. Changing any of this is a breaking change: bump kRngVersion.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "latlaw/laws.hpp"
#include "latlaw/operators.hpp"
#include "latlaw/series.hpp"

namespace latlaw {

inline constexpr std::uint64_t kRngVersion = 1;

struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// UniformRandomBitGenerator over std::mt19937_64.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(RngState state);

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open();
    /// Exp(1).
    double exponential();

private:
    std::mt19937_64 engine_;
};

/// One-sided stable variate with E exp(-t S) = exp(-t^alpha), 0 < alpha < 1,
/// from Kanter's representation S = (A(U) / E)^{(1-alpha)/alpha},
/// U ~ Uniform(0, pi), E ~ Exp(1). DomainError for alpha outside (0, 1).
double sample_positive_stable(double alpha, Rng& rng);

/// Poisson(mean). Means above 1e15 use the normal approximation; results
/// saturate at 2^63.
std::uint64_t sample_poisson(double mean, Rng& rng);

enum class SamplerRoute {
    /// Mixture construction where one exists, inverse CDF otherwise.
    automatic,
    /// Inverse CDF over the series pmf for every family.
    inverse_cdf,
};

struct SamplerOptions {
    SamplerRoute route = SamplerRoute::automatic;
    /// Truncation order of the pmf table for the inverse-CDF route.
    std::size_t order = 4096;
    /// Largest untracked mass tolerated by the inverse-CDF route.
    double max_tail = 0.01;
};

/// Draws from one law. Construction does the expensive work (pmf table for
/// the inverse-CDF route) so repeated draws are cheap.
///
/// Routes: AlphaPoisson draws Lambda = lambda^{1/alpha} S and then
/// Poisson(Lambda); DML does the same with lambda replaced by lambda W,
/// W ~ Exp(1). AlphaBernoulli, AlphaBinomial, DSS and DSML use the inverse
/// CDF of the series pmf and redraw the uniform when it lands in the
/// untracked tail. Throws TailTooHeavy if that tail exceeds max_tail and
/// NotAValidPMF if the coefficients are not a pmf.
class LawSampler {
public:
    explicit LawSampler(LawSpec law, SamplerOptions options = {});

    std::uint64_t operator()(Rng& rng) const;

    const LawSpec& law() const noexcept { return law_; }
    bool uses_inverse_cdf() const noexcept { return cdf_ != nullptr; }
    /// Untracked mass of the inverse-CDF table (0 for other routes).
    double table_tail() const noexcept { return table_tail_; }

private:
    LawSpec law_;
    std::shared_ptr<const std::vector<double>> cdf_;
    double table_tail_ = 0.0;
};

/// Convenience single draw; builds a LawSampler each call.
std::uint64_t sample(const LawSpec& law, Rng& rng);

/// Binomial(x, c): number of survivors when each of x units is kept with
/// probability c.
std::uint64_t thin_sample(std::uint64_t x, double c, Rng& rng);

/// Geometric count under the given convention (shifted: >= 1).
std::uint64_t sample_geometric_count(double p, GeometricConvention convention, Rng& rng);

/// Sum of a geometric(p) number of i.i.d. draws from `summand`.
std::uint64_t geometric_sum_sample(const LawSampler& summand, double p, GeometricConvention convention, Rng& rng);

struct EmpiricalPmf {
    /// Relative frequencies of 0..order.
    TruncatedSeries pmf;
    std::vector<std::uint64_t> counts;
    /// Samples above the order.
    std::uint64_t beyond = 0;
    std::uint64_t total = 0;

    double tail() const noexcept { return total ? static_cast<double>(beyond) / static_cast<double>(total) : 0.0; }
};

EmpiricalPmf empirical_pmf(std::span<const std::uint64_t> samples, std::size_t order);

/// Total variation between two truncated laws, counting the difference of
/// their untracked masses as one extra cell.
double tv_distance(const TruncatedSeries& a, double tail_a, const TruncatedSeries& b, double tail_b);

/// Per-seed statistics and a majority verdict (pass iff at least `needed`
/// seeds have statistic < threshold).
struct SeedVote {
    std::vector<double> statistics;
    std::size_t passes = 0;
    bool pass = false;
};

template <class Fn>
SeedVote seed_vote(std::span<const std::uint64_t> seeds, double threshold, std::size_t needed, Fn&& statistic) {
    SeedVote vote;
    for (std::uint64_t seed : seeds) {
        const double stat = statistic(seed);
        vote.statistics.push_back(stat);
        if (stat < threshold) ++vote.passes;
    }
    vote.pass = vote.passes >= needed;
    return vote;
}

}  // namespace latlaw
