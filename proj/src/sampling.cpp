#include "latlaw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "latlaw/errors.hpp"
#include "latlaw/text.hpp"

namespace latlaw {

namespace {

constexpr double kHuge = 1e15;
constexpr std::uint64_t kSaturate = std::uint64_t{1} << 63;

std::uint64_t saturating_round(double x) {
    if (!(x > 0.0)) return 0;
    if (x >= static_cast<double>(kSaturate)) return kSaturate;
    return static_cast<std::uint64_t>(std::llround(x));
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return (a > kSaturate - std::min(b, kSaturate)) ? kSaturate : a + b;
}

}  // namespace

Rng::Rng(RngState state) {
    std::seed_seq seq{static_cast<std::uint32_t>(state.seed), static_cast<std::uint32_t>(state.seed >> 32),
                      static_cast<std::uint32_t>(state.stream), static_cast<std::uint32_t>(state.stream >> 32),
                      static_cast<std::uint32_t>(kRngVersion)};
    engine_.seed(seq);
}

double Rng::uniform_open() {
    // (k + 0.5) / 2^53 for k in [0, 2^53): never 0 or 1.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform_open()); }

double sample_positive_stable(double alpha, Rng& rng) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("sample_positive_stable: alpha must lie in (0, 1), got " + format_double(alpha) +
                          " (alpha = 1 is the point mass at 1)");
    }
    const double u = std::numbers::pi * rng.uniform_open();
    const double e = rng.exponential();
    const double one_minus = 1.0 - alpha;
    // log A(U) = alpha/(1-alpha) log sin(alpha U) + log sin((1-alpha) U) - 1/(1-alpha) log sin U
    const double log_a = alpha / one_minus * std::log(std::sin(alpha * u)) + std::log(std::sin(one_minus * u)) -
                         std::log(std::sin(u)) / one_minus;
    return std::exp(one_minus / alpha * (log_a - std::log(e)));
}

std::uint64_t sample_poisson(double mean, Rng& rng) {
    if (!(mean >= 0.0)) throw DomainError("sample_poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean > kHuge) {
        if (!std::isfinite(mean)) return kSaturate;
        boost::random::normal_distribution<double> normal(mean, std::sqrt(mean));
        return saturating_round(normal(rng));
    }
    boost::random::poisson_distribution<std::int64_t, double> poisson(mean);
    return static_cast<std::uint64_t>(poisson(rng));
}

std::uint64_t thin_sample(std::uint64_t x, double c, Rng& rng) {
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError("thin_sample: c must lie in [0, 1]");
    if (x == 0 || c == 0.0) return 0;
    if (c == 1.0) return x;
    const double xd = static_cast<double>(x);
    if (xd > kHuge) {
        boost::random::normal_distribution<double> normal(xd * c, std::sqrt(xd * c * (1.0 - c)));
        return std::min(x, saturating_round(normal(rng)));
    }
    boost::random::binomial_distribution<std::int64_t, double> binomial(static_cast<std::int64_t>(x), c);
    return static_cast<std::uint64_t>(binomial(rng));
}

std::uint64_t sample_geometric_count(double p, GeometricConvention convention, Rng& rng) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("geometric count: p must lie in (0, 1]");
    std::uint64_t failures = 0;
    if (p < 1.0) failures = saturating_round(std::floor(std::log(rng.uniform_open()) / std::log1p(-p)));
    return convention == GeometricConvention::shifted ? saturating_add(failures, 1) : failures;
}

// ---------------------------------------------------------------------------

namespace {

bool needs_table(const LawSpec& law) {
    return std::holds_alternative<AlphaBernoulli>(law) || std::holds_alternative<AlphaBinomial>(law) ||
           std::holds_alternative<DSS>(law) || std::holds_alternative<DSML>(law);
}

/// Lambda^{1/alpha} S, the rate whose Poisson mixture has PGF exp{-lambda (1-s)^alpha}.
double stable_rate(double lambda, double alpha, Rng& rng) {
    if (alpha == 1.0) return lambda;
    return std::pow(lambda, 1.0 / alpha) * sample_positive_stable(alpha, rng);
}

}  // namespace

LawSampler::LawSampler(LawSpec law, SamplerOptions options) : law_(std::move(law)) {
    if (options.route == SamplerRoute::inverse_cdf || needs_table(law_)) {
        LawPmf table = pmf(law_, options.order);
        if (table.tail_bound > options.max_tail) {
            throw TailTooHeavy(format_law(law_) + ": untracked mass " + format_double(table.tail_bound) +
                                   " at order " + std::to_string(options.order) + " exceeds " +
                                   format_double(options.max_tail) + "; raise the order",
                               table.tail_bound);
        }
        auto cdf = std::make_shared<std::vector<double>>(table.pmf.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < table.pmf.size(); ++k) {
            acc += table.pmf[k];
            (*cdf)[k] = acc;
        }
        cdf_ = std::move(cdf);
        table_tail_ = table.tail_bound;
    }
}

std::uint64_t LawSampler::operator()(Rng& rng) const {
    if (cdf_) {
        const auto& cdf = *cdf_;
        const double total = cdf.back();
        for (;;) {
            const double u = rng.uniform_open();
            // Landing in the untracked tail: redraw rather than clamp.
            if (u >= total) continue;
            return static_cast<std::uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        }
    }
    struct Visitor {
        Rng& rng;
        std::uint64_t operator()(const Bernoulli& l) const { return rng.uniform_open() < l.b ? 1 : 0; }
        std::uint64_t operator()(const Binomial& l) const { return thin_sample(l.n, l.b, rng); }
        std::uint64_t operator()(const Poisson& l) const { return sample_poisson(l.lambda, rng); }
        std::uint64_t operator()(const AlphaPoisson& l) const {
            return sample_poisson(stable_rate(l.lambda, l.alpha, rng), rng);
        }
        std::uint64_t operator()(const Geometric0& l) const {
            return sample_geometric_count(1.0 / (1.0 + l.lambda), GeometricConvention::zero_based, rng);
        }
        std::uint64_t operator()(const GeometricShifted& l) const {
            return sample_geometric_count(l.p, GeometricConvention::shifted, rng);
        }
        std::uint64_t operator()(const DML& l) const {
            // 1/(1 + lambda u^alpha) = E exp{-lambda W u^alpha}, W ~ Exp(1).
            const double w = rng.exponential();
            return sample_poisson(stable_rate(l.lambda * w, l.alpha, rng), rng);
        }
        std::uint64_t operator()(const DegenerateAtOne&) const { return 1; }
        // Table-backed families never reach the visitor.
        std::uint64_t operator()(const AlphaBernoulli&) const { return unreachable(); }
        std::uint64_t operator()(const AlphaBinomial&) const { return unreachable(); }
        std::uint64_t operator()(const DSS&) const { return unreachable(); }
        std::uint64_t operator()(const DSML&) const { return unreachable(); }
        static std::uint64_t unreachable() { throw std::logic_error("LawSampler: missing pmf table"); }
    };
    return std::visit(Visitor{rng}, law_);
}

std::uint64_t sample(const LawSpec& law, Rng& rng) { return LawSampler(law)(rng); }

std::uint64_t geometric_sum_sample(const LawSampler& summand, double p, GeometricConvention convention, Rng& rng) {
    const std::uint64_t count = sample_geometric_count(p, convention, rng);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < count; ++i) total = saturating_add(total, summand(rng));
    return total;
}

EmpiricalPmf empirical_pmf(std::span<const std::uint64_t> samples, std::size_t order) {
    EmpiricalPmf out;
    out.counts.assign(order + 1, 0);
    for (std::uint64_t x : samples) {
        if (x <= order) {
            ++out.counts[static_cast<std::size_t>(x)];
        } else {
            ++out.beyond;
        }
    }
    out.total = samples.size();
    std::vector<double> freq(order + 1, 0.0);
    if (out.total > 0) {
        const double n = static_cast<double>(out.total);
        for (std::size_t k = 0; k <= order; ++k) freq[k] = static_cast<double>(out.counts[k]) / n;
    }
    out.pmf = TruncatedSeries(std::move(freq));
    return out;
}

double tv_distance(const TruncatedSeries& a, double tail_a, const TruncatedSeries& b, double tail_b) {
    const std::size_t n = std::max(a.size(), b.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = k < a.size() ? a[k] : 0.0;
        const double y = k < b.size() ? b[k] : 0.0;
        acc += std::abs(x - y);
    }
    acc += std::abs(tail_a - tail_b);
    return 0.5 * acc;
}

}  // namespace latlaw
