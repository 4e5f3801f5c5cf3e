#include <cmath>
#include <numeric>

#include "doctest.h"
#include "latlaw/errors.hpp"
#include "latlaw/sampling.hpp"

using namespace latlaw;
using doctest::Approx;

namespace {

std::vector<std::uint64_t> draw(const LawSampler& sampler, std::size_t n, RngState state) {
    Rng rng(state);
    std::vector<std::uint64_t> out(n);
    for (auto& x : out) x = sampler(rng);
    return out;
}

double tv_to_series(const std::vector<std::uint64_t>& xs, const LawSpec& law, std::size_t order) {
    const EmpiricalPmf emp = empirical_pmf(xs, order);
    const LawPmf ref = pmf(law, order);
    return tv_distance(emp.pmf, emp.tail(), ref.pmf, ref.tail_bound);
}

}  // namespace

TEST_CASE("generator reproducibility") {
    Rng a({42, 0}), b({42, 0}), c({42, 1}), d({43, 0});
    bool differs_stream = false, differs_seed = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a(), y = b(), z = c(), w = d();
        CHECK(x == y);
        differs_stream = differs_stream || x != z;
        differs_seed = differs_seed || x != w;
    }
    CHECK(differs_stream);
    CHECK(differs_seed);

    Rng u({1, 0});
    for (int i = 0; i < 10000; ++i) {
        const double v = u.uniform_open();
        CHECK((v > 0.0 && v < 1.0));
    }

    const LawSampler sampler(AlphaPoisson(1.0, 0.5));
    CHECK(draw(sampler, 1000, {7, 3}) == draw(sampler, 1000, {7, 3}));
}

TEST_CASE("positive stable variates") {
    Rng guard({1, 0});
    CHECK_THROWS_AS(sample_positive_stable(1.0, guard), DomainError);
    CHECK_THROWS_AS(sample_positive_stable(0.0, guard), DomainError);

    const std::size_t n = 200000;
    for (double alpha : {0.3, 0.5, 0.8}) {
        Rng rng({5, 0});
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = std::exp(-sample_positive_stable(alpha, rng));
            sum += e;
            sum2 += e * e;
        }
        const double mean = sum / n;
        const double sigma = std::sqrt((sum2 / n - mean * mean) / n);
        CHECK_MESSAGE(std::abs(mean - std::exp(-1.0)) < 3.0 * sigma, "alpha=" << alpha);
    }

    // No finite mean: batch means keep growing.
    Rng rng({6, 0});
    double total = 0.0;
    std::vector<double> means;
    std::size_t count = 0;
    for (std::size_t batch : {1000u, 10000u, 100000u}) {
        while (count < batch) {
            total += sample_positive_stable(0.5, rng);
            ++count;
        }
        means.push_back(total / count);
    }
    CHECK(means[2] > 5.0 * means[0]);
}

TEST_CASE("thinning variates") {
    Rng rng({8, 0});
    CHECK(thin_sample(0, 0.4, rng) == 0);
    CHECK(thin_sample(17, 1.0, rng) == 17);
    const std::size_t n = 20000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += static_cast<double>(thin_sample(1000, 0.3, rng));
    const double sigma = std::sqrt(1000 * 0.3 * 0.7 / n);
    CHECK(std::abs(sum / n - 300.0) < 3.0 * sigma);
}

TEST_CASE("law samplers match their pmfs") {
    const std::size_t n = 1000000;
    const LawSpec ap1 = AlphaPoisson(1.5, 1.0);
    CHECK(tv_to_series(draw(LawSampler(ap1), n, {11, 0}), Poisson(1.5), 64) < 0.005);
    const LawSpec dml1 = DML(1.2, 1.0);
    CHECK(tv_to_series(draw(LawSampler(dml1), n, {12, 0}), dml1, 256) < 0.005);

    // p_0 of AlphaPoisson(1, 0.5) against pgf_eval at 0.
    const auto xs = draw(LawSampler(AlphaPoisson(1.0, 0.5)), n, {13, 0});
    const double p0 = pgf_eval(AlphaPoisson(1.0, 0.5), 0.0);
    const double zeros = static_cast<double>(std::count(xs.begin(), xs.end(), 0u)) / n;
    CHECK(std::abs(zeros - p0) < 3.0 * std::sqrt(p0 * (1 - p0) / n));

    for (const LawSpec& law : {LawSpec(Bernoulli(0.3)), LawSpec(Binomial(7, 0.4)), LawSpec(Poisson(2.5)),
                               LawSpec(Geometric0(1.5)), LawSpec(GeometricShifted(0.35)),
                               LawSpec(AlphaBernoulli(0.6, 0.7)), LawSpec(AlphaBinomial(3, 0.5, 0.8)),
                               LawSpec(DML(1.0, 0.8)), LawSpec(DSS(PsiFunction(0.4, 0.9))),
                               LawSpec(DSML(PsiFunction(0.25, 0.8, 0.5 * PsiFunction::max_amplitude(0.25, 0.8)))),
                               LawSpec(DegenerateAtOne{})}) {
        CHECK_MESSAGE(tv_to_series(draw(LawSampler(law), 200000, {14, 0}), law, 256) < 0.01, format_law(law));
    }
}

TEST_CASE("inverse-CDF route") {
    // Redrawing in the untracked tail samples the table renormalized by
    // 1 / (1 - tail), so the TV bias is about the table tail.
    const LawSpec heavy = DML(1.0, 0.5);
    const LawSampler table_route(heavy, {SamplerRoute::inverse_cdf, 4096, 0.01});
    CHECK(table_route.table_tail() == doctest::Approx(pmf(heavy, 4096).tail_bound));
    CHECK(table_route.table_tail() < 0.01);

    const LawSampler table(AlphaBernoulli(0.5, 0.5));
    CHECK(table.uses_inverse_cdf());
    CHECK_FALSE(LawSampler(Poisson(1.0)).uses_inverse_cdf());
    CHECK(LawSampler(Poisson(1.0), {SamplerRoute::inverse_cdf, 64, 0.01}).uses_inverse_cdf());

    CHECK_THROWS_AS(LawSampler(AlphaBernoulli(0.9, 0.1), {SamplerRoute::automatic, 16, 0.01}), TailTooHeavy);
    CHECK_THROWS_AS(LawSampler(DSS(PsiFunction(0.25, 0.5, 0.3))), NotAValidPMF);

    // Never beyond the table: the tail is redrawn, not clamped.
    const LawSampler small(AlphaBernoulli(0.3, 0.9), {SamplerRoute::automatic, 64, 0.01});
    for (auto x : draw(small, 100000, {15, 0})) CHECK(x <= 64);
}

TEST_CASE("geometric sums") {
    const std::size_t n = 200000;
    Rng rng({16, 0});
    const LawSampler one(DegenerateAtOne{});
    std::vector<std::uint64_t> xs(n);
    for (auto& x : xs) x = geometric_sum_sample(one, 0.3, GeometricConvention::shifted, rng);
    CHECK(tv_to_series(xs, GeometricShifted(0.3), 128) < 0.01);

    Rng rng2({17, 0});
    const LawSampler poisson(Poisson(2.0));
    for (int i = 0; i < 100; ++i) {
        const auto a = geometric_sum_sample(poisson, 1.0, GeometricConvention::shifted, rng2);
        CHECK(a < 30);
    }
    CHECK(sample_geometric_count(1.0, GeometricConvention::shifted, rng2) == 1);
    CHECK(sample_geometric_count(1.0, GeometricConvention::zero_based, rng2) == 0);
}

TEST_CASE("empirical pmf") {
    const std::vector<std::uint64_t> constant(50, 3);
    const EmpiricalPmf c = empirical_pmf(constant, 5);
    CHECK(c.pmf == TruncatedSeries({0, 0, 0, 1, 0, 0}));
    CHECK(c.tail() == 0.0);

    const std::vector<std::uint64_t> two = {1, 4, 1, 1, 4, 9};
    const EmpiricalPmf t = empirical_pmf(two, 5);
    CHECK(t.pmf[1] == Approx(0.5));
    CHECK(t.pmf[4] == Approx(1.0 / 3));
    CHECK(t.beyond == 1);
    CHECK(t.tail() == Approx(1.0 / 6));

    CHECK(tv_distance({0.5, 0.5}, 0.0, {0.5, 0.25}, 0.25) == Approx(0.25));
}

TEST_CASE("seed vote") {
    const std::vector<std::uint64_t> seeds = {1, 2, 3};
    const SeedVote vote = seed_vote(std::span<const std::uint64_t>(seeds), 0.5, 2,
                                    [](std::uint64_t s) { return s == 2 ? 0.9 : 0.1; });
    CHECK(vote.pass);
    CHECK(vote.passes == 2);
    CHECK(vote.statistics.size() == 3);
}
