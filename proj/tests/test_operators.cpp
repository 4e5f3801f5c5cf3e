#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "doctest.h"
#include "latlaw/errors.hpp"
#include "latlaw/operators.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace latlaw;
using doctest::Approx;

namespace {

double grid_gap(const TransformHandle& f, const TransformHandle& g) {
    double worst = 0.0;
    for (double s : default_s_grid()) worst = std::max(worst, std::abs(f(s) - g(s)));
    return worst;
}

double grid_gap(const TransformHandle& f, const LawSpec& law) { return grid_gap(f, pgf_handle(law)); }

}  // namespace

TEST_CASE("default grid") {
    const auto grid = default_s_grid();
    REQUIRE(grid.size() == 51);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK(grid[1] == Approx(0.02));
}

TEST_CASE("thinning") {
    CHECK(grid_gap(thin(pgf_handle(Poisson(2.0)), 0.3), Poisson(0.6)) < 1e-15);
    CHECK(grid_gap(thin(pgf_handle(AlphaPoisson(1.5, 0.6)), 0.3), AlphaPoisson(1.5 * std::pow(0.3, 0.6), 0.6)) <
          1e-14);
    CHECK(grid_gap(thin(pgf_handle(DegenerateAtOne{}), 0.3), Bernoulli(0.3)) < 1e-15);
    CHECK_THROWS_AS(thin(pgf_handle(Poisson(1.0)), 1.0), DomainError);
    CHECK_THROWS_AS(thin(pgf_handle(Poisson(1.0)), 0.0), DomainError);

    // Closed-form thinning of every family matches the handle route.
    const std::vector<LawSpec> laws = {Bernoulli(0.4),       AlphaBernoulli(0.6, 0.5), Binomial(4, 0.3),
                                       AlphaBinomial(3, 0.5, 0.7), Poisson(1.2),      AlphaPoisson(1, 0.6),
                                       Geometric0(0.8),      DML(1.0, 0.6),            DSS(PsiFunction(0.25, 0.5, 0.3)),
                                       DSML(PsiFunction(0.3, 0.8, 0.2, 1.5)), DegenerateAtOne{}};
    for (const auto& law : laws) {
        const auto thinned = thin_law(law, 0.37);
        REQUIRE_MESSAGE(thinned.has_value(), format_law(law));
        CHECK_MESSAGE(grid_gap(thin(pgf_handle(law), 0.37), *thinned) < 1e-14, format_law(law));
    }
    CHECK_FALSE(thin_law(GeometricShifted(0.4), 0.5).has_value());

    // Exact thinned series vs the lossy truncated route.
    const TruncatedSeries exact = thinned_pgf_series(GeometricShifted(0.4), 0.5, 80);
    const auto lossy = thin(pgf_series(GeometricShifted(0.4), 80), 0.5);
    for (std::size_t k = 0; k <= 80; ++k) CHECK(std::abs(exact[k] - lossy.series[k]) <= lossy.tail_bound + 1e-15);
}

TEST_CASE("property: thinning semigroup") {
    support::Gen gen(31);
    for (int trial = 0; trial < 50; ++trial) {
        const double c1 = gen.uniform(0.01, 0.99), c2 = gen.uniform(0.01, 0.99);
        const TransformHandle p = pgf_handle(DML(gen.uniform(0.1, 3.0), gen.uniform(0.1, 1.0)));
        CHECK(grid_gap(thin(thin(p, c1), c2), thin(p, c1 * c2)) < 1e-12);
    }
}

TEST_CASE("convolution powers") {
    const TransformHandle p = pgf_handle(AlphaPoisson(0.7, 0.6));
    CHECK(grid_gap(convolve_n(p, 1), p) == 0.0);
    CHECK(grid_gap(convolve_n(pgf_handle(Bernoulli(0.3)), 5), Binomial(5, 0.3)) < 1e-15);
    CHECK(grid_gap(convolve_n(p, 4), AlphaPoisson(2.8, 0.6)) < 1e-14);
    const TruncatedSeries series = convolve_n(pgf_series(Bernoulli(0.3), 6), 5);
    const TruncatedSeries binom = pgf_series(Binomial(5, 0.3), 6);
    CHECK(max_abs_diff(series, binom) < 1e-15);
}

TEST_CASE("geometric compounding") {
    CHECK(grid_gap(geometric_compound(pgf_handle(DegenerateAtOne{}), 0.35), GeometricShifted(0.35)) < 1e-15);
    const double lambda = 1.3, alpha = 0.6, p = 0.4;
    const double b = std::pow(p, 1.0 / alpha);
    CHECK(grid_gap(geometric_compound(thin(pgf_handle(DML(lambda, alpha)), b), p), DML(lambda, alpha)) < 1e-14);

    const TransformHandle base = pgf_handle(Poisson(2.0));
    CHECK(grid_gap(geometric_compound(base, 1.0 - 1e-9), base) < 1e-8);
    CHECK_THROWS_AS(geometric_compound(base, 0.0), DomainError);

    // Series and handle routes agree.
    support::Gen gen(32);
    for (int trial = 0; trial < 30; ++trial) {
        const LawSpec law = AlphaBernoulli(gen.uniform(0.1, 0.9), gen.uniform(0.2, 1.0));
        const double q = gen.uniform(0.05, 0.95);
        for (auto conv : {GeometricConvention::shifted, GeometricConvention::zero_based}) {
            const TruncatedSeries series = geometric_compound(pgf_series(law, 256), q, conv);
            const TransformHandle handle = geometric_compound(pgf_handle(law), q, conv);
            const double tail = std::max(0.0, 1.0 - series.sum());
            for (double s = 0.0; s < 0.999; s += 0.1) {
                CHECK(std::abs(eval(series, s) - handle(s)) <= 1e-14 + tail);
            }
        }
    }
}

TEST_CASE("poisson mixture") {
    CHECK(grid_gap(poisson_mixture(exponential_lt(1.0)), Geometric0(1.0)) < 1e-15);
    CHECK(grid_gap(poisson_mixture(point_mass_lt(2.5)), Poisson(2.5)) < 1e-15);

    // Quadrature oracle: int Poisson(w) pmf e^{-w} dw, frozen and recomputed.
    const LawPmf geo = pmf(Geometric0(1.0), 7);
    boost::math::quadrature::exp_sinh<double> integrator;
    for (unsigned k = 0; k < 8; ++k) {
        const double value = integrator.integrate([k](double w) {
            if (w == 0.0) return k == 0 ? 1.0 : 0.0;
            return std::exp(-2.0 * w + k * std::log(w) - std::lgamma(k + 1.0));
        });
        CHECK(std::abs(value - geo.pmf[k]) < 1e-6);
        CHECK(std::abs(oracle::kExpMixedPoisson[k] - geo.pmf[k]) < 1e-6);
    }
}

TEST_CASE("self-decomposability quotient") {
    const double lambda = 1.1, a = 0.6, alpha = 0.4;
    const TruncatedSeries q = selfdecomp_quotient(AlphaPoisson(lambda, a), alpha, 128);
    const TruncatedSeries target = pgf_series(AlphaPoisson(lambda * (1 - std::pow(alpha, a)), a), 128);
    CHECK(max_abs_diff(q, target) < 1e-12);

    const TruncatedSeries qp = selfdecomp_quotient(Poisson(2.0), alpha, 64);
    CHECK(max_abs_diff(qp, pgf_series(Poisson(2.0 * (1 - alpha)), 64)) < 1e-13);

    const TruncatedSeries degenerate = selfdecomp_quotient(DegenerateAtOne{}, alpha, 8);
    // s / (1 - alpha + alpha s): the s^2 coefficient is -alpha / (1 - alpha)^2.
    CHECK(degenerate[2] == Approx(-alpha / ((1 - alpha) * (1 - alpha))).epsilon(1e-12));
    CHECK(degenerate[2] < 0.0);

    // Multiplying back recovers P.
    support::Gen gen(33);
    for (int trial = 0; trial < 30; ++trial) {
        const LawSpec law = DML(gen.uniform(0.1, 2.0), gen.uniform(0.2, 1.0));
        const double c = gen.uniform(0.05, 0.95);
        const TruncatedSeries back = mul(thinned_pgf_series(law, c, 128), selfdecomp_quotient(law, c, 128));
        CHECK(max_abs_diff(back, pgf_series(law, 128)) < 1e-11);
    }
    CHECK_THROWS_AS(selfdecomp_quotient(Poisson(1.0), 1.0, 8), DomainError);
}

TEST_CASE("bernoulli factorization") {
    auto round_trip = [](const LawSpec& law, double b) {
        const BernoulliFactorization f = bernoulli_factorize(law, b);
        return grid_gap(thin(pgf_handle(f.inner), f.thinning_prob), law);
    };
    const BernoulliFactorization dml = bernoulli_factorize(DML(0.5, 0.5), 0.25);
    CHECK(dml.inner == LawSpec(DML(2.0, 0.5)));
    CHECK(dml.thinning_prob == Approx(0.0625).epsilon(1e-15));
    CHECK(round_trip(DML(0.5, 0.5), 0.25) < 1e-12);

    const BernoulliFactorization ab = bernoulli_factorize(AlphaBernoulli(0.3, 1.0), 0.6);
    CHECK(ab.inner == LawSpec(AlphaBernoulli(0.6, 1.0)));
    CHECK(ab.thinning_prob == Approx(0.5).epsilon(1e-15));
    CHECK(round_trip(AlphaBernoulli(0.3, 1.0), 0.6) < 1e-12);

    CHECK_THROWS_AS(bernoulli_factorize(AlphaBernoulli(0.3, 0.5), 0.2), FactorizationInvalid);
    CHECK_THROWS_AS(bernoulli_factorize(AlphaBernoulli(0.3, 0.5), 0.3), FactorizationInvalid);
    CHECK_THROWS_AS(bernoulli_factorize(Binomial(3, 0.3), 0.5), ParameterError);

    // The handle route forms 1 - c + c s, which loses about 1e-16 / c of
    // relative precision in c (1 - s); keep the retention c = b^{1/alpha}
    // above 1e-3 so the 1e-12 budget is meaningful.
    support::Gen gen(34);
    for (int trial = 0; trial < 40; ++trial) {
        const double b = gen.uniform(0.2, 0.95);
        CHECK(round_trip(AlphaPoisson(gen.uniform(0.1, 3.0), gen.uniform(0.3, 1.0)), b) < 1e-12);
        CHECK(round_trip(DML(gen.uniform(0.1, 3.0), gen.uniform(0.3, 1.0)), b) < 1e-12);
        CHECK(round_trip(Poisson(gen.uniform(0.1, 3.0)), b) < 1e-12);
        CHECK(round_trip(Geometric0(gen.uniform(0.1, 3.0)), b) < 1e-12);
        const double lambda = gen.uniform(0.01, 0.9);
        CHECK(round_trip(AlphaBernoulli(lambda, gen.uniform(0.1, 1.0)), gen.uniform(lambda + 0.01, 0.999)) < 1e-12);
    }
}

TEST_CASE("d-type equality") {
    const double c = 0.45;
    const CheckReport pass = dtype_equal(pgf_handle(AlphaPoisson(2.0 * std::pow(c, 0.7), 0.7)),
                                         pgf_handle(AlphaPoisson(2.0, 0.7)), c, default_s_grid());
    CHECK(pass.pass);
    CHECK(pass.residual < 1e-12);

    const CheckReport distinct =
        dtype_equal(pgf_handle(Poisson(1.0)), pgf_handle(Geometric0(1.0)), 0.5, default_s_grid());
    CHECK_FALSE(distinct.pass);
    CHECK(distinct.residual > 0.01);

    const CheckReport self = dtype_equal(pgf_handle(Poisson(1.0)), pgf_handle(Poisson(1.0)), 0.5, default_s_grid());
    CHECK_FALSE(self.pass);
}
