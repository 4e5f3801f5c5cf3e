#include <cmath>

#include "doctest.h"
#include "latlaw/checks.hpp"
#include "latlaw/errors.hpp"

using namespace latlaw;
using doctest::Approx;

namespace {

/// pass == (residual <= tolerance and all conditions hold), worst_point attains residual.
void check_report_invariant(const CheckReport& r) {
    bool conditions_ok = true;
    for (const auto& c : r.conditions) conditions_ok = conditions_ok && c.ok;
    CHECK(r.pass == (r.residual <= r.tolerance && conditions_ok));
}

void check_worst_point(const CheckReport& r) {
    bool found = false;
    for (const auto& row : r.details) {
        if (row.point == r.worst_point && std::abs(std::abs(row.value) - r.residual) <= 1e-300 + 1e-12 * r.residual) {
            found = true;
        }
    }
    CHECK(found);
}

}  // namespace

TEST_CASE("report serialization") {
    CheckReport r = make_report("demo", "s", {0.0, 0.5, 1.0}, {1e-12, -3e-11, std::nan("")}, 1e-10);
    CHECK(r.residual == INFINITY);
    CHECK(r.worst_point == 1.0);
    CHECK_FALSE(r.pass);
    const auto j = to_json(r);
    CHECK(j["suite"] == "demo");
    CHECK(j["verdict"] == "fail");
    CHECK(j["residual"] == "inf");
    CHECK(j["details"].size() == 3);
    CHECK_FALSE(to_json(r, false).contains("details"));
    CHECK(to_text(r).find("FAIL") != std::string::npos);

    const CheckReport ok = make_report("demo", "s", {0.0, 0.5}, {1e-12, -3e-11}, 1e-10);
    CHECK(ok.pass);
    CHECK(ok.residual == 3e-11);
    CHECK(ok.worst_point == 0.5);
}

TEST_CASE("absolute monotonicity") {
    CHECK(abs_monotone_check(pmf(Poisson(1.0), 64).pmf).pass);
    const CheckReport bad = abs_monotone_check({1.0, -0.1});
    CHECK_FALSE(bad.pass);
    CHECK(bad.residual == Approx(0.1));
    CHECK(bad.worst_point == 1.0);
    CHECK(abs_monotone_check(pgf_series(DML(2.0, 0.7), 256)).pass);
}

TEST_CASE("complete monotonicity on a grid") {
    const auto grid = cm_grid(10.0);
    CHECK(grid.size() == 41);
    CHECK(grid.back() == 10.0);
    CHECK(std::find(grid.begin(), grid.end(), 5.0) != grid.end());

    CHECK(cm_grid_check([](double s) { return std::exp(-s); }).pass);
    CHECK(cm_grid_check([](double s) { return 1.0 / (1.0 + s); }).pass);
    CHECK(cm_grid_check(lt_from_pgf(pgf_handle(Geometric0(1.0)))).pass);
    CHECK(cm_grid_check(lt_from_pgf(pgf_handle(Poisson(2.0)))).pass);

    const CheckReport bad = cm_grid_check([](double s) { return 1.0 - 0.5 * std::sqrt(s); });
    CHECK_FALSE(bad.pass);
    const auto at5 = std::find_if(bad.details.begin(), bad.details.end(), [](const CheckRow& r) { return r.point == 5.0; });
    REQUIRE(at5 != bad.details.end());
    CHECK(at5->value < 0.0);
    CHECK(at5->value == Approx(1.0 - 0.5 * std::sqrt(5.0)));

    // Positive but not CM: sign of the first derivative is wrong.
    CHECK_FALSE(cm_grid_check([](double s) { return 1.0 + s; }).pass);
}

TEST_CASE("discrete class L") {
    const CheckReport ap = discrete_class_L_check(AlphaPoisson(1.0, 0.6));
    CHECK(ap.pass);
    check_report_invariant(ap);
    CHECK(discrete_class_L_check(DML(1.0, 0.6)).pass);

    const CheckReport degenerate = discrete_class_L_check(DegenerateAtOne{}, {}, 16);
    CHECK_FALSE(degenerate.pass);
    check_worst_point(degenerate);

    const CheckReport dsml = discrete_class_L_check(DSML(PsiFunction::from_scale_pair(2.0, 0.3, 0.5)));
    CHECK_FALSE(dsml.pass);
    CHECK(dsml.residual > 10 * dsml.tolerance);

    // Admissible amplitude: the law is a pmf but still not self-decomposable.
    const LawSpec valid = DSML(PsiFunction(0.25, 0.5, 6e-5));
    CHECK(pmf_report(valid).valid());
    const CheckReport separated = discrete_class_L_check(valid);
    CHECK_FALSE(separated.pass);
    CHECK(separated.residual > 10 * separated.tolerance);
}

TEST_CASE("self-decomposability factorization") {
    const CheckReport r = thm2_1_check(AlphaPoisson(1.0, 0.6), 0.5);
    CHECK(r.pass);
    check_report_invariant(r);
    CHECK_FALSE(thm2_1_check(DegenerateAtOne{}, 0.5, {}, 32).pass);
}

TEST_CASE("d-type pairs") {
    const CheckReport r = thm3_1_check(1.0, 0.7, 0.5);
    CHECK(r.pass);
    CHECK(r.residual < 1e-12);
    check_report_invariant(r);
}

TEST_CASE("semi-stable functional equation") {
    const double alpha = 0.6;
    const PsiFunction power(std::pow(0.5, 1.0 / alpha), alpha);
    CHECK(power.a() == Approx(2.0));
    CHECK(semi_stable_residual(power).residual < 1e-12);

    const PsiFunction periodic(0.25, 0.5, 0.3);
    const CheckReport ok = semi_stable_residual(periodic);
    CHECK(ok.pass);
    CHECK(ok.residual < 1e-12);
    check_worst_point(ok);

    const CheckReport broken = semi_stable_residual(periodic.detuned(periodic.k() / 2));
    CHECK_FALSE(broken.pass);
    CHECK(broken.residual > 10 * broken.tolerance);
}

TEST_CASE("stability under thinned sums") {
    const double alpha = 0.5;
    const double b = std::pow(0.5, 1.0 / alpha);
    CHECK(thm4_2_check(PsiFunction(b, alpha), 2, b).pass);
    const PsiFunction periodic(b, alpha, 0.3);
    const CheckReport r = thm4_2_check(periodic, 2, b);
    CHECK(r.pass);
    check_report_invariant(r);
    CHECK_FALSE(thm4_2_check(periodic, 3, b).pass);

    const CheckReport ap = thm4_4_check(1.0, 0.5);
    CHECK(ap.pass);
    CHECK(ap.residual < 1e-12);
    CHECK(thm4_4_check(1.0, 1.0).pass);
    CHECK(thm4_4_check(1.0, 0.5, 2, 0.3).residual > 1e-3);

    CHECK(thm4_5_check(1.0, 0.7, 2, 3).pass);
    CHECK(thm4_5_check(1.0, 0.7, 1, 2).pass);  // m = 1, n = 2 is the halving case
    CHECK_THROWS_AS(thm4_5_check(1.0, 0.7, 3, 2), ParameterError);
    CHECK_THROWS_AS(thm4_5_check(1.0, 0.7, 2, 2), ParameterError);
}

TEST_CASE("limit validators") {
    const LimitEstimate ap = log_growth_limit(pgf_handle(AlphaPoisson(1.3, 0.6)), 0.6);
    CHECK(ap.converged);
    for (double r : ap.ratios) CHECK(r == Approx(1.3).epsilon(1e-9));

    const LimitEstimate dml = tail_growth_limit(pgf_handle(DML(1.3, 0.6)), 0.6);
    CHECK(dml.converged);
    CHECK(dml.extrapolated == Approx(1.3).epsilon(1e-6));
    CHECK(std::abs(dml.last - 1.3) > std::abs(dml.extrapolated - 1.3));

    // Wrong exponent: ratios drift to zero.
    CHECK_FALSE(tail_growth_limit(pgf_handle(DML(1.3, 0.6)), 0.3).converged);
}

TEST_CASE("geometric stability") {
    const PsiFunction power(std::pow(0.5, 2.0), 0.5, 0.0, 1.0);
    CHECK(thm5_1_check(power, 0.5).pass);
    const PsiFunction periodic(std::pow(0.5, 2.0), 0.5, 0.4, 1.0);
    CHECK(thm5_1_check(periodic, 0.5).pass);
    CHECK(thm5_1_check(periodic, 0.5, 0.3).residual > 1e-3);

    CHECK(thm5_6_check(1.0, 0.5, 0.25).pass);
    CHECK(thm5_6_check(1.0, 1.0, 0.25).pass);
    CHECK_THROWS_AS(thm5_6_check(1.0, 0.5, 0.25, 0.3), ParameterError);

    CHECK(thm5_7_check(1.0, 0.5, 0.2, 0.8).pass);
    CHECK(thm5_7_check(1.0, 0.5, 0.25, 1.0).pass);  // p0 = 1 is the fixed point
    CHECK_THROWS_AS(thm5_7_check(1.0, 0.5, 0.5, 0.5), ParameterError);
}

TEST_CASE("geometric-sum convergence to the Mittag-Leffler limit") {
    const std::vector<double> ps = {0.5, 0.1, 0.01, 0.001};
    const CheckReport poisson = thm5_5_convergence(Poisson(1.0), 1.0, ps);
    CHECK(poisson.pass);
    check_report_invariant(poisson);
    for (std::size_t i = 1; i < poisson.details.size(); ++i) {
        CHECK(poisson.details[i].value < poisson.details[i - 1].value);
    }
    // Geometric0(lambda) is DML(lambda, 1): a fixed point, gaps are rounding.
    const CheckReport geo = thm5_5_convergence(Geometric0(1.0), 1.0, ps);
    CHECK(geo.pass);
    for (const auto& row : geo.details) CHECK(row.value < 1e-10);
    const CheckReport fixed = thm5_5_convergence(DML(1.0, 0.6), 0.6, ps, {}, 5e-3, 1.0);
    CHECK(fixed.pass);
    for (const auto& row : fixed.details) CHECK(row.value < 1e-10);
}

TEST_CASE("Mittag-Leffler to stable convergence") {
    const std::vector<unsigned> ns = {1, 10, 100, 1000};
    const CheckReport r = thm4_1_convergence(1.0, 0.6, ns);
    CHECK(r.pass);
    check_report_invariant(r);
    CHECK(r.details.back().value < 1e-3);
    // n = 1 is DML itself.
    double gap = 0.0;
    for (double s : default_s_grid()) gap = std::max(gap, std::abs(pgf_eval(DML(1.0, 0.6), s) - pgf_eval(AlphaPoisson(1.0, 0.6), s)));
    CHECK(r.details.front().value == Approx(gap).epsilon(1e-12));
}

TEST_CASE("two-scale demonstration") {
    const CheckReport r = two_scale_check(0.5, 0.4, 2, 3);
    CHECK(r.pass);
    for (const auto& c : r.conditions) CHECK_MESSAGE(c.ok, c.name);
}

TEST_CASE("suites are deterministic") {
    const auto a = to_json(thm5_5_convergence(Poisson(1.0), 1.0, std::vector<double>{0.5, 0.1})).dump();
    const auto b = to_json(thm5_5_convergence(Poisson(1.0), 1.0, std::vector<double>{0.5, 0.1})).dump();
    CHECK(a == b);
}
