#include "latlaw/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latlaw/errors.hpp"
#include "latlaw/text.hpp"

namespace latlaw {

namespace {

std::vector<double> grid_or_default(std::span<const double> grid) {
    if (grid.empty()) return default_s_grid();
    return {grid.begin(), grid.end()};
}

std::string num(double x) { return format_double(x); }

CheckReport handle_identity(std::string suite, const std::vector<double>& grid, const TransformHandle& lhs,
                            const TransformHandle& rhs, double tolerance) {
    std::vector<double> dev;
    dev.reserve(grid.size());
    for (double s : grid) dev.push_back(lhs(s) - rhs(s));
    return make_report(std::move(suite), "s", grid, dev, tolerance);
}

/// Sup over the grid of |lhs(s) - rhs(s)| for two series, as a condition.
CheckCondition series_condition(std::string name, const std::vector<double>& grid, const TruncatedSeries& lhs,
                                const TruncatedSeries& rhs, double tolerance, double s_max = 1.0) {
    double worst = 0.0;
    for (double s : grid) {
        if (s > s_max) continue;
        const double d = std::abs(eval(lhs, s) - eval(rhs, s));
        worst = std::max(worst, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
    }
    return {std::move(name) + " <= " + num(tolerance), worst <= tolerance, worst};
}

void check_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ParameterError(std::string(who) + ": alpha must lie in (0, 1], got " + num(alpha));
    }
}

void check_probability(double p, const char* who, const char* name) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ParameterError(std::string(who) + ": " + name + " must lie in (0, 1), got " + num(p));
    }
}

constexpr std::size_t kSeriesRouteOrder = 128;
// Periodic exponents give coefficients that grow like exp(k pi / 2) off the
// real axis, so a truncated sum is only trusted well inside the disc.
constexpr double kSeriesRouteMaxS = 0.5;

}  // namespace

double total_variation(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.size(), b.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += std::abs(a[k] - b[k]);
    return 0.5 * acc;
}

CheckReport abs_monotone_check(const TruncatedSeries& series, double pmf_tol) {
    CheckReport r;
    r.suite = "abs_monotone";
    r.point_label = "k";
    r.tolerance = pmf_tol;
    double worst = 0.0;
    std::size_t worst_k = 0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        if (-series[k] > worst) {
            worst = -series[k];
            worst_k = k;
        }
        if (series[k] < -pmf_tol) r.details.push_back({static_cast<double>(k), series[k]});
    }
    r.residual = worst;
    r.worst_point = static_cast<double>(worst_k);
    r.note = "coefficient nonnegativity up to order " + std::to_string(series.order());
    r.finalize();
    return r;
}

std::vector<double> cm_grid(double s_max) {
    std::vector<double> g;
    for (int j = 40; j >= 0; --j) g.push_back(s_max * std::exp2(-j / 4.0));
    return g;
}

CheckReport cm_grid_check(const std::function<double(double)>& f, double s_max, int depth, double tolerance) {
    if (!(s_max > 0.0) || depth < 1) throw ParameterError("cm_grid_check: need s_max > 0 and depth >= 1");
    const std::vector<double> x = cm_grid(s_max);
    std::vector<double> fx;
    fx.reserve(x.size());
    for (double s : x) fx.push_back(f(s));

    CheckReport r;
    r.suite = "cm_grid";
    r.point_label = "s";
    r.tolerance = tolerance;
    r.residual = 0.0;
    r.worst_point = x.front();
    auto consider = [&r](double violation, double at) {
        if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
        if (violation > r.residual) {
            r.residual = violation;
            r.worst_point = at;
        }
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.details.push_back({x[i], fx[i]});
        consider(-fx[i], x[i]);
    }
    const int max_order = std::min<int>(depth, static_cast<int>(x.size()) - 1);
    std::string first_violation;
    for (int order = 1; order <= max_order; ++order) {
        const double sign = (order % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i + order < x.size(); ++i) {
            double dd = 0.0;
            double scale = 0.0;
            for (int a = 0; a <= order; ++a) {
                double w = 1.0;
                for (int b = 0; b <= order; ++b) {
                    if (b != a) w /= (x[i + a] - x[i + b]);
                }
                dd += w * fx[i + a];
                scale += std::abs(w * fx[i + a]);
            }
            const double normalized = scale > 0.0 ? sign * dd / scale : 0.0;
            if (-normalized > tolerance && first_violation.empty()) {
                first_violation = "derivative order " + std::to_string(order) + " at s=" + num(x[i]);
            }
            consider(-normalized, x[i]);
        }
    }
    r.finalize();
    if (r.pass) {
        r.note = "consistent with CM on (0, " + num(s_max) + "] up to order " + std::to_string(max_order) +
                 " (necessary condition only)";
    } else {
        auto neg = std::find_if(fx.begin(), fx.end(), [](double v) { return v < 0.0; });
        if (neg != fx.end()) {
            const auto i = static_cast<std::size_t>(neg - fx.begin());
            r.note = "not CM: f(" + num(x[i]) + ") = " + num(fx[i]) + " < 0";
        } else {
            r.note = "not CM: sign pattern broken, " + first_violation;
        }
    }
    return r;
}

CheckReport cm_grid_check(const TransformHandle& lt, double s_max, int depth, double tolerance) {
    if (lt.kind() != TransformKind::lt) throw ParameterError("cm_grid_check: argument is not an LT");
    return cm_grid_check([&lt](double s) { return lt(s); }, s_max, depth, tolerance);
}

CheckReport discrete_class_L_check(const LawSpec& law, std::span<const double> alpha_grid, std::size_t order,
                                   double pmf_tol) {
    std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
    if (alphas.empty()) alphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    CheckReport r;
    r.suite = "classL";
    r.point_label = "alpha";
    r.tolerance = pmf_tol;
    r.residual = 0.0;
    r.worst_point = alphas.front();
    std::size_t worst_index = 0;
    for (double alpha : alphas) {
        const TruncatedSeries q = selfdecomp_quotient(law, alpha, order);
        const auto min_it = std::min_element(q.coeffs().begin(), q.coeffs().end());
        const double min_coeff = *min_it;
        r.details.push_back({alpha, min_coeff});
        if (-min_coeff > r.residual) {
            r.residual = -min_coeff;
            r.worst_point = alpha;
            worst_index = static_cast<std::size_t>(min_it - q.coeffs().begin());
        }
    }
    r.finalize();
    r.note = format_law(law) + ": quotient coefficients up to order " + std::to_string(order) +
             (r.pass ? " nonnegative for every alpha (truncation-level evidence)"
                     : ", most negative at index " + std::to_string(worst_index));
    if (!pmf_report(law, order, pmf_tol).valid()) r.note += " (the law itself has negative coefficients)";
    return r;
}

CheckReport thm2_1_check(const LawSpec& law, double c, std::span<const double> grid_in, std::size_t order,
                         double tolerance) {
    const auto grid = grid_or_default(grid_in);
    const TruncatedSeries q = selfdecomp_quotient(law, c, order);
    const TransformHandle P = pgf_handle(law);
    const TransformHandle thinned = thin(P, c);
    const double tail = std::max(0.0, 1.0 - q.sum());
    std::vector<double> dev;
    for (double s : grid) dev.push_back(eval(q, s) - P(s) / thinned(s));
    CheckReport r = make_report("thm2_1", "s", grid, dev, tail + tolerance);
    const CheckReport am = abs_monotone_check(q);
    r.conditions.push_back({"quotient is a pmf (min coefficient)", am.pass, -am.residual});
    r.note = format_law(law) + " at c=" + num(c) + "; series quotient vs P(s)/P(1-c+cs), tolerance includes tail " +
             num(tail);
    r.finalize();
    return r;
}

CheckReport thm3_1_check(double lambda, double alpha, double c, std::span<const double> grid_in,
                         double tolerance) {
    const auto grid = grid_or_default(grid_in);
    const LawSpec p2 = AlphaPoisson(lambda, alpha);
    const LawSpec p1 = AlphaPoisson(lambda * std::pow(c, alpha), alpha);
    CheckReport r = dtype_equal(pgf_handle(p1), pgf_handle(p2), c, grid, tolerance);
    r.suite = "thm3_1";
    const LawPmf base = pmf(p2);
    const TailedSeries thinned = thin(base.pmf, c);
    const TruncatedSeries direct = pgf_series(p1, base.pmf.order());
    // Thinning the truncated pmf loses at most the untracked mass.
    r.conditions.push_back(
        series_condition("series route P1 = P2(1-c+cs)", grid, direct, thinned.series, thinned.tail_bound + kSeriesTol));
    r.finalize();
    return r;
}

CheckReport semi_stable_residual(const PsiFunction& psi, std::span<const double> u_grid, double tolerance) {
    std::vector<double> us(u_grid.begin(), u_grid.end());
    if (us.empty()) {
        for (double s : default_s_grid()) {
            if (s < 1.0) us.push_back(1.0 - s);
        }
        std::sort(us.begin(), us.end());
    }
    std::vector<double> dev;
    for (double u : us) dev.push_back(psi(u) - psi.a() * psi(psi.b() * u));
    CheckReport r = make_report("semistable", "u", us, dev, tolerance);
    r.note = "psi(u) - a psi(b u) with a=" + num(psi.a()) + " b=" + num(psi.b()) + " alpha=" + num(psi.alpha()) +
             " A=" + num(psi.A()) + " k=" + num(psi.k());
    return r;
}

CheckReport thm4_2_check(const PsiFunction& psi, unsigned n, double b, std::span<const double> grid_in,
                         double tolerance) {
    if (n < 1) throw ParameterError("thm4_2: n must be >= 1");
    check_probability(b, "thm4_2", "b");
    const auto grid = grid_or_default(grid_in);
    const LawSpec law = DSS(psi);
    const TransformHandle P = pgf_handle(law);
    CheckReport r = handle_identity("thm4_2", grid, P, convolve_n(thin(P, b), n), tolerance);
    const TruncatedSeries lhs = pgf_series(law, kSeriesRouteOrder);
    const TruncatedSeries rhs = convolve_n(thinned_pgf_series(law, b, kSeriesRouteOrder), n);
    r.conditions.push_back(series_condition("series route on s <= 0.5", grid, lhs, rhs, kSeriesTol, kSeriesRouteMaxS));
    r.note = "exp{-psi(1-s)} vs [exp{-psi(b(1-s))}]^n, n=" + std::to_string(n) + " b=" + num(b) +
             " (psi: a=" + num(psi.a()) + ", A=" + num(psi.A()) + ")";
    r.finalize();
    return r;
}

LimitEstimate limit_ratio(const std::function<double(double)>& g, double alpha) {
    LimitEstimate est;
    for (int j = 4; j <= 20; ++j) {
        const double u = std::exp2(-j);
        est.ratios.push_back(g(u) / std::pow(u, alpha));
    }
    const double r_last = est.ratios.back();
    const double r_prev = est.ratios[est.ratios.size() - 2];
    est.last = r_last;
    const double shrink = std::exp2(-alpha);
    est.extrapolated = (r_last - shrink * r_prev) / (1.0 - shrink);
    est.relative_change = std::abs(r_last - r_prev) / std::abs(r_last);
    const bool finite_positive =
        std::all_of(est.ratios.begin(), est.ratios.end(), [](double v) { return std::isfinite(v) && v > 0.0; });
    est.converged = finite_positive && est.relative_change <= 1e-3;
    return est;
}

LimitEstimate log_growth_limit(const TransformHandle& pgf, double alpha) {
    return limit_ratio([&pgf](double u) { return -std::log(pgf(1.0 - u)); }, alpha);
}

LimitEstimate tail_growth_limit(const TransformHandle& pgf, double alpha) {
    return limit_ratio([&pgf](double u) { return 1.0 - pgf(1.0 - u); }, alpha);
}

CheckReport thm4_4_check(double lambda, double alpha, unsigned n, std::optional<double> b,
                         std::span<const double> grid_in, double tolerance) {
    check_alpha(alpha, "thm4_4");
    if (n < 2) throw ParameterError("thm4_4: n must be >= 2");
    const double bb = b.value_or(std::pow(1.0 / n, 1.0 / alpha));
    check_probability(bb, "thm4_4", "b");
    const auto grid = grid_or_default(grid_in);
    const LawSpec law = AlphaPoisson(lambda, alpha);
    const TransformHandle P = pgf_handle(law);
    CheckReport r = handle_identity("thm4_4", grid, P, convolve_n(thin(P, bb), n), tolerance);
    const LimitEstimate growth = log_growth_limit(P, alpha);
    r.conditions.push_back({"-log P(s)/(1-s)^alpha converges (limit)", growth.converged, growth.extrapolated});
    const TruncatedSeries lhs = pgf_series(law, kSeriesRouteOrder);
    const TruncatedSeries rhs = convolve_n(thinned_pgf_series(law, bb, kSeriesRouteOrder), n);
    r.conditions.push_back(series_condition("series route on s <= 0.5", grid, lhs, rhs, kSeriesTol, kSeriesRouteMaxS));
    r.note = "M ~ " + format_law(law) + " vs sum of " + std::to_string(n) + " copies thinned at b=" + num(bb) +
             " (b^alpha=" + num(std::pow(bb, alpha)) + ")";
    r.finalize();
    return r;
}

CheckReport thm4_5_check(double lambda, double alpha, unsigned m, unsigned n, std::span<const double> grid_in,
                         double tolerance) {
    check_alpha(alpha, "thm4_5");
    if (m < 1 || n <= m) {
        throw ParameterError("thm4_5: requires n > m >= 1, got m=" + std::to_string(m) + " n=" + std::to_string(n));
    }
    const double b = std::pow(static_cast<double>(m) / n, 1.0 / alpha);
    const auto grid = grid_or_default(grid_in);
    const LawSpec law = AlphaPoisson(lambda, alpha);
    const TransformHandle P = pgf_handle(law);
    CheckReport r = handle_identity("thm4_5", grid, convolve_n(P, m), convolve_n(thin(P, b), n), tolerance);
    const TruncatedSeries base = pgf_series(law, kSeriesRouteOrder);
    r.conditions.push_back(series_condition("series route on s <= 0.5", grid, convolve_n(base, m),
                                            convolve_n(thinned_pgf_series(law, b, kSeriesRouteOrder), n),
                                            kSeriesTol, kSeriesRouteMaxS));
    r.note = "[P(s)]^" + std::to_string(m) + " vs [P(1-b+bs)]^" + std::to_string(n) + " with b=" + num(b);
    r.finalize();
    return r;
}

CheckReport thm5_1_check(const PsiFunction& psi, double p, std::optional<double> b, std::span<const double> grid_in,
                         double tolerance) {
    check_probability(p, "thm5_1", "p");
    const double bb = b.value_or(std::pow(p, 1.0 / psi.alpha()));
    check_probability(bb, "thm5_1", "b");
    const auto grid = grid_or_default(grid_in);
    const LawSpec law = DSML(psi);
    const TransformHandle P = pgf_handle(law);
    CheckReport r = handle_identity("thm5_1", grid, P, geometric_compound(thin(P, bb), p), tolerance);
    const TruncatedSeries lhs = pgf_series(law, kSeriesRouteOrder);
    const TruncatedSeries rhs = geometric_compound(thinned_pgf_series(law, bb, kSeriesRouteOrder), p);
    r.conditions.push_back(series_condition("series route on s <= 0.5", grid, lhs, rhs, kSeriesTol, kSeriesRouteMaxS));
    r.note = "1/(1+psi(1-s)) vs geometric(" + num(p) + ") sum thinned at b=" + num(bb) + " (psi: a=" +
             num(psi.a()) + ", 1/p=" + num(1.0 / p) + ", A=" + num(psi.A()) + ")";
    r.finalize();
    return r;
}

CheckReport thm5_5_convergence(const LawSpec& m_law, double alpha, std::span<const double> p_sequence,
                               std::span<const double> grid_in, double tolerance, std::optional<double> lambda) {
    check_alpha(alpha, "thm5_5");
    if (p_sequence.empty()) throw ParameterError("thm5_5: empty p sequence");
    const auto grid = grid_or_default(grid_in);
    const TransformHandle M = pgf_handle(m_law);
    const LimitEstimate growth = tail_growth_limit(M, alpha);
    const double lam = lambda.value_or(growth.extrapolated);
    if (!(lam > 0.0 && std::isfinite(lam))) {
        throw ParameterError("thm5_5: limit lambda is not positive for " + format_law(m_law));
    }
    auto target = [lam, alpha](double s) { return 1.0 / (1.0 + lam * std::pow(1.0 - s, alpha)); };

    CheckReport r;
    r.suite = "thm5_5";
    r.point_label = "p";
    r.tolerance = tolerance;
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double p : p_sequence) {
        check_probability(p, "thm5_5", "p");
        const double b = std::pow(p, 1.0 / alpha);
        const TransformHandle compound = geometric_compound(thin(M, b), p);
        double gap = 0.0;
        for (double s : grid) gap = std::max(gap, std::abs(compound(s) - target(s)));
        r.details.push_back({p, gap});
        if (gap > 1.1 * prev + 1e-9) monotone = false;
        prev = gap;
    }
    r.residual = r.details.back().value;
    r.worst_point = r.details.back().point;
    r.conditions.push_back({"(1-P(s))/(1-s)^alpha converges (limit)", growth.converged, growth.extrapolated});
    r.conditions.push_back({"distance decreases along p", monotone, static_cast<double>(p_sequence.size())});
    r.note = "M ~ " + format_law(m_law) + ", alpha=" + num(alpha) + ", DML limit lambda=" + num(lam);
    r.finalize();
    return r;
}

CheckReport thm5_6_check(double lambda, double alpha, double p, std::optional<double> b,
                         std::span<const double> grid_in, double tolerance) {
    check_alpha(alpha, "thm5_6");
    check_probability(p, "thm5_6", "p");
    if (b && *b > p) {
        throw ParameterError("thm5_6: Bernoulli probability b=" + num(*b) + " exceeds the geometric p=" + num(p) +
                             "; b^alpha = p with alpha <= 1 forces b <= p");
    }
    const double bb = b.value_or(std::pow(p, 1.0 / alpha));
    check_probability(bb, "thm5_6", "b");
    const auto grid = grid_or_default(grid_in);
    const LawSpec law = DML(lambda, alpha);
    const TransformHandle P = pgf_handle(law);
    CheckReport r = handle_identity("thm5_6", grid, P, geometric_compound(thin(P, bb), p), tolerance);
    const TruncatedSeries lhs = pgf_series(law, kSeriesRouteOrder);
    const TruncatedSeries rhs = geometric_compound(thinned_pgf_series(law, bb, kSeriesRouteOrder), p);
    r.conditions.push_back(series_condition("series route on s <= 0.5", grid, lhs, rhs, kSeriesTol, kSeriesRouteMaxS));
    const LimitEstimate growth = tail_growth_limit(P, alpha);
    r.conditions.push_back({"(1-P(s))/(1-s)^alpha converges (limit)", growth.converged, growth.extrapolated});
    r.note = format_law(law) + " as geometric(" + num(p) + ") sum of copies thinned at b=" + num(bb);
    r.finalize();
    return r;
}

CheckReport thm5_7_check(double lambda, double alpha, double p, double p0, std::optional<double> b,
                         std::span<const double> grid_in, double tolerance) {
    check_alpha(alpha, "thm5_7");
    check_probability(p, "thm5_7", "p");
    if (!(p0 > 0.0 && p0 <= 1.0)) throw ParameterError("thm5_7: p0 must lie in (0, 1], got " + num(p0));
    if (!(p < p0)) {
        throw ParameterError("thm5_7: requires p < p0 (and p != p0), got p=" + num(p) + " p0=" + num(p0));
    }
    const double bb = b.value_or(std::pow(p / p0, 1.0 / alpha));
    check_probability(bb, "thm5_7", "b");
    const auto grid = grid_or_default(grid_in);
    const LawSpec law = DML(lambda, alpha);
    const TransformHandle P = pgf_handle(law);
    CheckReport r = handle_identity("thm5_7", grid, geometric_compound(P, p0), geometric_compound(thin(P, bb), p),
                                    tolerance);
    const TruncatedSeries base = pgf_series(law, kSeriesRouteOrder);
    r.conditions.push_back(series_condition(
        "series route on s <= 0.5", grid, geometric_compound(base, p0),
        geometric_compound(thinned_pgf_series(law, bb, kSeriesRouteOrder), p), kSeriesTol, kSeriesRouteMaxS));
    r.note = "geometric(" + num(p0) + ") sum of M vs geometric(" + num(p) + ") sum thinned at b=" + num(bb);
    r.finalize();
    return r;
}

CheckReport thm4_1_convergence(double lambda, double alpha, std::span<const unsigned> n_sequence,
                               std::span<const double> grid_in, double tolerance, std::size_t order) {
    check_alpha(alpha, "thm4_1");
    if (n_sequence.empty()) throw ParameterError("thm4_1: empty n sequence");
    const auto grid = grid_or_default(grid_in);
    const LawSpec limit = AlphaPoisson(lambda, alpha);
    CheckReport r;
    r.suite = "thm4_1";
    r.point_label = "n";
    r.tolerance = tolerance;
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (unsigned n : n_sequence) {
        if (n < 1) throw ParameterError("thm4_1: n must be >= 1");
        const double nd = static_cast<double>(n);
        double gap = 0.0;
        for (double s : grid) {
            const double x = lambda * std::pow(1.0 - s, alpha);
            gap = std::max(gap, std::abs(std::pow(1.0 + x / nd, -nd) - std::exp(-x)));
        }
        r.details.push_back({nd, gap});
        if (!(gap < prev)) monotone = false;
        prev = gap;
    }
    r.residual = r.details.back().value;
    r.worst_point = r.details.back().point;
    r.conditions.push_back({"gap decreases in n", monotone, static_cast<double>(n_sequence.size())});

    const unsigned n_max = n_sequence.back();
    const TruncatedSeries base =
        add_constant(scale(binomial_series(alpha, order), lambda / static_cast<double>(n_max)), 1.0);
    const TruncatedSeries dml_n = reciprocal_series(pow_int(base, n_max));
    const TruncatedSeries target = pgf_series(limit, order);
    const double tv = total_variation(dml_n, target);
    r.conditions.push_back({"pmf total variation at largest n <= " + num(tolerance), tv <= tolerance, tv});
    r.note = "[1+(lambda/n)(1-s)^alpha]^{-n} vs " + format_law(limit);
    r.finalize();
    return r;
}

CheckReport two_scale_check(double alpha, double A, unsigned n1, unsigned n2, std::span<const double> grid_in,
                            double tolerance) {
    if (n1 < 2 || n2 < 2 || n1 == n2) throw ParameterError("two_scale: need distinct n1, n2 >= 2");
    const auto grid = grid_or_default(grid_in);
    const double b1 = std::pow(1.0 / n1, 1.0 / alpha);
    const double b2 = std::pow(1.0 / n2, 1.0 / alpha);
    const PsiFunction power(b1, alpha);
    const PsiFunction periodic(b1, alpha, A);
    const CheckReport pow1 = thm4_2_check(power, n1, b1, grid, tolerance);
    const CheckReport pow2 = thm4_2_check(power, n2, b2, grid, tolerance);
    const CheckReport per1 = thm4_2_check(periodic, n1, b1, grid, tolerance);
    const CheckReport per2 = thm4_2_check(periodic, n2, b2, grid, tolerance);

    CheckReport r = pow1.residual >= pow2.residual ? pow1 : pow2;
    r.suite = "two_scale";
    r.conditions.clear();
    r.conditions.push_back({"power law stable at n1=" + std::to_string(n1), pow1.pass, pow1.residual});
    r.conditions.push_back({"power law stable at n2=" + std::to_string(n2), pow2.pass, pow2.residual});
    r.conditions.push_back({"periodic psi stable at its own n1", per1.pass, per1.residual});
    r.conditions.push_back({"periodic psi rejected at n2", per2.residual > 1e3 * tolerance, per2.residual});
    r.note = "log n1 / log n2 irrationality is not machine-checkable; this only shows the periodic exponent is "
             "pinned to one scale while the power law is not";
    r.finalize();
    return r;
}

}  // namespace latlaw
