#include "latlaw/operators.hpp"

#include <cmath>

#include "latlaw/errors.hpp"
#include "latlaw/text.hpp"

namespace latlaw {

namespace {

void check_retention(double c, const char* who) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError(std::string(who) + ": c must lie in (0, 1), got " + format_double(c));
    }
}

void check_geometric_p(double p, const char* who) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw DomainError(std::string(who) + ": p must lie in (0, 1], got " + format_double(p));
    }
}

}  // namespace

TransformHandle thin(const TransformHandle& pgf, double c) {
    check_retention(c, "thin");
    if (pgf.kind() != TransformKind::pgf) throw ParameterError("thin: argument is not a PGF");
    const Interval d = pgf.domain();
    // 1 - c + c s in [lo, hi]  <=>  s in [(lo - 1 + c)/c, (hi - 1 + c)/c]
    return TransformHandle(
        TransformKind::pgf, [pgf, c](double s) { return pgf(1.0 - c + c * s); },
        {(d.lo - 1.0 + c) / c, (d.hi - 1.0 + c) / c});
}

TailedSeries thin(const TruncatedSeries& pmf, double c) {
    check_retention(c, "thin");
    return affine_substitute(pmf, c);
}

std::optional<LawSpec> thin_law(const LawSpec& law, double c) {
    check_retention(c, "thin_law");
    struct Visitor {
        double c;
        std::optional<LawSpec> operator()(const Bernoulli& l) const { return Bernoulli(c * l.b); }
        std::optional<LawSpec> operator()(const AlphaBernoulli& l) const {
            return AlphaBernoulli(l.b * std::pow(c, l.alpha), l.alpha);
        }
        std::optional<LawSpec> operator()(const Binomial& l) const { return Binomial(l.n, c * l.b); }
        std::optional<LawSpec> operator()(const AlphaBinomial& l) const {
            return AlphaBinomial(l.n, l.b * std::pow(c, l.alpha), l.alpha);
        }
        std::optional<LawSpec> operator()(const Poisson& l) const { return Poisson(c * l.lambda); }
        std::optional<LawSpec> operator()(const AlphaPoisson& l) const {
            return AlphaPoisson(l.lambda * std::pow(c, l.alpha), l.alpha);
        }
        std::optional<LawSpec> operator()(const Geometric0& l) const { return Geometric0(c * l.lambda); }
        std::optional<LawSpec> operator()(const GeometricShifted&) const { return std::nullopt; }
        std::optional<LawSpec> operator()(const DML& l) const {
            return DML(l.lambda * std::pow(c, l.alpha), l.alpha);
        }
        std::optional<LawSpec> operator()(const DSS& l) const { return DSS(l.psi.dilated(c)); }
        std::optional<LawSpec> operator()(const DSML& l) const { return DSML(l.psi.dilated(c)); }
        std::optional<LawSpec> operator()(const DegenerateAtOne&) const { return Bernoulli(c); }
    };
    return std::visit(Visitor{c}, law);
}

TruncatedSeries thinned_pgf_series(const LawSpec& law, double c, std::size_t order) {
    if (auto closed = thin_law(law, c)) return pgf_series(*closed, order);
    // GeometricShifted: p(1 - c + c s) / (1 - q(1 - c + c s)), both sides finite.
    const auto& g = std::get<GeometricShifted>(law);
    const double q = 1.0 - g.p;
    const auto numer = TruncatedSeries({g.p * (1.0 - c), g.p * c}).resized(order);
    const auto denom = TruncatedSeries({1.0 - q * (1.0 - c), -q * c}).resized(order);
    return mul(numer, reciprocal_series(denom));
}

TransformHandle convolve_n(const TransformHandle& pgf, unsigned n) {
    if (n == 0) throw DomainError("convolve_n: n must be >= 1");
    return TransformHandle(
        pgf.kind(), [pgf, n](double s) { return std::pow(pgf(s), static_cast<double>(n)); }, pgf.domain());
}

TruncatedSeries convolve_n(const TruncatedSeries& pmf, unsigned n) {
    if (n == 0) throw DomainError("convolve_n: n must be >= 1");
    return pow_int(pmf, n);
}

TransformHandle geometric_compound(const TransformHandle& pgf, double p, GeometricConvention convention) {
    check_geometric_p(p, "geometric_compound");
    const double q = 1.0 - p;
    if (convention == GeometricConvention::shifted) {
        return TransformHandle(
            TransformKind::pgf,
            [pgf, p, q](double s) {
                const double v = pgf(s);
                return p * v / (1.0 - q * v);
            },
            pgf.domain());
    }
    return TransformHandle(
        TransformKind::pgf, [pgf, p, q](double s) { return p / (1.0 - q * pgf(s)); }, pgf.domain());
}

TruncatedSeries geometric_compound(const TruncatedSeries& pmf, double p, GeometricConvention convention) {
    check_geometric_p(p, "geometric_compound");
    const double q = 1.0 - p;
    // 1 - q P(0) >= 1 - q > 0 for any pmf.
    const TruncatedSeries inv = reciprocal_series(add_constant(scale(pmf, -q), 1.0));
    if (convention == GeometricConvention::shifted) return scale(mul(pmf, inv), p);
    return scale(inv, p);
}

TransformHandle poisson_mixture(const TransformHandle& phi) { return pgf_from_lt(phi); }

TruncatedSeries selfdecomp_quotient(const TruncatedSeries& pmf, double alpha) {
    check_retention(alpha, "selfdecomp_quotient");
    const TailedSeries thinned = affine_substitute(pmf, alpha);
    return mul(pmf, reciprocal_series(thinned.series));
}

TruncatedSeries selfdecomp_quotient(const LawSpec& law, double alpha, std::size_t order) {
    check_retention(alpha, "selfdecomp_quotient");
    return mul(pgf_series(law, order), reciprocal_series(thinned_pgf_series(law, alpha, order)));
}

BernoulliFactorization bernoulli_factorize(const LawSpec& law, double b) {
    if (!(b > 0.0 && b < 1.0)) {
        throw DomainError("bernoulli_factorize: b must lie in (0, 1), got " + format_double(b));
    }
    if (const auto* l = std::get_if<AlphaPoisson>(&law)) {
        return {AlphaPoisson(l->lambda / b, l->alpha), std::pow(b, 1.0 / l->alpha)};
    }
    if (const auto* l = std::get_if<DML>(&law)) {
        return {DML(l->lambda / b, l->alpha), std::pow(b, 1.0 / l->alpha)};
    }
    if (const auto* l = std::get_if<Poisson>(&law)) return {Poisson(l->lambda / b), b};
    if (const auto* l = std::get_if<Geometric0>(&law)) return {Geometric0(l->lambda / b), b};
    if (const auto* l = std::get_if<AlphaBernoulli>(&law)) {
        // lambda = a b with the inner law carrying b; the retention a^{1/nu}
        // is a probability only when a = lambda / b < 1.
        if (!(b > l->b)) {
            throw FactorizationInvalid("bernoulli_factorize: alpha-bernoulli with lambda=" + format_double(l->b) +
                                       " needs b > lambda, got b=" + format_double(b) +
                                       "; the cofactor lambda/b would exceed 1");
        }
        return {AlphaBernoulli(b, l->alpha), std::pow(l->b / b, 1.0 / l->alpha)};
    }
    throw ParameterError("bernoulli_factorize: unsupported family " + std::string(family_name(law)));
}

CheckReport dtype_equal(const TransformHandle& p1, const TransformHandle& p2, double c,
                        std::span<const double> grid, double tolerance) {
    check_retention(c, "dtype_equal");
    std::vector<double> points(grid.begin(), grid.end());
    std::vector<double> dev;
    dev.reserve(points.size());
    for (double s : points) dev.push_back(p1(s) - p2(1.0 - c + c * s));
    CheckReport r = make_report("dtype_equal", "s", points, dev, tolerance);
    r.note = "P1(s) vs P2(1 - c + c s) at c=" + format_double(c);
    return r;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n < 2) return {lo};
    std::vector<double> g(n);
    const double span = hi - lo;
    const double steps = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + span * (static_cast<double>(i) / steps);
    g.back() = hi;
    return g;
}

std::vector<double> default_s_grid() { return linear_grid(0.0, 1.0, 51); }

}  // namespace latlaw
