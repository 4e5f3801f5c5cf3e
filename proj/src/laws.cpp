#include "latlaw/laws.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "latlaw/errors.hpp"
#include "latlaw/text.hpp"

namespace latlaw {

namespace {

std::string num(double x) { return format_double(x); }

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }
bool valid_alpha(double alpha) { return alpha > 0.0 && alpha <= 1.0; }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// ---------------------------------------------------------------------------
// PsiFunction

PsiFunction::PsiFunction(double b, double alpha, double A, double scale, double phase)
    : alpha_(alpha), A_(A), b_(b), a_(0.0), k_(0.0), scale_(scale), phase_(phase) {
    require(in_open_unit(b), "PsiFunction: b must lie in (0, 1), got " + num(b));
    require(valid_alpha(alpha), "PsiFunction: alpha must lie in (0, 1], got " + num(alpha));
    require(A >= 0.0 && A < 1.0, "PsiFunction: A must lie in [0, 1), got " + num(A));
    require(scale > 0.0 && std::isfinite(scale), "PsiFunction: scale must be positive");
    require(std::isfinite(phase), "PsiFunction: phase must be finite");
    a_ = std::pow(b, -alpha);
    k_ = -2.0 * std::numbers::pi / std::log(b);
}

PsiFunction PsiFunction::from_scale_pair(double a, double b, double A, double scale) {
    if (!in_open_unit(b) || !(a > 1.0)) {
        throw ParameterError("semi-stable pair needs 0 < b < 1 < a, got a=" + num(a) + " b=" + num(b));
    }
    double alpha = std::log(a) / -std::log(b);
    // a b^alpha = 1 has a root in (0, 1] exactly when a b <= 1.
    if (alpha > 1.0 + 1e-12) {
        throw ParameterError("no alpha in (0, 1] solves a b^alpha = 1 since a b = " + num(a * b) +
                             " > 1");
    }
    alpha = std::min(alpha, 1.0);
    return PsiFunction(b, alpha, A, scale);
}

double PsiFunction::operator()(double u) const {
    if (!(u > 0.0)) throw DomainError("psi: argument must be positive, got " + num(u));
    return scale_ * std::pow(u, alpha_) * (1.0 - A_ * std::cos(k_ * std::log(u) + phase_));
}

double PsiFunction::at_or_zero(double u) const {
    if (u == 0.0) return 0.0;
    return (*this)(u);
}

PsiFunction PsiFunction::dilated(double c) const {
    require(c > 0.0, "PsiFunction::dilated: factor must be positive");
    PsiFunction out = *this;
    out.scale_ = scale_ * std::pow(c, alpha_);
    out.phase_ = phase_ + k_ * std::log(c);
    return out;
}

PsiFunction PsiFunction::detuned(double freq) const {
    PsiFunction out = *this;
    out.k_ = freq;
    return out;
}

TruncatedSeries PsiFunction::series(std::size_t order) const {
    return latlaw::scale(log_cos_compose(alpha_, A_, k_, order, phase_), scale_);
}

namespace {

/// log Gamma(z) for Re z > 0: shift by 10, then the Stirling series.
std::complex<double> log_gamma(std::complex<double> z) {
    std::complex<double> shift = 0.0;
    for (int j = 0; j < 10; ++j) shift += std::log(z + static_cast<double>(j));
    const std::complex<double> w = z + 10.0;
    const std::complex<double> w2 = w * w;
    const std::complex<double> series = 1.0 / (12.0 * w) - 1.0 / (360.0 * w * w2) + 1.0 / (1260.0 * w * w2 * w2);
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

}  // namespace

double PsiFunction::max_amplitude(double b, double alpha) {
    const PsiFunction probe(b, alpha);
    if (alpha == 1.0) return 0.0;
    const double k = probe.k();
    // log of alpha / Gamma(1-alpha) minus log |(alpha + ik) / Gamma(1-alpha-ik)|
    const double log_power = std::log(alpha) - std::lgamma(1.0 - alpha);
    const double log_periodic = std::log(std::hypot(alpha, k)) - log_gamma({1.0 - alpha, -k}).real();
    return std::exp(log_power - log_periodic);
}

double psi_eval(const PsiFunction& psi, double u) { return psi(u); }

// ---------------------------------------------------------------------------
// Families

Bernoulli::Bernoulli(double b_) : b(b_) {
    require(in_open_unit(b), "bernoulli: b must lie in (0, 1), got " + num(b));
}

AlphaBernoulli::AlphaBernoulli(double b_, double alpha_) : b(b_), alpha(alpha_) {
    require(in_open_unit(b), "alpha-bernoulli: b must lie in (0, 1), got " + num(b));
    require(valid_alpha(alpha), "alpha-bernoulli: alpha must lie in (0, 1], got " + num(alpha));
}

Binomial::Binomial(unsigned n_, double b_) : n(n_), b(b_) {
    require(n >= 1, "binomial: n must be >= 1");
    require(in_open_unit(b), "binomial: b must lie in (0, 1), got " + num(b));
}

AlphaBinomial::AlphaBinomial(unsigned n_, double b_, double alpha_) : n(n_), b(b_), alpha(alpha_) {
    require(n >= 1, "alpha-binomial: n must be >= 1");
    require(in_open_unit(b), "alpha-binomial: b must lie in (0, 1), got " + num(b));
    require(valid_alpha(alpha), "alpha-binomial: alpha must lie in (0, 1], got " + num(alpha));
}

Poisson::Poisson(double lambda_) : lambda(lambda_) {
    require(lambda > 0.0 && std::isfinite(lambda), "poisson: lambda must be positive");
}

AlphaPoisson::AlphaPoisson(double lambda_, double alpha_) : lambda(lambda_), alpha(alpha_) {
    require(lambda > 0.0 && std::isfinite(lambda), "alpha-poisson: lambda must be positive");
    require(valid_alpha(alpha), "alpha-poisson: alpha must lie in (0, 1], got " + num(alpha));
}

Geometric0::Geometric0(double lambda_) : lambda(lambda_) {
    require(lambda > 0.0 && std::isfinite(lambda), "geometric0: lambda must be positive");
}

GeometricShifted::GeometricShifted(double p_) : p(p_) {
    require(in_open_unit(p), "geometric-shifted: p must lie in (0, 1), got " + num(p));
}

DML::DML(double lambda_, double alpha_) : lambda(lambda_), alpha(alpha_) {
    require(lambda > 0.0 && std::isfinite(lambda), "dml: lambda must be positive");
    require(valid_alpha(alpha), "dml: alpha must lie in (0, 1], got " + num(alpha));
}

// ---------------------------------------------------------------------------
// Names and the law-spec grammar

namespace {

constexpr std::string_view kNames[] = {
    "bernoulli", "alpha-bernoulli", "binomial", "alpha-binomial", "poisson", "alpha-poisson",
    "geometric0", "geometric-shifted", "dml", "dss", "dsml", "degenerate-at-one"};

static_assert(std::size(kNames) == std::variant_size_v<LawSpec>);

class KeyValues {
public:
    KeyValues(std::string_view family, std::span<const std::string> tokens) : family_(family) {
        for (const auto& tok : tokens) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw ParameterError("law spec: expected key=value, got '" + tok + "'");
            }
            std::string key = tok.substr(0, eq);
            if (values_.count(key)) throw ParameterError("law spec: repeated key '" + tok + "'");
            values_.emplace(std::move(key), tok.substr(eq + 1));
            raw_.emplace(tok.substr(0, eq), tok);
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    double real(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) {
            throw ParameterError("law spec: " + std::string(family_) + " requires " + key + "=");
        }
        used_.push_back(key);
        auto v = parse_double(it->second);
        if (!v) throw ParameterError("law spec: malformed number in '" + raw_.at(key) + "'");
        return *v;
    }

    double real_or(const std::string& key, double fallback) { return has(key) ? real(key) : fallback; }

    unsigned count(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) {
            throw ParameterError("law spec: " + std::string(family_) + " requires " + key + "=");
        }
        used_.push_back(key);
        auto v = parse_unsigned(it->second);
        if (!v || *v == 0 || *v > 1000000ULL) {
            throw ParameterError("law spec: expected a positive integer in '" + raw_.at(key) + "'");
        }
        return static_cast<unsigned>(*v);
    }

    /// Throws on the first key outside `allowed`.
    void restrict_to(std::initializer_list<std::string_view> allowed) const {
        for (const auto& [key, value] : values_) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                throw ParameterError("law spec: unknown key for " + std::string(family_) + ": '" +
                                     raw_.at(key) + "'");
            }
        }
    }

    /// Throws on any key not consumed.
    void finish() const {
        for (const auto& [key, value] : values_) {
            if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
                throw ParameterError("law spec: unknown key for " + std::string(family_) + ": '" +
                                     raw_.at(key) + "'");
            }
        }
    }

private:
    std::string_view family_;
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> raw_;
    std::vector<std::string> used_;
};

PsiFunction parse_psi(KeyValues& kv) {
    const double b = kv.real("b");
    const double A = kv.real_or("A", 0.0);
    const double scale = kv.real_or("lambda", 1.0);
    const double phase = kv.real_or("phase", 0.0);
    if (kv.has("a") && kv.has("alpha")) {
        throw ParameterError("law spec: give either a= or alpha=, not both");
    }
    if (kv.has("a")) {
        PsiFunction psi = PsiFunction::from_scale_pair(kv.real("a"), b, A, scale);
        return PsiFunction(psi.b(), psi.alpha(), A, scale, phase);
    }
    return PsiFunction(b, kv.real("alpha"), A, scale, phase);
}

template <class Fn>
auto wrap_domain(Fn&& fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        throw ParameterError(e.what());
    }
}

}  // namespace

std::string_view family_name(const LawSpec& law) { return kNames[law.index()]; }

std::vector<std::string_view> family_names() { return {std::begin(kNames), std::end(kNames)}; }

LawSpec parse_law(std::span<const std::string> tokens) {
    if (tokens.empty()) throw ParameterError("law spec: missing family name");
    const std::string& family = tokens.front();
    KeyValues kv(family, tokens.subspan(1));
    if (family == "bernoulli") kv.restrict_to({"b"});
    if (family == "alpha-bernoulli") kv.restrict_to({"b", "alpha"});
    if (family == "binomial") kv.restrict_to({"n", "b"});
    if (family == "alpha-binomial") kv.restrict_to({"n", "b", "alpha"});
    if (family == "poisson" || family == "geometric0") kv.restrict_to({"lambda"});
    if (family == "alpha-poisson" || family == "dml") kv.restrict_to({"lambda", "alpha"});
    if (family == "geometric-shifted") kv.restrict_to({"p"});
    if (family == "dss" || family == "dsml") kv.restrict_to({"b", "alpha", "a", "A", "lambda", "phase"});
    if (family == "degenerate-at-one") kv.restrict_to({});
    auto build = [&]() -> LawSpec {
        if (family == "bernoulli") return Bernoulli(kv.real("b"));
        if (family == "alpha-bernoulli") return AlphaBernoulli(kv.real("b"), kv.real("alpha"));
        if (family == "binomial") {
            const unsigned n = kv.count("n");
            return Binomial(n, kv.real("b"));
        }
        if (family == "alpha-binomial") {
            const unsigned n = kv.count("n");
            const double b = kv.real("b");
            return AlphaBinomial(n, b, kv.real("alpha"));
        }
        if (family == "poisson") return Poisson(kv.real("lambda"));
        if (family == "alpha-poisson") {
            const double lambda = kv.real("lambda");
            return AlphaPoisson(lambda, kv.real("alpha"));
        }
        if (family == "geometric0") return Geometric0(kv.real("lambda"));
        if (family == "geometric-shifted") return GeometricShifted(kv.real("p"));
        if (family == "dml") {
            const double lambda = kv.real("lambda");
            return DML(lambda, kv.real("alpha"));
        }
        if (family == "dss") return DSS(parse_psi(kv));
        if (family == "dsml") return DSML(parse_psi(kv));
        if (family == "degenerate-at-one") return DegenerateAtOne{};
        std::string known;
        for (auto n : kNames) known += (known.empty() ? "" : ", ") + std::string(n);
        throw ParameterError("law spec: unknown family '" + family + "' (known: " + known + ")");
    };
    LawSpec law = wrap_domain(build);
    kv.finish();
    return law;
}

LawSpec parse_law(std::string_view text) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(text)};
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    return parse_law(std::span<const std::string>(tokens));
}

std::string format_law(const LawSpec& law) {
    std::string out(family_name(law));
    auto kv = [&out](std::string_view key, double v) {
        out += ' ';
        out += key;
        out += '=';
        out += num(v);
    };
    auto psi_keys = [&](const PsiFunction& psi) {
        kv("b", psi.b());
        kv("alpha", psi.alpha());
        kv("A", psi.A());
        kv("lambda", psi.scale());
        if (psi.phase() != 0.0) kv("phase", psi.phase());
    };
    std::visit(overloaded{
                   [&](const Bernoulli& l) { kv("b", l.b); },
                   [&](const AlphaBernoulli& l) { kv("b", l.b), kv("alpha", l.alpha); },
                   [&](const Binomial& l) { kv("n", l.n), kv("b", l.b); },
                   [&](const AlphaBinomial& l) { kv("n", l.n), kv("b", l.b), kv("alpha", l.alpha); },
                   [&](const Poisson& l) { kv("lambda", l.lambda); },
                   [&](const AlphaPoisson& l) { kv("lambda", l.lambda), kv("alpha", l.alpha); },
                   [&](const Geometric0& l) { kv("lambda", l.lambda); },
                   [&](const GeometricShifted& l) { kv("p", l.p); },
                   [&](const DML& l) { kv("lambda", l.lambda), kv("alpha", l.alpha); },
                   [&](const DSS& l) { psi_keys(l.psi); },
                   [&](const DSML& l) { psi_keys(l.psi); },
                   [&](const DegenerateAtOne&) {},
               },
               law);
    return out;
}

// ---------------------------------------------------------------------------
// Scalar PGFs

double pgf_formula(const LawSpec& law, double s) {
    const double u = 1.0 - s;
    auto upow = [u](double alpha) {
        return alpha == 1.0 ? u : (u < 0.0 ? std::numeric_limits<double>::quiet_NaN() : std::pow(u, alpha));
    };
    auto psi_at = [u](const PsiFunction& psi) {
        return u < 0.0 ? std::numeric_limits<double>::quiet_NaN() : psi.at_or_zero(u);
    };
    return std::visit(
        overloaded{
            [&](const Bernoulli& l) { return 1.0 - l.b * u; },
            [&](const AlphaBernoulli& l) { return 1.0 - l.b * upow(l.alpha); },
            [&](const Binomial& l) { return std::pow(1.0 - l.b * u, static_cast<double>(l.n)); },
            [&](const AlphaBinomial& l) {
                return std::pow(1.0 - l.b * upow(l.alpha), static_cast<double>(l.n));
            },
            [&](const Poisson& l) { return std::exp(-l.lambda * u); },
            [&](const AlphaPoisson& l) { return std::exp(-l.lambda * upow(l.alpha)); },
            [&](const Geometric0& l) { return 1.0 / (1.0 + l.lambda * u); },
            [&](const GeometricShifted& l) { return l.p * s / (1.0 - (1.0 - l.p) * s); },
            [&](const DML& l) { return 1.0 / (1.0 + l.lambda * upow(l.alpha)); },
            [&](const DSS& l) { return std::exp(-psi_at(l.psi)); },
            [&](const DSML& l) { return 1.0 / (1.0 + psi_at(l.psi)); },
            [&](const DegenerateAtOne&) { return s; },
        },
        law);
}

double pgf_eval(const LawSpec& law, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw DomainError("pgf_eval: s must lie in [0, 1], got " + num(s));
    }
    return pgf_formula(law, s);
}

// ---------------------------------------------------------------------------
// Series

TruncatedSeries pgf_series(const LawSpec& law, std::size_t order) {
    auto alpha_bernoulli = [order](double b, double alpha) {
        return add_constant(scale(binomial_series(alpha, order), -b), 1.0);
    };
    return std::visit(
        overloaded{
            [&](const Bernoulli& l) { return TruncatedSeries({1.0 - l.b, l.b}).resized(order); },
            [&](const AlphaBernoulli& l) { return alpha_bernoulli(l.b, l.alpha); },
            [&](const Binomial& l) {
                return pow_int(TruncatedSeries({1.0 - l.b, l.b}).resized(order), l.n);
            },
            [&](const AlphaBinomial& l) { return pow_int(alpha_bernoulli(l.b, l.alpha), l.n); },
            [&](const Poisson& l) { return exp_series(scale(binomial_series(1.0, order), -l.lambda)); },
            [&](const AlphaPoisson& l) {
                return exp_series(scale(binomial_series(l.alpha, order), -l.lambda));
            },
            [&](const Geometric0& l) {
                return reciprocal_series(TruncatedSeries({1.0 + l.lambda, -l.lambda}).resized(order));
            },
            [&](const GeometricShifted& l) {
                auto denom = TruncatedSeries({1.0, -(1.0 - l.p)}).resized(order);
                return shift(scale(reciprocal_series(denom), l.p), 1);
            },
            [&](const DML& l) {
                return reciprocal_series(add_constant(scale(binomial_series(l.alpha, order), l.lambda), 1.0));
            },
            [&](const DSS& l) { return exp_series(scale(l.psi.series(order), -1.0)); },
            [&](const DSML& l) { return reciprocal_series(add_constant(l.psi.series(order), 1.0)); },
            [&](const DegenerateAtOne&) { return TruncatedSeries::monomial(1, order); },
        },
        law);
}

LawPmf pmf_report(const LawSpec& law, std::size_t order, double pmf_tol) {
    TruncatedSeries raw = pgf_series(law, order);
    std::vector<double> c(raw.coeffs().begin(), raw.coeffs().end());
    std::vector<std::size_t> violations;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] < -pmf_tol) {
            violations.push_back(k);
        } else if (c[k] < 0.0) {
            c[k] = 0.0;
        }
    }
    TruncatedSeries series(std::move(c));
    const double tail = series.tail_mass();
    return {std::move(series), tail, std::move(violations)};
}

LawPmf pmf(const LawSpec& law, std::size_t order, double pmf_tol) {
    LawPmf result = pmf_report(law, order, pmf_tol);
    if (!result.valid()) {
        std::string idx;
        for (std::size_t i = 0; i < result.violations.size() && i < 8; ++i) {
            idx += (i ? "," : "") + std::to_string(result.violations[i]);
        }
        if (result.violations.size() > 8) idx += ",...";
        throw NotAValidPMF(format_law(law) + ": " + std::to_string(result.violations.size()) +
                               " coefficient(s) below -" + num(pmf_tol) + " at indices [" + idx + "]",
                           result.violations);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Transform handles

TransformHandle::TransformHandle(TransformKind kind, std::function<double(double)> f, Interval domain,
                                 bool provisional)
    : kind_(kind), f_(std::move(f)), domain_(domain), provisional_(provisional) {
    const double anchor = kind_ == TransformKind::pgf ? 1.0 : 0.0;
    if (!domain_.contains(anchor)) {
        throw DomainError("TransformHandle: domain must contain the normalization point");
    }
    const double value = f_(anchor);
    if (!(std::abs(value - 1.0) <= 1e-12)) {
        throw DomainError(std::string("TransformHandle: ") + (kind_ == TransformKind::pgf ? "P(1)" : "phi(0)") +
                          " = " + num(value) + ", expected 1");
    }
}

double TransformHandle::operator()(double x) const {
    if (!domain_.contains(x)) {
        throw DomainError("TransformHandle: argument " + num(x) + " outside [" + num(domain_.lo) + ", " +
                          num(domain_.hi) + "]");
    }
    return f_(x);
}

TransformHandle pgf_handle(const LawSpec& law) {
    return TransformHandle(
        TransformKind::pgf, [law](double s) { return pgf_formula(law, s); }, {-kInf, 1.0});
}

TransformHandle exponential_lt(double lambda) {
    require(lambda > 0.0, "exponential_lt: lambda must be positive");
    return TransformHandle(
        TransformKind::lt, [lambda](double s) { return 1.0 / (1.0 + lambda * s); }, {0.0, kInf});
}

TransformHandle stable_lt(double lambda, double alpha) {
    require(lambda > 0.0, "stable_lt: lambda must be positive");
    require(valid_alpha(alpha), "stable_lt: alpha must lie in (0, 1]");
    return TransformHandle(
        TransformKind::lt, [lambda, alpha](double s) { return std::exp(-lambda * std::pow(s, alpha)); },
        {0.0, kInf});
}

TransformHandle mittag_leffler_lt(double lambda, double alpha) {
    require(lambda > 0.0, "mittag_leffler_lt: lambda must be positive");
    require(valid_alpha(alpha), "mittag_leffler_lt: alpha must lie in (0, 1]");
    return TransformHandle(
        TransformKind::lt, [lambda, alpha](double s) { return 1.0 / (1.0 + lambda * std::pow(s, alpha)); },
        {0.0, kInf});
}

TransformHandle point_mass_lt(double lambda) {
    require(lambda >= 0.0, "point_mass_lt: location must be nonnegative");
    return TransformHandle(
        TransformKind::lt, [lambda](double s) { return std::exp(-lambda * s); }, {0.0, kInf});
}

TransformHandle pgf_from_lt(const TransformHandle& phi) {
    if (phi.kind() != TransformKind::lt) throw ParameterError("pgf_from_lt: argument is not an LT");
    return TransformHandle(
        TransformKind::pgf, [phi](double s) { return phi(1.0 - s); },
        {1.0 - phi.domain().hi, 1.0 - phi.domain().lo});
}

TransformHandle lt_from_pgf(const TransformHandle& pgf) {
    if (pgf.kind() != TransformKind::pgf) throw ParameterError("lt_from_pgf: argument is not a PGF");
    return TransformHandle(
        TransformKind::lt, [pgf](double s) { return pgf(1.0 - s); },
        {1.0 - pgf.domain().hi, 1.0 - pgf.domain().lo}, /*provisional=*/true);
}

}  // namespace latlaw
