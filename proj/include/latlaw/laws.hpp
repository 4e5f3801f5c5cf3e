#pragma once

// Catalog of lattice laws built as discrete analogues of Laplace transforms
// through P(s) = phi(1 - s), with scalar PGF evaluation and pmf extraction.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latlaw/series.hpp"

namespace latlaw {

/// Semi-stable exponent
///
///     psi(u) = scale * u^alpha * (1 - A cos(k log u + phase)),  k = -2 pi / log b,
///
/// which satisfies psi(u) = a psi(b u) with a = b^{-alpha}. The cosine term
/// is periodic in log u with period -log b, so scale and phase keep the
/// functional equation intact; scale = 1, phase = 0 is the textbook form.
class PsiFunction {
public:
    /// Throws DomainError unless 0 < b < 1, 0 < alpha <= 1, 0 <= A < 1, scale > 0.
    PsiFunction(double b, double alpha, double A = 0.0, double scale = 1.0, double phase = 0.0);

    /// Solves a b^alpha = 1 for alpha. A solution in (0, 1] exists iff a b <= 1;
    /// ParameterError otherwise.
    static PsiFunction from_scale_pair(double a, double b, double A = 0.0, double scale = 1.0);

    double alpha() const noexcept { return alpha_; }
    double A() const noexcept { return A_; }
    double b() const noexcept { return b_; }
    double a() const noexcept { return a_; }
    double k() const noexcept { return k_; }
    double scale() const noexcept { return scale_; }
    double phase() const noexcept { return phase_; }

    /// psi(u) for u > 0; DomainError for u <= 0.
    double operator()(double u) const;
    /// Same, with the continuous extension psi(0) = 0.
    double at_or_zero(double u) const;

    /// s -> psi(c u): scale * c^alpha, phase shifted by k log c.
    PsiFunction dilated(double c) const;

    /// Copy with a different cosine frequency. Breaks the functional
    /// equation unless freq is a multiple of the natural k; used to build
    /// negative controls.
    PsiFunction detuned(double freq) const;

    /// Series of psi(1 - s) in s.
    TruncatedSeries series(std::size_t order) const;

    /// Largest A for which psi has a nonnegative Levy density, i.e. is a
    /// Bernstein function: alpha / Gamma(1 - alpha) over
    /// |(alpha + i k) / Gamma(1 - alpha - i k)|. Zero when alpha = 1.
    /// Above it exp{-t psi} is not a Laplace transform and the semi-stable
    /// lattice laws have negative coefficients.
    static double max_amplitude(double b, double alpha);
    double max_amplitude() const { return max_amplitude(b_, alpha_); }

private:
    double alpha_;
    double A_;
    double b_;
    double a_;
    double k_;
    double scale_;
    double phase_;

    friend bool operator==(const PsiFunction&, const PsiFunction&) = default;
};

/// psi(u); u must be positive.
double psi_eval(const PsiFunction& psi, double u);

// Families. Each constructor validates its parameters (DomainError).

struct Bernoulli {
    explicit Bernoulli(double b);
    double b;
    friend bool operator==(const Bernoulli&, const Bernoulli&) = default;
};

/// PGF 1 - b (1-s)^alpha.
struct AlphaBernoulli {
    AlphaBernoulli(double b, double alpha);
    double b;
    double alpha;
    friend bool operator==(const AlphaBernoulli&, const AlphaBernoulli&) = default;
};

struct Binomial {
    Binomial(unsigned n, double b);
    unsigned n;
    double b;
    friend bool operator==(const Binomial&, const Binomial&) = default;
};

/// PGF [1 - b (1-s)^alpha]^n.
struct AlphaBinomial {
    AlphaBinomial(unsigned n, double b, double alpha);
    unsigned n;
    double b;
    double alpha;
    friend bool operator==(const AlphaBinomial&, const AlphaBinomial&) = default;
};

struct Poisson {
    explicit Poisson(double lambda);
    double lambda;
    friend bool operator==(const Poisson&, const Poisson&) = default;
};

/// Discrete stable: PGF exp{-lambda (1-s)^alpha}.
struct AlphaPoisson {
    AlphaPoisson(double lambda, double alpha);
    double lambda;
    double alpha;
    friend bool operator==(const AlphaPoisson&, const AlphaPoisson&) = default;
};

/// Geometric on {0, 1, ...} with PGF 1 / (1 + lambda (1-s)).
struct Geometric0 {
    explicit Geometric0(double lambda);
    double lambda;
    friend bool operator==(const Geometric0&, const Geometric0&) = default;
};

/// Geometric on {1, 2, ...} with PGF p s / (1 - q s).
struct GeometricShifted {
    explicit GeometricShifted(double p);
    double p;
    friend bool operator==(const GeometricShifted&, const GeometricShifted&) = default;
};

/// Discrete Mittag-Leffler: PGF 1 / (1 + lambda (1-s)^alpha).
struct DML {
    DML(double lambda, double alpha);
    double lambda;
    double alpha;
    friend bool operator==(const DML&, const DML&) = default;
};

/// Discrete semi-stable: PGF exp{-psi(1-s)}.
struct DSS {
    explicit DSS(PsiFunction psi) : psi(psi) {}
    PsiFunction psi;
    friend bool operator==(const DSS&, const DSS&) = default;
};

/// Discrete semi Mittag-Leffler: PGF 1 / (1 + psi(1-s)).
struct DSML {
    explicit DSML(PsiFunction psi) : psi(psi) {}
    PsiFunction psi;
    friend bool operator==(const DSML&, const DSML&) = default;
};

/// PGF s.
struct DegenerateAtOne {
    friend bool operator==(const DegenerateAtOne&, const DegenerateAtOne&) = default;
};

using LawSpec = std::variant<Bernoulli, AlphaBernoulli, Binomial, AlphaBinomial, Poisson,
                             AlphaPoisson, Geometric0, GeometricShifted, DML, DSS, DSML,
                             DegenerateAtOne>;

/// Kebab-case family name used by the law-spec grammar.
std::string_view family_name(const LawSpec& law);
std::vector<std::string_view> family_names();

/// Parses `<family> key=value ...`. Unknown families, unknown or repeated
/// keys, and malformed numbers raise ParameterError naming the token.
LawSpec parse_law(std::span<const std::string> tokens);
LawSpec parse_law(std::string_view text);
/// Canonical `<family> key=value ...` form; parse_law(format_law(x)) == x.
std::string format_law(const LawSpec& law);

/// Closed-form PGF at s in [0, 1]; DomainError otherwise.
double pgf_eval(const LawSpec& law, double s);
/// Closed-form PGF without the [0, 1] guard. Returns NaN where the formula
/// is undefined (e.g. (1-s)^alpha for s > 1).
double pgf_formula(const LawSpec& law, double s);

struct LawPmf {
    TruncatedSeries pmf;
    double tail_bound = 0.0;
    /// Indices whose coefficient fell below -pmf_tol (left unclamped).
    std::vector<std::size_t> violations;

    bool valid() const noexcept { return violations.empty(); }
};

/// Coefficient extraction through the series kernel. Values in
/// [-pmf_tol, 0) are clamped to 0; larger negatives are reported.
LawPmf pmf_report(const LawSpec& law, std::size_t order = kDefaultOrder, double pmf_tol = kPmfTol);
/// As pmf_report, but throws NotAValidPMF when violations exist.
LawPmf pmf(const LawSpec& law, std::size_t order = kDefaultOrder, double pmf_tol = kPmfTol);
/// Raw generating-function coefficients, no validation or clamping.
TruncatedSeries pgf_series(const LawSpec& law, std::size_t order);

// ---------------------------------------------------------------------------
// Transform handles

enum class TransformKind { pgf, lt };

struct Interval {
    double lo;
    double hi;
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// An evaluable PGF or LT. PGFs must satisfy f(1) = 1 and LTs f(0) = 1
/// within 1e-12 (DomainError at construction otherwise).
class TransformHandle {
public:
    TransformHandle(TransformKind kind, std::function<double(double)> f, Interval domain,
                    bool provisional = false);

    /// DomainError outside the domain.
    double operator()(double x) const;

    TransformKind kind() const noexcept { return kind_; }
    const Interval& domain() const noexcept { return domain_; }
    /// True for LT candidates from lt_from_pgf whose complete monotonicity
    /// has not been established.
    bool provisional() const noexcept { return provisional_; }

private:
    TransformKind kind_;
    std::function<double(double)> f_;
    Interval domain_;
    bool provisional_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// PGF handle of a catalog law on s <= 1.
TransformHandle pgf_handle(const LawSpec& law);

/// 1 / (1 + lambda s)
TransformHandle exponential_lt(double lambda);
/// exp{-lambda s^alpha}; alpha = 1 is the point mass at lambda.
TransformHandle stable_lt(double lambda, double alpha);
/// 1 / (1 + lambda s^alpha)
TransformHandle mittag_leffler_lt(double lambda, double alpha);
/// exp{-lambda s}
TransformHandle point_mass_lt(double lambda);

/// s -> phi(1 - s). ParameterError if phi is not an LT.
TransformHandle pgf_from_lt(const TransformHandle& phi);
/// s -> P(1 - s), flagged provisional: complete monotonicity on s > 0 is
/// not implied and has to be checked separately.
TransformHandle lt_from_pgf(const TransformHandle& pgf);

}  // namespace latlaw
