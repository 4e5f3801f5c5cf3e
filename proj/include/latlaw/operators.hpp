#pragma once

// Structural maps between lattice laws. Each operator exists for both
// representations: scalar transform handles (exact arithmetic on closed
// forms) and truncated series (coefficients). Identity checks run both.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latlaw/laws.hpp"
#include "latlaw/report.hpp"
#include "latlaw/series.hpp"

namespace latlaw {

enum class GeometricConvention {
    /// Count N on {1, 2, ...}, PGF p s / (1 - q s).
    shifted,
    /// Count N on {0, 1, ...}, PGF p / (1 - q s).
    zero_based,
};

/// Binomial thinning c o X: s -> P(1 - c + c s). c in (0, 1).
TransformHandle thin(const TransformHandle& pgf, double c);
/// Series route via affine_substitute; tail_bound carries the input's
/// untracked mass.
TailedSeries thin(const TruncatedSeries& pmf, double c);
/// Closed-form thinned law when the family is closed under thinning
/// (everything except GeometricShifted).
std::optional<LawSpec> thin_law(const LawSpec& law, double c);
/// Coefficients of P(1 - c + c s) for a catalog law, exact to the order
/// (no truncation loss): closed form when available, otherwise exact
/// substitution into the rational form.
TruncatedSeries thinned_pgf_series(const LawSpec& law, double c, std::size_t order);

/// Sum of n i.i.d. copies: P^n.
TransformHandle convolve_n(const TransformHandle& pgf, unsigned n);
TruncatedSeries convolve_n(const TruncatedSeries& pmf, unsigned n);

/// Random sum over a geometric(p) count: p P / (1 - q P) (shifted) or
/// p / (1 - q P) (zero-based). p in (0, 1]; p = 1 is a single summand.
TransformHandle geometric_compound(const TransformHandle& pgf, double p,
                                   GeometricConvention convention = GeometricConvention::shifted);
TruncatedSeries geometric_compound(const TruncatedSeries& pmf, double p,
                                   GeometricConvention convention = GeometricConvention::shifted);

/// Poisson law whose rate is drawn from the law with LT phi. Same map as
/// pgf_from_lt: s -> phi(1 - s).
TransformHandle poisson_mixture(const TransformHandle& phi);

/// Candidate component P_alpha = P / P(1 - alpha + alpha s) of a
/// self-decomposability factorization. The caller decides membership by
/// checking that the result is a pmf.
///
/// The series overload thins the truncated input and so inherits its
/// tail loss in the high coefficients; the law overload thins in closed
/// form and is exact to the order.
TruncatedSeries selfdecomp_quotient(const TruncatedSeries& pmf, double alpha);
TruncatedSeries selfdecomp_quotient(const LawSpec& law, double alpha, std::size_t order = kDefaultOrder);

struct BernoulliFactorization {
    LawSpec inner;
    /// Retention probability c with law = c o inner.
    double thinning_prob;
};

/// Writes a law as a Bernoulli-thinned copy of another law of the same
/// family, with lambda = a b split so that the inner law carries lambda / b.
///
/// Supported: AlphaPoisson, DML, Poisson, Geometric0 (any 0 < b < 1) and
/// AlphaBernoulli, which additionally needs b > lambda so that the
/// retention (lambda / b)^{1/nu} is a probability (FactorizationInvalid
/// otherwise). Other families raise ParameterError.
BernoulliFactorization bernoulli_factorize(const LawSpec& law, double b);

/// Same D-type at retention c: max over the grid of |P1(s) - P2(1 - c + c s)|.
CheckReport dtype_equal(const TransformHandle& p1, const TransformHandle& p2, double c,
                        std::span<const double> grid, double tolerance = 1e-10);

/// Default identity-check grid: s = 0, 0.02, ..., 1 (51 points).
std::vector<double> default_s_grid();
/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

inline constexpr double kHandleTol = 1e-10;
inline constexpr double kSeriesTol = 1e-8;

}  // namespace latlaw
