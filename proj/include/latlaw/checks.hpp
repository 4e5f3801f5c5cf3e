#pragma once

// Numerical verification suites for the distributional identities of the
// lattice catalog. All suites are deterministic: same arguments, same
// report, bit for bit.
//
// Grids default to s = 0, 0.02, ..., 1 when an empty span is passed.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "latlaw/laws.hpp"
#include "latlaw/operators.hpp"
#include "latlaw/report.hpp"

namespace latlaw {

/// Coefficient nonnegativity (absolute monotonicity on (0, 1)).
/// residual = max(0, -min coefficient).
CheckReport abs_monotone_check(const TruncatedSeries& series, double pmf_tol = kPmfTol);

/// Geometric grid s_max * 2^{-j/4}, j = 0..40, ascending.
std::vector<double> cm_grid(double s_max = 10.0);

/// Necessary condition for complete monotonicity on a geometric grid:
/// f >= 0 and (-1)^j f[x_i..x_{i+j}] >= 0 for divided differences up to
/// `depth`. Divided differences are normalized by sum |w_i f(x_i)| so the
/// tolerance is relative; negative values of f count at face value.
/// A pass means "consistent with CM", never a proof.
CheckReport cm_grid_check(const std::function<double(double)>& f, double s_max = 10.0, int depth = 6,
                          double tolerance = 1e-9);
CheckReport cm_grid_check(const TransformHandle& lt, double s_max = 10.0, int depth = 6,
                          double tolerance = 1e-9);

/// For every alpha in the grid, the quotient P / P(1 - alpha + alpha s)
/// must have nonnegative coefficients up to `order`. Truncation-level
/// evidence for discrete self-decomposability.
CheckReport discrete_class_L_check(const LawSpec& law, std::span<const double> alpha_grid = {},
                                   std::size_t order = kDefaultOrder, double pmf_tol = kPmfTol);

/// Factorization P(s) = P(1 - c + c s) P_c(s) computed two ways: series
/// division of the pmf, and the scalar quotient P(s) / P(1 - c(1 - s)).
/// Condition: the quotient is itself a pmf.
CheckReport thm2_1_check(const LawSpec& law, double c, std::span<const double> grid = {},
                         std::size_t order = kDefaultOrder, double tolerance = kSeriesTol);

/// D-type pair AlphaPoisson(lambda c^alpha) vs AlphaPoisson(lambda) at c,
/// with the series route P1 = affine_substitute(P2, c) as a condition.
CheckReport thm3_1_check(double lambda, double alpha, double c, std::span<const double> grid = {},
                         double tolerance = kHandleTol);

/// max over u of |psi(u) - a psi(b u)|; default grid u = 0.02, ..., 1.
CheckReport semi_stable_residual(const PsiFunction& psi, std::span<const double> u_grid = {},
                                 double tolerance = kHandleTol);

/// exp{-psi(1-s)} vs [exp{-psi(b(1-s))}]^n.
CheckReport thm4_2_check(const PsiFunction& psi, unsigned n, double b, std::span<const double> grid = {},
                         double tolerance = kHandleTol);

/// Ratio sequence g(u_j) / u_j^alpha at u_j = 2^{-j}, j = 4..20.
struct LimitEstimate {
    std::vector<double> ratios;
    /// Last ratio.
    double last = 0.0;
    /// Richardson-extrapolated limit assuming an O(u^alpha) error term.
    double extrapolated = 0.0;
    /// |r_20 - r_19| / |r_20|
    double relative_change = 0.0;
    /// relative_change <= 1e-3 and the ratios are finite and positive.
    bool converged = false;
};

LimitEstimate limit_ratio(const std::function<double(double)>& g, double alpha);
/// -log P(1 - u) / u^alpha -> lambda  (growth condition for Bernoulli-sum stability).
LimitEstimate log_growth_limit(const TransformHandle& pgf, double alpha);
/// (1 - P(1 - u)) / u^alpha -> lambda  (condition for geometric-sum limits).
LimitEstimate tail_growth_limit(const TransformHandle& pgf, double alpha);

/// M ~ AlphaPoisson(lambda, alpha) against the sum of n thinned copies
/// with b = (1/n)^{1/alpha} (override with `b`): P(s) vs P(1 - b(1-s))^n.
/// Also validates the log-growth limit.
CheckReport thm4_4_check(double lambda, double alpha, unsigned n = 2, std::optional<double> b = std::nullopt,
                         std::span<const double> grid = {}, double tolerance = kHandleTol);

/// [P(s)]^m vs [P(1 - b + b s)]^n with b = (m/n)^{1/alpha}. ParameterError
/// unless n > m >= 1.
CheckReport thm4_5_check(double lambda, double alpha, unsigned m, unsigned n,
                         std::span<const double> grid = {}, double tolerance = kHandleTol);

/// 1 / (1 + psi(1-s)) vs the shifted-geometric(p) sum of copies thinned
/// at b = p^{1/alpha} (override with `b`).
CheckReport thm5_1_check(const PsiFunction& psi, double p, std::optional<double> b = std::nullopt,
                         std::span<const double> grid = {}, double tolerance = kHandleTol);

/// Geometric(p) sums of b-thinned copies of M, b = p^{1/alpha}, against
/// the DML(lambda, alpha) limit along the p sequence. lambda defaults to
/// the extrapolated tail-growth limit of M.
///
/// Pass iff the sup-grid distances decrease (10% slack, 1e-9 floor) and
/// the last one is below the tolerance.
CheckReport thm5_5_convergence(const LawSpec& m_law, double alpha, std::span<const double> p_sequence,
                               std::span<const double> grid = {}, double tolerance = 5e-3,
                               std::optional<double> lambda = std::nullopt);

/// DML(lambda, alpha) fixed point P(s) = p P(1-b+bs) / (1 - q P(1-b+bs)),
/// b = p^{1/alpha} by default. ParameterError if a supplied b exceeds p.
CheckReport thm5_6_check(double lambda, double alpha, double p, std::optional<double> b = std::nullopt,
                         std::span<const double> grid = {}, double tolerance = kHandleTol);

/// geometric(p0) sum of DML copies vs geometric(p) sum of b-thinned
/// copies, b = (p/p0)^{1/alpha}. ParameterError unless p < p0 <= 1.
CheckReport thm5_7_check(double lambda, double alpha, double p, double p0,
                         std::optional<double> b = std::nullopt, std::span<const double> grid = {},
                         double tolerance = kHandleTol);

/// [1 + (lambda/n)(1-s)^alpha]^{-n} -> exp{-lambda (1-s)^alpha}. Pass iff
/// the sup-grid gaps decrease in n, the last gap is below tolerance and
/// the pmf-level total variation at the largest n is below tolerance.
CheckReport thm4_1_convergence(double lambda, double alpha, std::span<const unsigned> n_sequence,
                               std::span<const double> grid = {}, double tolerance = 1e-3,
                               std::size_t order = kDefaultOrder);

/// Constructive stand-in for the two-scale characterizations: the power
/// law passes the n-fold D-type identity at both n1 and n2, and a periodic
/// psi built for n1 fails it at n2. residual is the power-law residual.
CheckReport two_scale_check(double alpha, double A, unsigned n1, unsigned n2,
                            std::span<const double> grid = {}, double tolerance = kHandleTol);

/// 0.5 * sum |a_k - b_k| over the common order.
double total_variation(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace latlaw
