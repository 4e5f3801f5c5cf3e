#pragma once

// Truncated formal power series in s. Every pmf extraction and identity
// check in the library reduces to the arithmetic in this header.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace latlaw {

inline constexpr std::size_t kDefaultOrder = 256;
inline constexpr double kPmfTol = 1e-9;

/// Coefficients c_0..c_N of a power series truncated at order N.
/// Always holds N+1 finite values.
class TruncatedSeries {
public:
    /// Zero series of order 0.
    TruncatedSeries() : coeffs_(1, 0.0) {}

    /// Throws DomainError on an empty vector or a non-finite coefficient.
    explicit TruncatedSeries(std::vector<double> coeffs);
    TruncatedSeries(std::initializer_list<double> coeffs)
        : TruncatedSeries(std::vector<double>(coeffs)) {}

    static TruncatedSeries zero(std::size_t order);
    /// 1 + 0 s + ... + 0 s^N
    static TruncatedSeries unit(std::size_t order);
    /// s^k truncated at `order` (all zeros if k > order).
    static TruncatedSeries monomial(std::size_t k, std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const { return coeffs_[k]; }

    /// Sum of all tracked coefficients.
    double sum() const noexcept;
    /// max(0, 1 - sum()): probability mass the truncation does not track.
    double tail_mass() const noexcept;

    /// Same coefficients cut or zero-padded to a new order.
    TruncatedSeries resized(std::size_t order) const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<double> coeffs_;
};

/// A series together with the mass it fails to account for.
struct TailedSeries {
    TruncatedSeries series;
    double tail_bound = 0.0;
};

/// Coefficients of (1-s)^alpha via the generalized-binomial product
/// recurrence. alpha must lie in (0, 1].
TruncatedSeries binomial_series(double alpha, std::size_t order);

/// Shorter operand is zero-padded; result has the larger order.
TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, double factor);
/// a + constant (only the s^0 coefficient changes).
TruncatedSeries add_constant(const TruncatedSeries& a, double constant);

/// Cauchy product truncated at min(a.order(), b.order()).
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// exp(u(s)) from g' = u' g, g_0 = e^{u_0}. Throws RangeError if e^{u_0}
/// overflows.
TruncatedSeries exp_series(const TruncatedSeries& u);

/// log(u(s)) for u_0 > 0 (DomainError otherwise).
TruncatedSeries log_series(const TruncatedSeries& u);

/// 1/u(s). Throws SingularError when u_0 == 0.
TruncatedSeries reciprocal_series(const TruncatedSeries& u);

/// a^n by repeated squaring, n >= 1.
TruncatedSeries pow_int(const TruncatedSeries& a, unsigned long long n);

/// Series in s of (1-s)^alpha * (1 - A cos(freq * log(1-s) + phase)).
///
/// cos and sin of freq*log(1-s)+phase are produced together by the
/// coupled recurrences C' = -freq v' S, S' = freq v' C with v = log(1-s).
/// Requires 0 < alpha <= 1 and 0 <= A < 1.
TruncatedSeries log_cos_compose(double alpha, double A, double freq, std::size_t order,
                                double phase = 0.0);

/// Series of s -> P(1 - c + c s), i.e. binomial thinning with retention c.
///
/// q_j = sum_{k>=j} p_k C(k,j) (1-c)^{k-j} c^j, built row by row from the
/// Pascal-type recurrence so that every summand stays nonnegative for a
/// nonnegative input. Mass of the input beyond its order is not seen; the
/// returned tail_bound is the input's untracked mass max(0, 1 - sum p_k).
TailedSeries affine_substitute(const TruncatedSeries& p, double c);

/// Horner evaluation.
double eval(const TruncatedSeries& a, double s) noexcept;

/// Multiply by s^k, keeping the order.
TruncatedSeries shift(const TruncatedSeries& a, std::size_t k);

/// max_k |a_k - b_k| over the common order.
double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace latlaw
