#include "latlaw/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "latlaw/errors.hpp"

namespace latlaw {

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw DomainError("TruncatedSeries: need at least one coefficient");
    }
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!std::isfinite(coeffs_[k])) {
            throw DomainError("TruncatedSeries: non-finite coefficient at index " + std::to_string(k));
        }
    }
}

TruncatedSeries TruncatedSeries::zero(std::size_t order) {
    return TruncatedSeries(std::vector<double>(order + 1, 0.0));
}

TruncatedSeries TruncatedSeries::unit(std::size_t order) {
    std::vector<double> c(order + 1, 0.0);
    c[0] = 1.0;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::monomial(std::size_t k, std::size_t order) {
    std::vector<double> c(order + 1, 0.0);
    if (k <= order) c[k] = 1.0;
    return TruncatedSeries(std::move(c));
}

double TruncatedSeries::sum() const noexcept {
    return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0);
}

double TruncatedSeries::tail_mass() const noexcept { return std::max(0.0, 1.0 - sum()); }

TruncatedSeries TruncatedSeries::resized(std::size_t order) const {
    std::vector<double> c(coeffs_);
    c.resize(order + 1, 0.0);
    return TruncatedSeries(std::move(c));
}

TruncatedSeries binomial_series(double alpha, std::size_t order) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("binomial_series: alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
    // c_k = (-1)^k C(alpha, k);  c_k = c_{k-1} * (k - 1 - alpha) / k
    std::vector<double> c(order + 1, 0.0);
    c[0] = 1.0;
    for (std::size_t k = 1; k <= order; ++k) {
        const double kd = static_cast<double>(k);
        c[k] = c[k - 1] * (kd - 1.0 - alpha) / kd;
    }
    return TruncatedSeries(std::move(c));
}

namespace {

template <class Op>
TruncatedSeries zip(const TruncatedSeries& a, const TruncatedSeries& b, Op op) {
    const std::size_t n = std::max(a.size(), b.size());
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = k < a.size() ? a[k] : 0.0;
        const double y = k < b.size() ? b[k] : 0.0;
        c[k] = op(x, y);
    }
    return TruncatedSeries(std::move(c));
}

}  // namespace

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    return zip(a, b, std::plus<>{});
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return zip(a, b, std::minus<>{});
}

TruncatedSeries scale(const TruncatedSeries& a, double factor) {
    std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
    for (double& x : c) x *= factor;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries add_constant(const TruncatedSeries& a, double constant) {
    std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
    c[0] += constant;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) c[i + j] += ai * b[j];
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries exp_series(const TruncatedSeries& u) {
    const double g0 = std::exp(u[0]);
    if (!std::isfinite(g0)) {
        throw RangeError("exp_series: e^{u_0} overflows for u_0 = " + std::to_string(u[0]));
    }
    const std::size_t n = u.order();
    // k u_k precomputed; n g_n = sum_{k=1}^n k u_k g_{n-k}
    std::vector<double> ku(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) ku[k] = static_cast<double>(k) * u[k];
    std::vector<double> g(n + 1, 0.0);
    g[0] = g0;
    for (std::size_t m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= m; ++k) acc += ku[k] * g[m - k];
        g[m] = acc / static_cast<double>(m);
    }
    return TruncatedSeries(std::move(g));
}

TruncatedSeries log_series(const TruncatedSeries& u) {
    if (!(u[0] > 0.0)) {
        throw DomainError("log_series: constant term must be positive");
    }
    const std::size_t n = u.order();
    std::vector<double> g(n + 1, 0.0);
    g[0] = std::log(u[0]);
    // u g' = u'  =>  m u_0 g_m = m u_m - sum_{k=1}^{m-1} k g_k u_{m-k}
    for (std::size_t m = 1; m <= n; ++m) {
        double acc = static_cast<double>(m) * u[m];
        for (std::size_t k = 1; k < m; ++k) acc -= static_cast<double>(k) * g[k] * u[m - k];
        g[m] = acc / (static_cast<double>(m) * u[0]);
    }
    return TruncatedSeries(std::move(g));
}

TruncatedSeries reciprocal_series(const TruncatedSeries& u) {
    if (u[0] == 0.0) {
        throw SingularError("reciprocal_series: constant term is zero");
    }
    const std::size_t n = u.order();
    const double inv0 = 1.0 / u[0];
    std::vector<double> g(n + 1, 0.0);
    g[0] = inv0;
    for (std::size_t m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= m; ++k) acc += u[k] * g[m - k];
        g[m] = -acc * inv0;
    }
    return TruncatedSeries(std::move(g));
}

TruncatedSeries pow_int(const TruncatedSeries& a, unsigned long long n) {
    if (n == 0) {
        throw DomainError("pow_int: exponent must be >= 1");
    }
    TruncatedSeries result = a;
    TruncatedSeries base = a;
    --n;
    while (n > 0) {
        if (n & 1ULL) result = mul(result, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

TruncatedSeries log_cos_compose(double alpha, double A, double freq, std::size_t order,
                                double phase) {
    if (!(A >= 0.0 && A < 1.0)) {
        throw DomainError("log_cos_compose: amplitude A must lie in [0, 1), got " + std::to_string(A));
    }
    TruncatedSeries power = binomial_series(alpha, order);
    if (A == 0.0) return power;

    const std::size_t n = order;
    // v = log(1-s): v_j = -1/j, so j v_j = -1.
    std::vector<double> cs(n + 1, 0.0);
    std::vector<double> sn(n + 1, 0.0);
    cs[0] = std::cos(phase);
    sn[0] = std::sin(phase);
    // Running sums of S_0..S_{m-1} and C_0..C_{m-1}.
    double sum_s = 0.0;
    double sum_c = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
        sum_s += sn[m - 1];
        sum_c += cs[m - 1];
        const double md = static_cast<double>(m);
        // m C_m = -freq sum j v_j S_{m-j} = freq sum S_{m-j}
        cs[m] = freq * sum_s / md;
        sn[m] = -freq * sum_c / md;
    }
    std::vector<double> h(n + 1, 0.0);
    for (std::size_t m = 0; m <= n; ++m) h[m] = -A * cs[m];
    h[0] += 1.0;
    return mul(power, TruncatedSeries(std::move(h)));
}

TailedSeries affine_substitute(const TruncatedSeries& p, double c) {
    if (!(c > 0.0 && c <= 1.0)) {
        throw DomainError("affine_substitute: c must lie in (0, 1], got " + std::to_string(c));
    }
    const double tail = p.tail_mass();
    if (c == 1.0) return {p, tail};

    const std::size_t n = p.order();
    const double keep = c;
    const double drop = 1.0 - c;
    std::vector<double> q(n + 1, 0.0);
    // row[j] = C(k,j) (1-c)^{k-j} c^j for the current k
    std::vector<double> row(n + 1, 0.0);
    row[0] = 1.0;
    q[0] += p[0];
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t j = k; j >= 1; --j) row[j] = drop * row[j] + keep * row[j - 1];
        row[0] *= drop;
        const double pk = p[k];
        if (pk == 0.0) continue;
        for (std::size_t j = 0; j <= k; ++j) q[j] += pk * row[j];
    }
    return {TruncatedSeries(std::move(q)), tail};
}

double eval(const TruncatedSeries& a, double s) noexcept {
    double acc = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) acc = acc * s + a[k];
    return acc;
}

TruncatedSeries shift(const TruncatedSeries& a, std::size_t k) {
    std::vector<double> c(a.size(), 0.0);
    for (std::size_t i = 0; i + k < a.size(); ++i) c[i + k] = a[i];
    return TruncatedSeries(std::move(c));
}

double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace latlaw
