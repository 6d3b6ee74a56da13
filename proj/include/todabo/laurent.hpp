#pragma once

#include "todabo/scalar.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace todabo {

// Ring hooks for Scalar coefficients. Other coefficient types provide the same
// four functions, found by argument-dependent lookup.
inline Scalar zero_like(const Scalar&) { return Scalar(0); }
inline Scalar one_like(const Scalar&) { return Scalar(1); }
inline bool is_zero(const Scalar& x) { return x.is_zero(); }
inline std::string to_string(const Scalar& x) { return x.str(); }

/// Truncated Laurent series in one variable.
///
/// Two intervals describe what is known. The window [lo, hi] holds computed
/// coefficients; the support bounds say where a coefficient may be nonzero at
/// all (an absent bound means unbounded in that direction). A degree is
/// known iff it lies in the window or outside the support. Everything else is
/// unknown, never an implicit zero.
template <class C>
class LaurentSeries {
public:
    using Bound = std::optional<int>;

    LaurentSeries(int var, int lo, int hi, Bound support_lo, Bound support_hi, const C& zero)
        : var_(var), lo_(lo), hi_(hi), slo_(support_lo), shi_(support_hi), zero_(zero_like(zero)),
          c_(static_cast<std::size_t>(std::max(0, hi - lo + 1)), zero_)
    {
    }

    /// Exact Laurent polynomial: sum_i coeffs[i] z^{lo+i}.
    static LaurentSeries polynomial(int var, int lo, std::vector<C> coeffs, const C& zero)
    {
        int hi = lo + static_cast<int>(coeffs.size()) - 1;
        LaurentSeries s(var, lo, hi, lo, hi, zero);
        s.c_ = std::move(coeffs);
        return s;
    }

    /// Power series in z known to order N: window [0, N], support [0, inf).
    static LaurentSeries power_series(int var, std::vector<C> coeffs, const C& zero)
    {
        LaurentSeries s(var, 0, static_cast<int>(coeffs.size()) - 1, 0, std::nullopt, zero);
        s.c_ = std::move(coeffs);
        return s;
    }

    /// Power series in 1/z: coeffs[i] multiplies z^{-i}. Window [-N, 0].
    static LaurentSeries inverse_power_series(int var, std::vector<C> coeffs, const C& zero)
    {
        int n = static_cast<int>(coeffs.size()) - 1;
        LaurentSeries s(var, -n, 0, std::nullopt, 0, zero);
        for (int i = 0; i <= n; ++i)
            s.c_[n - i] = std::move(coeffs[i]);
        return s;
    }

    int var() const { return var_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool empty_window() const { return hi_ < lo_; }
    Bound support_lo() const { return slo_; }
    Bound support_hi() const { return shi_; }
    const C& zero() const { return zero_; }

    bool in_support(int d) const { return (!slo_ || d >= *slo_) && (!shi_ || d <= *shi_); }
    bool known(int d) const { return (d >= lo_ && d <= hi_) || !in_support(d); }
    /// Coefficients are exact over the whole support.
    bool exact() const
    {
        return slo_ && shi_ && (*slo_ > *shi_ || (*slo_ >= lo_ && *shi_ <= hi_));
    }

    /// Coefficient of z^d. Throws ArgumentError for unknown degrees.
    const C& at(int d) const
    {
        if (d >= lo_ && d <= hi_)
            return c_[static_cast<std::size_t>(d - lo_)];
        if (!in_support(d))
            return zero_;
        throw ArgumentError("LaurentSeries: degree " + std::to_string(d) + " outside window");
    }
    const C& operator[](int d) const { return at(d); }

    C& mut(int d)
    {
        if (d < lo_ || d > hi_)
            throw ArgumentError("LaurentSeries: write outside window");
        return c_[static_cast<std::size_t>(d - lo_)];
    }

    /// Restricts the window to [lo, hi] (intersected with the current one).
    LaurentSeries restricted(int lo, int hi) const
    {
        int nlo = std::max(lo, lo_), nhi = std::min(hi, hi_);
        LaurentSeries r(var_, nlo, nhi, slo_, shi_, zero_);
        for (int d = nlo; d <= nhi; ++d)
            r.mut(d) = at(d);
        return r;
    }

    /// Copy whose support is narrowed to [lo, hi]. The caller asserts that
    /// every coefficient outside that range vanishes; known window entries
    /// outside it must already be zero.
    LaurentSeries bounded(Bound lo, Bound hi) const
    {
        Bound nlo = slo_, nhi = shi_;
        if (lo)
            nlo = slo_ ? std::max(*slo_, *lo) : *lo;
        if (hi)
            nhi = shi_ ? std::min(*shi_, *hi) : *hi;
        LaurentSeries r(var_, lo_, hi_, nlo, nhi, zero_);
        for (int d = lo_; d <= hi_; ++d) {
            if (!r.in_support(d) && !is_zero(at(d)))
                throw ArgumentError("LaurentSeries::bounded: nonzero coefficient outside new support");
            r.c_[static_cast<std::size_t>(d - lo_)] = at(d);
        }
        return r;
    }

    /// One line per degree in the window: "d: coefficient".
    std::string dump() const
    {
        std::ostringstream os;
        for (int d = lo_; d <= hi_; ++d)
            os << d << ": " << to_string(at(d)) << "\n";
        return os.str();
    }

private:
    int var_;
    int lo_, hi_;
    Bound slo_, shi_;
    C zero_;
    std::vector<C> c_;
};

namespace detail {

inline constexpr long unbounded = std::numeric_limits<int>::max() / 4;

inline long lo_or(const std::optional<int>& b) { return b ? *b : -unbounded; }
inline long hi_or(const std::optional<int>& b) { return b ? *b : unbounded; }

inline std::optional<int> add_bound(const std::optional<int>& a, const std::optional<int>& b)
{
    if (!a || !b)
        return std::nullopt;
    return *a + *b;
}

template <class C>
void require_same_var(const LaurentSeries<C>& f, const LaurentSeries<C>& g, const char* op)
{
    if (f.var() != g.var())
        throw ArgumentError(std::string(op) + ": variable mismatch");
}

} // namespace detail

/// Sum on the intersection of the two windows.
template <class C>
LaurentSeries<C> series_add(const LaurentSeries<C>& f, const LaurentSeries<C>& g, const Scalar& gscale)
{
    detail::require_same_var(f, g, "series_add");
    std::optional<int> slo, shi;
    if (f.support_lo() && g.support_lo())
        slo = std::min(*f.support_lo(), *g.support_lo());
    if (f.support_hi() && g.support_hi())
        shi = std::max(*f.support_hi(), *g.support_hi());
    // A degree is known in the sum iff it is known in both summands.
    long lo = std::min<long>(f.lo(), g.lo()), hi = std::max<long>(f.hi(), g.hi());
    long klo = hi + 1, khi = lo - 1;
    for (long d = lo; d <= hi; ++d) {
        if (f.known(static_cast<int>(d)) && g.known(static_cast<int>(d))) {
            if (klo > hi)
                klo = d;
            khi = d;
        } else if (klo <= hi) {
            break;
        }
    }
    LaurentSeries<C> r(f.var(), static_cast<int>(klo), static_cast<int>(khi), slo, shi, f.zero());
    for (long d = klo; d <= khi; ++d)
        r.mut(static_cast<int>(d)) = f.at(static_cast<int>(d)) + g.at(static_cast<int>(d)) * gscale;
    return r;
}

template <class C>
LaurentSeries<C> operator+(const LaurentSeries<C>& f, const LaurentSeries<C>& g)
{
    return series_add(f, g, Scalar(1));
}

template <class C>
LaurentSeries<C> operator-(const LaurentSeries<C>& f, const LaurentSeries<C>& g)
{
    return series_add(f, g, Scalar(-1));
}

/// Product. Degree d is kept only when every pair (d1, d2) with d1 + d2 = d
/// that the supports allow has both factors inside their windows.
template <class C>
LaurentSeries<C> series_mul(const LaurentSeries<C>& f, const LaurentSeries<C>& g)
{
    detail::require_same_var(f, g, "series_mul");
    using detail::hi_or;
    using detail::lo_or;
    const long Lf = lo_or(f.support_lo()), Hf = hi_or(f.support_hi());
    const long Lg = lo_or(g.support_lo()), Hg = hi_or(g.support_hi());
    auto pair_range = [&](long d) { return std::pair<long, long>{std::max(Lf, d - Hg), std::min(Hf, d - Lg)}; };
    auto valid = [&](long d) {
        auto [a, b] = pair_range(d);
        if (a > b)
            return true;
        return a >= f.lo() && b <= f.hi() && d - b >= g.lo() && d - a <= g.hi();
    };
    long lo = static_cast<long>(f.lo()) + g.lo(), hi = static_cast<long>(f.hi()) + g.hi();
    long wlo = hi + 1, whi = lo - 1;
    for (long d = lo; d <= hi; ++d) {
        if (valid(d)) {
            if (wlo > hi)
                wlo = d;
            whi = d;
        } else if (wlo <= hi) {
            break;
        }
    }
    auto slo = detail::add_bound(f.support_lo(), g.support_lo());
    auto shi = detail::add_bound(f.support_hi(), g.support_hi());
    LaurentSeries<C> r(f.var(), static_cast<int>(wlo), static_cast<int>(whi), slo, shi, f.zero());
    for (long d = wlo; d <= whi; ++d) {
        auto [a, b] = pair_range(d);
        C acc = f.zero();
        for (long d1 = a; d1 <= b; ++d1)
            acc = acc + f.at(static_cast<int>(d1)) * g.at(static_cast<int>(d - d1));
        r.mut(static_cast<int>(d)) = std::move(acc);
    }
    return r;
}

template <class C>
LaurentSeries<C> operator*(const LaurentSeries<C>& f, const LaurentSeries<C>& g)
{
    return series_mul(f, g);
}

/// Multiplies every coefficient by a scalar.
template <class C>
LaurentSeries<C> series_scale(const LaurentSeries<C>& f, const Scalar& c)
{
    LaurentSeries<C> r(f.var(), f.lo(), f.hi(), f.support_lo(), f.support_hi(), f.zero());
    for (int d = f.lo(); d <= f.hi(); ++d)
        r.mut(d) = f.at(d) * c;
    return r;
}

/// Substitutes z -> lambda z, i.e. multiplies the z^d coefficient by lambda^d.
template <class C>
LaurentSeries<C> series_dilate(const LaurentSeries<C>& f, const Scalar& lambda)
{
    LaurentSeries<C> r(f.var(), f.lo(), f.hi(), f.support_lo(), f.support_hi(), f.zero());
    for (int d = f.lo(); d <= f.hi(); ++d)
        r.mut(d) = f.at(d) * lambda.pow(d);
    return r;
}

namespace detail {

enum class Side { positive, negative };

// Classifies a one-sided series; throws for two-sided support.
template <class C>
Side one_sided(const LaurentSeries<C>& f, const char* op)
{
    if (f.support_lo() && *f.support_lo() >= 0 && f.lo() <= 0)
        return Side::positive;
    if (f.support_hi() && *f.support_hi() <= 0 && f.hi() >= 0)
        return Side::negative;
    throw ArgumentError(std::string(op) + ": series must be one-sided with a known constant term");
}

// Length of the guaranteed prefix c_0..c_N of a one-sided series.
template <class C>
int known_order(const LaurentSeries<C>& f, Side side, int max_order)
{
    if (side == Side::positive) {
        bool beyond_known = f.support_hi() && *f.support_hi() <= f.hi();
        return beyond_known ? max_order : std::min(max_order, f.hi());
    }
    bool beyond_known = f.support_lo() && *f.support_lo() >= f.lo();
    return beyond_known ? max_order : std::min(max_order, -f.lo());
}

template <class C>
const C& side_coeff(const LaurentSeries<C>& f, Side side, int k)
{
    return f.at(side == Side::positive ? k : -k);
}

template <class C>
LaurentSeries<C> from_side(int var, Side side, std::vector<C> c, const C& zero)
{
    return side == Side::positive ? LaurentSeries<C>::power_series(var, std::move(c), zero)
                                  : LaurentSeries<C>::inverse_power_series(var, std::move(c), zero);
}

} // namespace detail

/// Reciprocal of a one-sided series with constant term 1, to the largest
/// order the input determines (capped at max_order).
template <class C>
LaurentSeries<C> series_inv(const LaurentSeries<C>& f, int max_order)
{
    auto side = detail::one_sided(f, "series_inv");
    const C& c0 = detail::side_coeff(f, side, 0);
    if (!is_zero(c0 - one_like(c0)))
        throw ArgumentError("series_inv: constant term must be 1");
    int n = detail::known_order(f, side, max_order);
    std::vector<C> g(static_cast<std::size_t>(n) + 1, f.zero());
    g[0] = one_like(f.zero());
    for (int k = 1; k <= n; ++k) {
        C acc = f.zero();
        for (int j = 1; j <= k; ++j)
            acc = acc + detail::side_coeff(f, side, j) * g[k - j];
        g[k] = acc * Scalar(-1);
    }
    return detail::from_side(f.var(), side, std::move(g), f.zero());
}

/// exp of a one-sided series with zero constant term.
template <class C>
LaurentSeries<C> series_exp(const LaurentSeries<C>& f, int max_order)
{
    auto side = detail::one_sided(f, "series_exp");
    if (!is_zero(detail::side_coeff(f, side, 0)))
        throw ArgumentError("series_exp: constant term must be 0");
    int n = detail::known_order(f, side, max_order);
    std::vector<C> g(static_cast<std::size_t>(n) + 1, f.zero());
    g[0] = one_like(f.zero());
    // k g_k = sum_{j=1..k} j f_j g_{k-j}
    for (int k = 1; k <= n; ++k) {
        C acc = f.zero();
        for (int j = 1; j <= k; ++j)
            acc = acc + detail::side_coeff(f, side, j) * g[k - j] * Scalar(j);
        g[k] = acc * Scalar(1, k);
    }
    return detail::from_side(f.var(), side, std::move(g), f.zero());
}

/// log of a one-sided series with constant term 1.
template <class C>
LaurentSeries<C> series_log(const LaurentSeries<C>& f, int max_order)
{
    auto side = detail::one_sided(f, "series_log");
    const C& c0 = detail::side_coeff(f, side, 0);
    if (!is_zero(c0 - one_like(c0)))
        throw ArgumentError("series_log: constant term must be 1");
    int n = detail::known_order(f, side, max_order);
    std::vector<C> h(static_cast<std::size_t>(n) + 1, f.zero());
    // k h_k = k f_k - sum_{j=1..k-1} j h_j f_{k-j}
    for (int k = 1; k <= n; ++k) {
        C acc = detail::side_coeff(f, side, k) * Scalar(k);
        for (int j = 1; j < k; ++j)
            acc = acc - h[j] * detail::side_coeff(f, side, k - j) * Scalar(j);
        h[k] = acc * Scalar(1, k);
    }
    return detail::from_side(f.var(), side, std::move(h), f.zero());
}

template <class C>
LaurentSeries<C> series_inv(const LaurentSeries<C>& f)
{
    return series_inv(f, std::max(f.hi(), -f.lo()));
}
template <class C>
LaurentSeries<C> series_exp(const LaurentSeries<C>& f)
{
    return series_exp(f, std::max(f.hi(), -f.lo()));
}
template <class C>
LaurentSeries<C> series_log(const LaurentSeries<C>& f)
{
    return series_log(f, std::max(f.hi(), -f.lo()));
}

} // namespace todabo
