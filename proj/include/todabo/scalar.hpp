#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace todabo {

/// Raised when an operation receives arguments outside its domain.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a rational expression would divide by zero.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
class Scalar {
public:
    Scalar() = default;
    Scalar(long value) : v_(value) {}
    Scalar(long num, long den);
    explicit Scalar(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

    /// Parses "p/q" or an integer "k". Throws ArgumentError on malformed input
    /// or a zero denominator.
    static Scalar parse(std::string_view text);

    const mpq_class& raw() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Scalar abs() const { return Scalar(::abs(v_)); }
    Scalar inverse() const;
    Scalar pow(long exponent) const;
    double to_double() const { return v_.get_d(); }

    /// "p/q" in lowest terms; integers render as "k/1".
    std::string str() const;

    /// Decimal rendering with `significant` digits, e.g. "-4.2857...e-1".
    /// Zero renders as "0".
    std::string decimal(int significant = 30) const;

    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.v_)); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b)
    {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// Renders an arbitrary-precision integer ratio num/den (den > 0) with the
/// given number of significant digits, rounding half away from zero.
std::string format_decimal(const mpz_class& num, const mpz_class& den, int significant);

} // namespace todabo
