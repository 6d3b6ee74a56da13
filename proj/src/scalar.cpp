#include "todabo/scalar.hpp"

#include <ostream>

namespace todabo {

Scalar::Scalar(long num, long den)
{
    if (den == 0)
        throw PoleError("Scalar: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Scalar Scalar::parse(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    mpz_class num, den = 1;
    auto bad = [&] { return ArgumentError("Scalar: cannot parse \"" + s + "\""); };
    try {
        if (slash == std::string::npos) {
            if (s.empty() || num.set_str(s, 10) != 0)
                throw bad();
        } else {
            std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
            if (ns.empty() || ds.empty() || num.set_str(ns, 10) != 0 || den.set_str(ds, 10) != 0)
                throw bad();
        }
    } catch (const std::invalid_argument&) {
        throw bad();
    }
    if (den == 0)
        throw ArgumentError("Scalar: zero denominator in \"" + s + "\"");
    mpq_class v(num, den);
    v.canonicalize();
    return Scalar(v);
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw PoleError("Scalar: inverse of zero");
    return Scalar(mpq_class(1 / v_));
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw PoleError("Scalar: division by zero");
    v_ /= o.v_;
    return *this;
}

Scalar Scalar::pow(long exponent) const
{
    if (exponent < 0)
        return inverse().pow(-exponent);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Scalar(mpq_class(n, d));
}

std::string Scalar::str() const
{
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Scalar::decimal(int significant) const
{
    return format_decimal(v_.get_num(), v_.get_den(), significant);
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

namespace {

mpz_class pow10(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

// floor(log10(num/den)) for num, den > 0
long decimal_exponent(const mpz_class& num, const mpz_class& den)
{
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    auto ge = [&](long k) { // num/den >= 10^k
        if (k >= 0)
            return num >= den * pow10(static_cast<unsigned long>(k));
        return num * pow10(static_cast<unsigned long>(-k)) >= den;
    };
    while (!ge(e))
        --e;
    while (ge(e + 1))
        ++e;
    return e;
}

} // namespace

std::string format_decimal(const mpz_class& num_in, const mpz_class& den, int significant)
{
    if (significant < 1)
        throw ArgumentError("format_decimal: need at least one digit");
    if (num_in == 0)
        return "0";
    bool neg = num_in < 0;
    mpz_class num = abs(num_in);
    long e = decimal_exponent(num, den);
    long shift = significant - 1 - e;
    auto scaled = [&](long sh) {
        mpz_class n = num, d = den;
        if (sh >= 0)
            n *= pow10(static_cast<unsigned long>(sh));
        else
            d *= pow10(static_cast<unsigned long>(-sh));
        // round half away from zero
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (2 * r >= d)
            q += 1;
        return q;
    };
    mpz_class digits = scaled(shift);
    if (digits == pow10(static_cast<unsigned long>(significant))) {
        ++e;
        digits /= 10;
    }
    std::string ds = digits.get_str();
    std::string out = neg ? "-" : "";
    out += ds[0];
    if (ds.size() > 1) {
        out += '.';
        out += ds.substr(1);
    }
    out += 'e';
    out += std::to_string(e);
    return out;
}

} // namespace todabo
