#include "todabo/params.hpp"

#include <array>

namespace todabo {

ParamPoint::ParamPoint(Scalar s, Scalar eps, std::vector<Scalar> a, int guard)
    : s_(std::move(s)), q_(s_ * s_), eps_(std::move(eps)), a_(std::move(a))
{
    auto fail = [&](const std::string& why) { throw ArgumentError("ParamPoint: " + why); };
    if (s_.is_zero() || s_ == Scalar(1) || s_ == Scalar(-1))
        fail("s must avoid 0, 1, -1");
    if (q_ == Scalar(1) || q_ == Scalar(-1))
        fail("q must avoid 1, -1");
    if (eps_.is_zero())
        fail("eps must be nonzero");
    const int n = this->n();
    for (int i = 0; i < n; ++i) {
        if (a_[i].is_zero())
            fail("a_" + std::to_string(i + 1) + " is zero");
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            if (a_[i] == a_[j] || a_[i] == q_ * a_[j] || a_[i] * q_ == a_[j])
                fail("interaction factor pole between a_" + std::to_string(i + 1) + " and a_" +
                     std::to_string(j + 1));
        }
        for (int m = -guard; m <= guard; ++m)
            if (q_.pow(m) * eps_ == a_[i])
                fail("q^" + std::to_string(m) + " eps coincides with a_" + std::to_string(i + 1));
    }
}

ParamPoint ParamPoint::inverted() const
{
    std::vector<Scalar> inv;
    inv.reserve(a_.size());
    for (const auto& x : a_)
        inv.push_back(x.inverse());
    return ParamPoint(s_.inverse(), eps_.inverse(), std::move(inv));
}

std::string ParamPoint::describe() const
{
    std::string out = "s=" + s_.str() + " eps=" + eps_.str() + " a=[";
    for (std::size_t i = 0; i < a_.size(); ++i)
        out += (i ? "," : "") + a_[i].str();
    return out + "]";
}

std::int64_t Sampler::uniform(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo)
        throw ArgumentError("Sampler::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
    for (;;) {
        std::uint64_t x = engine_();
        if (span == 0)
            return static_cast<std::int64_t>(x);
        if (x < limit)
            return lo + static_cast<std::int64_t>(x % span);
    }
}

Scalar Sampler::rational(const Scalar& bound, int max_den)
{
    for (;;) {
        long den = static_cast<long>(uniform(2, max_den));
        // largest numerator with |p/den| <= bound
        mpq_class scaled = bound.raw() * den;
        mpz_class top = scaled.get_num() / scaled.get_den();
        long pmax = top.get_si();
        if (pmax < 1)
            continue;
        long p = static_cast<long>(uniform(1, pmax));
        if (uniform(0, 1))
            p = -p;
        return Scalar(p, den);
    }
}

ParamPoint Sampler::param_point(int n, const Options& opts)
{
    static const std::array<Scalar, 4> s_choices = {Scalar(1, 2), Scalar(1, 3), Scalar(2, 3),
                                                    Scalar(-1, 2)};
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Scalar s = opts.s ? *opts.s : s_choices[static_cast<std::size_t>(uniform(0, 3))];
        Scalar eps = rational(opts.eps_bound, opts.max_den);
        std::vector<Scalar> a;
        for (int k = 0; k < n; ++k)
            a.push_back(rational(opts.a_bound, opts.max_den));
        try {
            return ParamPoint(s, eps, std::move(a));
        } catch (const ArgumentError&) {
        }
    }
    throw ArgumentError("Sampler: could not draw a non-degenerate parameter point");
}

} // namespace todabo
