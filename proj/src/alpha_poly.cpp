#include "todabo/alpha_poly.hpp"

#include <algorithm>
#include <cstdlib>

namespace todabo {

Scalar bracket_constant(int n, const Scalar& q)
{
    if (n == 0)
        return Scalar(0);
    Scalar v = Scalar(1) - q.pow(std::abs(n));
    return n > 0 ? v : -v;
}

AlphaPoly AlphaPoly::constant(Truncation t, const Scalar& c)
{
    AlphaPoly p(t);
    p.add_term(Monomial{}, c);
    return p;
}

AlphaPoly AlphaPoly::mode(Truncation t, int n)
{
    AlphaPoly p(t);
    p.add_term(Monomial{n}, Scalar(1));
    return p;
}

Scalar AlphaPoly::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

int AlphaPoly::degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

void AlphaPoly::add_term(const Monomial& m, const Scalar& c)
{
    if (m.max_abs_mode() > t_.n_modes)
        throw ArgumentError("AlphaPoly: mode " + m.str() + " outside truncation");
    if (m.degree() > t_.d_deg || c.is_zero())
        return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void AlphaPoly::require_compatible(const AlphaPoly& o) const
{
    if (!(t_ == o.t_))
        throw ArgumentError("AlphaPoly: truncation mismatch");
}

AlphaPoly AlphaPoly::derivative(int n) const
{
    AlphaPoly r(t_);
    r.exact_deg_ = exact_deg_ - 1;
    for (const auto& [m, c] : terms_) {
        int e = m.multiplicity(n);
        if (e == 0)
            continue;
        std::vector<int> rest;
        bool dropped = false;
        for (int i = 0; i < m.degree(); ++i) {
            if (m[i] == n && !dropped) {
                dropped = true;
                continue;
            }
            rest.push_back(m[i]);
        }
        r.add_term(Monomial(std::span<const int>(rest)), c * Scalar(e));
    }
    return r;
}

AlphaPoly AlphaPoly::truncated_to(int d) const
{
    AlphaPoly r(t_);
    r.exact_deg_ = std::min(exact_deg_, d);
    for (const auto& [m, c] : terms_)
        if (m.degree() <= d)
            r.terms_.emplace(m, c);
    return r;
}

AlphaPoly& AlphaPoly::operator+=(const AlphaPoly& o)
{
    require_compatible(o);
    exact_deg_ = std::min(exact_deg_, o.exact_deg_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

AlphaPoly& AlphaPoly::operator-=(const AlphaPoly& o)
{
    require_compatible(o);
    exact_deg_ = std::min(exact_deg_, o.exact_deg_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

AlphaPoly& AlphaPoly::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b)
{
    a.require_compatible(b);
    AlphaPoly r(a.t_);
    // A product is exact up to the smaller exact degree of its factors, shifted
    // by the lowest degree present in the other factor.
    int da = a.terms_.empty() ? 0 : a.terms_.begin()->first.degree();
    int db = b.terms_.empty() ? 0 : b.terms_.begin()->first.degree();
    r.exact_deg_ = std::min({a.exact_deg_ + db, b.exact_deg_ + da, a.t_.d_deg});
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.degree() + mb.degree() > a.t_.d_deg)
                continue;
            r.add_term(ma * mb, ca * cb);
        }
    return r;
}

std::string AlphaPoly::str() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty())
            out += " + ";
        out += c.str();
        if (!m.empty())
            out += "*" + m.str();
    }
    return out;
}

AlphaPoly bracket(const AlphaPoly& f, const AlphaPoly& g, const Scalar& q)
{
    if (!(f.truncation() == g.truncation()))
        throw ArgumentError("bracket: truncation mismatch");
    const Truncation t = f.truncation();
    AlphaPoly r(t);
    for (int n = -t.n_modes; n <= t.n_modes; ++n) {
        if (n == 0)
            continue;
        AlphaPoly df = f.derivative(n);
        if (df.is_zero())
            continue;
        AlphaPoly dg = g.derivative(-n);
        if (dg.is_zero())
            continue;
        r += (df * dg) * bracket_constant(n, q);
    }
    r.set_exact_deg(std::min(f.exact_deg(), g.exact_deg()) - 2);
    return r;
}

} // namespace todabo
