#include "todabo/fields.hpp"

#include <cstdlib>
#include <functional>

namespace todabo {

namespace {

Scalar tau_coefficient(const Scalar& q, int n) { return (Scalar(1) - q.pow(n)).inverse() * Scalar(-1); }

long binomial(int n, int k)
{
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Calls f(j) for every multi-index 0 <= j <= p.
void for_each_below(const std::vector<int>& p, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> j(p.size(), 0);
    for (;;) {
        f(j);
        std::size_t i = 0;
        while (i < p.size() && j[i] == p[i])
            j[i++] = 0;
        if (i == p.size())
            return;
        ++j[i];
    }
}

// Leibniz coefficient prod_i C(p_i, j_i) (-1)^{p_i - j_i}.
Scalar leibniz(const std::vector<int>& p, const std::vector<int>& j)
{
    long c = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        c *= binomial(p[i], j[i]);
        if ((p[i] - j[i]) % 2)
            c = -c;
    }
    return Scalar(c);
}

} // namespace

ModeFields::ModeFields(Scalar s, Scalar eps) : s_(std::move(s)), q_(s_ * s_), eps_(std::move(eps))
{
    if (eps_.is_zero())
        throw ArgumentError("ModeFields: eps must be nonzero");
    if (q_ == Scalar(1))
        throw PoleError("ModeFields: q = 1");
}

Field ModeFields::tau(int sign)
{
    auto& slot = tau_[sign > 0 ? 1 : -1];
    if (!slot) {
        Scalar q = q_;
        if (sign > 0)
            slot = vertex(Scalar(1), [q](int n) { return n < 0 ? tau_coefficient(q, -n) : Scalar(0); });
        else
            slot = vertex(Scalar(1), [q](int n) { return n > 0 ? tau_coefficient(q, n) : Scalar(0); });
    }
    return slot;
}

Field ModeFields::tau_at(int sign, const Scalar& lambda) { return dilate(tau(sign), lambda); }

Field ModeFields::phi(int sign)
{
    auto& slot = phi_[sign > 0 ? 1 : -1];
    if (!slot) {
        if (sign > 0)
            slot = linear([](int n) { return n < 0 ? Scalar(1) : Scalar(0); });
        else
            slot = linear([](int n) { return n > 0 ? Scalar(-1) : Scalar(0); });
    }
    return slot;
}

Field ModeFields::eta()
{
    if (!eta_)
        eta_ = vertex(eps_, [](int) { return Scalar(1); });
    return eta_;
}

Field ModeFields::xi()
{
    if (!xi_) {
        Scalar s = s_;
        xi_ = vertex(eps_.inverse(), [s](int n) { return s.pow(-std::abs(n)) * Scalar(-1); });
    }
    return xi_;
}

Field ModeFields::eta_from_taus()
{
    return scale(product({tau_at(-1, q_.inverse()), tau_at(1, q_), inverse(tau(-1)), inverse(tau(1))}), eps_);
}

Field ModeFields::xi_from_taus()
{
    Scalar si = s_.inverse();
    return scale(product({tau_at(-1, s_), tau_at(1, si), inverse(tau_at(-1, si)), inverse(tau_at(1, s_))}),
                 eps_.inverse());
}

Field ModeFields::eta_part(int sign) { return degree_part(eta(), sign > 0 ? DegreePart::positive : DegreePart::negative); }
Field ModeFields::xi_part(int sign) { return degree_part(xi(), sign > 0 ? DegreePart::positive : DegreePart::negative); }

Field ModeFields::eta0()
{
    if (!eta0_)
        eta0_ = degree_part(eta(), DegreePart::zero);
    return eta0_;
}

Field ModeFields::xi0()
{
    if (!xi0_)
        xi0_ = degree_part(xi(), DegreePart::zero);
    return xi0_;
}

HirotaPoly HirotaPoly::operator_d(int nflows, int i)
{
    if (i < 0 || i >= nflows)
        throw ArgumentError("HirotaPoly: operator index out of range");
    HirotaPoly p(nflows);
    Powers pw(static_cast<std::size_t>(nflows), 0);
    pw[static_cast<std::size_t>(i)] = 1;
    p.accumulate(pw, constant(Scalar(1)));
    return p;
}

HirotaPoly HirotaPoly::functional(int nflows, Field c)
{
    HirotaPoly p(nflows);
    p.accumulate(Powers(static_cast<std::size_t>(nflows), 0), std::move(c));
    return p;
}

HirotaPoly HirotaPoly::scalar(int nflows, const Scalar& c) { return functional(nflows, constant(c)); }

void HirotaPoly::accumulate(const Powers& p, Field c)
{
    auto it = terms_.find(p);
    if (it == terms_.end())
        terms_.emplace(p, std::move(c));
    else
        it->second = add(it->second, std::move(c));
}

HirotaPoly operator+(const HirotaPoly& a, const HirotaPoly& b)
{
    if (a.nflows_ != b.nflows_)
        throw ArgumentError("HirotaPoly: flow count mismatch");
    HirotaPoly r = a;
    for (const auto& [p, c] : b.terms_)
        r.accumulate(p, c);
    return r;
}

HirotaPoly operator*(const HirotaPoly& a, const HirotaPoly& b)
{
    if (a.nflows_ != b.nflows_)
        throw ArgumentError("HirotaPoly: flow count mismatch");
    HirotaPoly r(a.nflows_);
    for (const auto& [pa, ca] : a.terms_)
        for (const auto& [pb, cb] : b.terms_) {
            HirotaPoly::Powers p(pa.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = pa[i] + pb[i];
            r.accumulate(p, product(ca, cb));
        }
    return r;
}

HirotaPoly operator*(const Scalar& c, const HirotaPoly& a)
{
    HirotaPoly r(a.nflows_);
    for (const auto& [p, f] : a.terms_)
        r.accumulate(p, scale(f, c));
    return r;
}

HirotaPoly HirotaPoly::pow(int k) const
{
    if (k < 0)
        throw ArgumentError("HirotaPoly: negative power");
    HirotaPoly r = scalar(nflows_, Scalar(1));
    for (int i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

Field hirota_apply(const std::vector<FlowSpec>& flows, const HirotaPoly& poly, Field f, Field g,
                   const Scalar& q)
{
    if (static_cast<int>(flows.size()) != poly.nflows())
        throw ArgumentError("hirota_apply: flow count mismatch");
    using Powers = HirotaPoly::Powers;
    std::map<Powers, Field> df{{Powers(flows.size(), 0), f}}, dg{{Powers(flows.size(), 0), g}};
    std::function<Field(std::map<Powers, Field>&, const Powers&)> deriv =
        [&](std::map<Powers, Field>& cache, const Powers& j) -> Field {
        auto it = cache.find(j);
        if (it != cache.end())
            return it->second;
        std::size_t i = j.size();
        while (j[i - 1] == 0)
            --i;
        Powers lower = j;
        --lower[i - 1];
        Field base = deriv(cache, lower);
        Field r = flow(flows[i - 1].hamiltonian, base, q, flows[i - 1].side);
        cache.emplace(j, r);
        return r;
    };
    std::vector<std::pair<Scalar, Field>> terms;
    for (const auto& [p, coeff] : poly.terms()) {
        std::vector<std::pair<Scalar, Field>> inner;
        for_each_below(p, [&](const Powers& j) {
            Powers rest(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                rest[i] = p[i] - j[i];
            inner.emplace_back(leibniz(p, j), product(deriv(df, j), deriv(dg, rest)));
        });
        terms.emplace_back(Scalar(1), product(coeff, sum(std::move(inner))));
    }
    return sum(std::move(terms));
}

namespace {

// exp of the one-sided linear series sum_{n>0} c(n) alpha_{sign n} z^{sign n},
// exact over the truncated algebra.
FieldSeries exp_linear(const Truncation& t, int sign, const std::function<Scalar(int)>& c)
{
    AlphaPoly zero(t);
    const int top = t.n_modes * t.d_deg;
    std::vector<AlphaPoly> coeffs(static_cast<std::size_t>(t.n_modes) + 1, zero);
    for (int n = 1; n <= t.n_modes; ++n)
        coeffs[static_cast<std::size_t>(n)] = AlphaPoly::mode(t, -sign * n) * c(n);
    FieldSeries lin = sign > 0 ? FieldSeries::power_series(0, coeffs, zero)
                               : FieldSeries::inverse_power_series(0, coeffs, zero);
    lin = sign > 0 ? lin.bounded(0, t.n_modes) : lin.bounded(-t.n_modes, 0);
    FieldSeries e = series_exp(lin, top);
    return sign > 0 ? e.bounded(0, top) : e.bounded(-top, 0);
}

FieldSeries inv_bounded(const FieldSeries& f, const Truncation& t)
{
    const int top = t.n_modes * t.d_deg;
    FieldSeries r = series_inv(f, top);
    return f.support_lo() && *f.support_lo() >= 0 ? r.bounded(0, top) : r.bounded(-top, 0);
}

} // namespace

FieldSeries build_tau(int sign, const Truncation& t, const Scalar& q)
{
    return exp_linear(t, sign > 0 ? 1 : -1, [&](int n) { return tau_coefficient(q, n); });
}

FieldSeries build_phi(int sign, const Truncation& t)
{
    AlphaPoly zero(t);
    std::vector<AlphaPoly> coeffs(static_cast<std::size_t>(t.n_modes) + 1, zero);
    for (int n = 1; n <= t.n_modes; ++n)
        coeffs[static_cast<std::size_t>(n)] =
            sign > 0 ? AlphaPoly::mode(t, -n) : AlphaPoly::mode(t, n) * Scalar(-1);
    FieldSeries s = sign > 0 ? FieldSeries::power_series(0, coeffs, zero)
                             : FieldSeries::inverse_power_series(0, coeffs, zero);
    return sign > 0 ? s.bounded(0, t.n_modes) : s.bounded(-t.n_modes, 0);
}

FieldSeries build_eta(const Truncation& t, const Scalar& eps)
{
    if (eps.is_zero())
        throw ArgumentError("build_eta: eps must be nonzero");
    auto one = [](int) { return Scalar(1); };
    return series_scale(exp_linear(t, -1, one) * exp_linear(t, 1, one), eps);
}

FieldSeries build_xi(const Truncation& t, const Scalar& s, const Scalar& eps)
{
    if (eps.is_zero())
        throw ArgumentError("build_xi: eps must be nonzero");
    auto c = [&](int n) { return s.pow(-n) * Scalar(-1); };
    return series_scale(exp_linear(t, -1, c) * exp_linear(t, 1, c), eps.inverse());
}

FieldSeries build_eta_ratio(const Truncation& t, const Scalar& q, const Scalar& eps)
{
    if (eps.is_zero())
        throw ArgumentError("build_eta_ratio: eps must be nonzero");
    FieldSeries tm = build_tau(-1, t, q), tp = build_tau(1, t, q);
    FieldSeries num = series_dilate(tm, q.inverse()) * series_dilate(tp, q);
    return series_scale(num * inv_bounded(tm, t) * inv_bounded(tp, t), eps);
}

FieldSeries build_xi_ratio(const Truncation& t, const Scalar& s, const Scalar& eps)
{
    if (eps.is_zero())
        throw ArgumentError("build_xi_ratio: eps must be nonzero");
    const Scalar q = s * s, si = s.inverse();
    FieldSeries tm = build_tau(-1, t, q), tp = build_tau(1, t, q);
    FieldSeries num = series_dilate(tm, s) * series_dilate(tp, si);
    FieldSeries den = inv_bounded(series_dilate(tm, si), t) * inv_bounded(series_dilate(tp, s), t);
    return series_scale(num * den, eps.inverse());
}

FieldSeries flow(const AlphaPoly& h, const FieldSeries& f, const Scalar& q, FlowSide side)
{
    FieldSeries r(f.var(), f.lo(), f.hi(), f.support_lo(), f.support_hi(), f.zero());
    for (int d = f.lo(); d <= f.hi(); ++d)
        r.mut(d) = side == FlowSide::left ? bracket(h, f.at(d), q) : bracket(f.at(d), h, q);
    return r;
}

FieldSeries hirota_pair(const std::vector<HirotaOp>& ops, const FieldSeries& f, const FieldSeries& g,
                        const Scalar& q)
{
    std::vector<int> p;
    int order = 0;
    for (const auto& op : ops) {
        if (op.power < 0)
            throw ArgumentError("hirota_pair: negative power");
        p.push_back(op.power);
        order += op.power;
    }
    if (2 * order > f.zero().truncation().d_deg)
        throw ArgumentError("hirota_pair: truncation exhausted (degree budget below derivative order)");
    std::map<std::vector<int>, FieldSeries> df, dg;
    std::function<FieldSeries(std::map<std::vector<int>, FieldSeries>&, const FieldSeries&,
                              const std::vector<int>&)>
        deriv = [&](auto& cache, const FieldSeries& base, const std::vector<int>& j) -> FieldSeries {
        auto it = cache.find(j);
        if (it != cache.end())
            return it->second;
        std::size_t i = j.size();
        while (i > 0 && j[i - 1] == 0)
            --i;
        if (i == 0)
            return cache.emplace(j, base).first->second;
        std::vector<int> lower = j;
        --lower[i - 1];
        FieldSeries r = flow(ops[i - 1].hamiltonian, deriv(cache, base, lower), q, ops[i - 1].side);
        return cache.emplace(j, std::move(r)).first->second;
    };
    std::optional<FieldSeries> acc;
    for_each_below(p, [&](const std::vector<int>& j) {
        std::vector<int> rest(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            rest[i] = p[i] - j[i];
        FieldSeries term = series_scale(deriv(df, f, j) * deriv(dg, g, rest), leibniz(p, j));
        acc = acc ? *acc + term : term;
    });
    return *acc;
}

} // namespace todabo
