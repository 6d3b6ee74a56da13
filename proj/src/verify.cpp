#include "todabo/verify.hpp"

#include "todabo/fields.hpp"
#include "todabo/iom.hpp"
#include "todabo/soliton.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

namespace todabo {

namespace {

const std::vector<IdentityInfo> table = {
    {IdentityId::eta_eta, "eta-eta", CheckMode::windowed, "bracket"},
    {IdentityId::xi_xi, "xi-xi", CheckMode::windowed, "bracket"},
    {IdentityId::eta_xi, "eta-xi", CheckMode::windowed, "bracket"},
    {IdentityId::eta_tau_minus, "eta-tau-", CheckMode::windowed, "bracket"},
    {IdentityId::eta_tau_plus, "eta-tau+", CheckMode::windowed, "bracket"},
    {IdentityId::xi_tau_minus, "xi-tau-", CheckMode::windowed, "bracket"},
    {IdentityId::xi_tau_plus, "xi-tau+", CheckMode::windowed, "bracket"},
    {IdentityId::hirota_t, "hirota-t", CheckMode::windowed, "bracket"},
    {IdentityId::hirota_tb, "hirota-tb", CheckMode::windowed, "bracket"},
    {IdentityId::toda, "toda", CheckMode::windowed, "bracket"},
    {IdentityId::toda_field, "toda-field", CheckMode::windowed, "bracket"},
    {IdentityId::eta0_xi0, "eta0-xi0", CheckMode::windowed, "bracket"},
    {IdentityId::tau_shift_lemma, "tau-shift-lemma", CheckMode::exact, "soliton-exact"},
    {IdentityId::hm_pm_1, "hm-pm-1", CheckMode::exact, "soliton-exact"},
    {IdentityId::hm_pm_2, "hm-pm-2", CheckMode::exact, "soliton-exact"},
    {IdentityId::hm_3, "hm-3", CheckMode::exact, "soliton-exact"},
    {IdentityId::to_1, "to-1", CheckMode::exact, "soliton-exact"},
    {IdentityId::to_2, "to-2", CheckMode::exact, "soliton-exact"},
    {IdentityId::to_3, "to-3", CheckMode::exact, "soliton-exact"},
    {IdentityId::conj_iom, "conj-iom", CheckMode::convergent, "iom"},
    {IdentityId::m2_consistency, "m2-consistency", CheckMode::convergent, "iom"},
    {IdentityId::m3_consistency, "m3-consistency", CheckMode::convergent, "iom"},
    {IdentityId::lemma_3_2, "lemma-3-2", CheckMode::windowed, "lemma"},
    {IdentityId::lemma_3_3, "lemma-3-3", CheckMode::windowed, "lemma"},
    {IdentityId::lemma_3_4, "lemma-3-4", CheckMode::windowed, "lemma"},
    {IdentityId::lemma_3_5, "lemma-3-5", CheckMode::windowed, "lemma"},
    {IdentityId::prop_t2, "prop-t2", CheckMode::windowed, "lemma"},
    {IdentityId::prop_t3, "prop-t3", CheckMode::windowed, "lemma"},
};

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t check_seed(std::uint64_t seed, IdentityId id)
{
    return splitmix(seed ^ splitmix(static_cast<std::uint64_t>(id) + 1));
}

void merge(Residual& acc, const Residual& r)
{
    if (!r.exact_zero && acc.exact_zero)
        acc.first_failure = r.first_failure;
    acc.exact_zero = acc.exact_zero && r.exact_zero;
    if (r.max_abs > acc.max_abs)
        acc.max_abs = r.max_abs;
    acc.compared += r.compared;
}

Residual residual_of(const LaurentSeries<Scalar>& d, const std::string& label)
{
    Residual r;
    for (int k = d.lo(); k <= d.hi(); ++k) {
        ++r.compared;
        const Scalar& c = d.at(k);
        if (c.is_zero())
            continue;
        if (r.exact_zero)
            r.first_failure = label + " z^" + std::to_string(k) + ": " + c.str();
        r.exact_zero = false;
        if (c.abs() > r.max_abs)
            r.max_abs = c.abs();
    }
    return r;
}

std::string truncation_text(const AlgebraTruncation& t)
{
    return "n_z=" + std::to_string(t.n_z) + " n_modes=" + std::to_string(t.n_modes) +
           " d_deg=" + std::to_string(t.d_deg) + " compare_deg=" + std::to_string(t.d_deg - 2);
}

void finish_windowed(CheckReport& rep, const Residual& r)
{
    rep.is_exact_zero = r.exact_zero;
    rep.max_abs = r.max_abs;
    rep.compared = r.compared;
    if (r.compared == 0) {
        rep.pass = false;
        rep.detail = "inconclusive: empty comparison window";
        return;
    }
    rep.pass = r.exact_zero;
    rep.detail = r.exact_zero ? std::to_string(r.compared) + " coefficients vanish"
                              : "first nonzero coefficient " + r.first_failure;
}

// ---- mode-algebra checks ----

Residual bracket_identity(IdentityId id, ModeFields& F, const Window& w)
{
    const Scalar q = F.q(), s = F.s(), eps = F.eps();
    switch (id) {
    case IdentityId::eta_eta:
        return compare2(bracket2(F.eta(), F.eta(), q),
                        kernel_product2(F.eta(), F.eta(), [q](int l) { return bracket_constant(l, q); }), w);
    case IdentityId::xi_xi:
        return compare2(bracket2(F.xi(), F.xi(), q), kernel_product2(F.xi(), F.xi(), [q](int l) {
                            if (l == 0)
                                return Scalar(0);
                            return Scalar(l > 0 ? 1 : -1) * (q.pow(-std::abs(l)) - Scalar(1));
                        }),
                        w);
    case IdentityId::eta_xi: {
        auto ratio = [&](int sign) {
            auto inv = inverse(F.tau(sign));
            return product({F.tau_at(sign, q), F.tau_at(sign, q.inverse()), inv, inv});
        };
        auto rhs = sum2({{Scalar(1), delta2(ratio(1), s)}, {Scalar(-1), delta2(ratio(-1), s.inverse())}});
        return compare2(bracket2(F.eta(), F.xi(), q), rhs, w);
    }
    case IdentityId::eta_tau_minus:
        return compare2(bracket2(F.eta(), F.tau(-1), q),
                        kernel_product2(F.eta(), F.tau(-1), [](int l) { return Scalar(l < 0 ? 1 : 0); }), w);
    case IdentityId::eta_tau_plus:
        return compare2(bracket2(F.eta(), F.tau(1), q),
                        kernel_product2(F.eta(), F.tau(1), [](int l) { return Scalar(l > 0 ? -1 : 0); }), w);
    case IdentityId::xi_tau_minus:
        return compare2(bracket2(F.xi(), F.tau(-1), q), kernel_product2(F.xi(), F.tau(-1), [s](int l) {
                            return l < 0 ? -s.pow(l) : Scalar(0);
                        }),
                        w);
    case IdentityId::xi_tau_plus:
        return compare2(bracket2(F.xi(), F.tau(1), q), kernel_product2(F.xi(), F.tau(1), [s](int l) {
                            return l > 0 ? s.pow(-l) : Scalar(0);
                        }),
                        w);
    case IdentityId::hirota_t: {
        std::vector<FlowSpec> fl{{F.eta0(), FlowSide::left}};
        auto lhs = hirota_apply(fl, HirotaPoly::operator_d(1, 0), F.tau(-1), F.tau(1), q);
        auto rhs = sub(scale(product(F.tau_at(-1, q.inverse()), F.tau_at(1, q)), eps),
                       product({F.eta0(), F.tau(-1), F.tau(1)}));
        return compare(lhs, rhs, w);
    }
    case IdentityId::hirota_tb: {
        std::vector<FlowSpec> fl{{F.xi0(), FlowSide::right}};
        auto f = F.tau_at(-1, s.inverse()), g = F.tau_at(1, s);
        auto lhs = hirota_apply(fl, HirotaPoly::operator_d(1, 0), f, g, q);
        auto rhs = sub(scale(product(F.tau_at(-1, s), F.tau_at(1, s.inverse())), eps.inverse()),
                       product({F.xi0(), f, g}));
        return compare(lhs, rhs, w);
    }
    case IdentityId::toda: {
        Residual acc;
        std::vector<FlowSpec> fl{{F.eta0(), FlowSide::left}, {F.xi0(), FlowSide::right}};
        auto dd = HirotaPoly::operator_d(2, 0) * HirotaPoly::operator_d(2, 1);
        for (int sign : {1, -1}) {
            auto t = F.tau(sign);
            auto lhs = add(scale(hirota_apply(fl, dd, t, t, q), Scalar(1, 2)),
                           sub(product(F.tau_at(sign, q), F.tau_at(sign, q.inverse())), product(t, t)));
            merge(acc, compare(lhs, constant(Scalar(0)), w));
        }
        return acc;
    }
    case IdentityId::toda_field: {
        Residual acc;
        for (int sign : {1, -1}) {
            auto lhs = flow(F.eta0(), flow(F.xi0(), F.phi(sign), q, FlowSide::right), q);
            // exp(phi(z) - phi(z/q)) - exp(phi(zq) - phi(z))
            auto e1 = vertex(Scalar(1), [q, sign](int n) {
                if (sign > 0)
                    return n < 0 ? Scalar(1) - q.pow(n) : Scalar(0);
                return n > 0 ? q.pow(n) - Scalar(1) : Scalar(0);
            });
            auto e2 = vertex(Scalar(1), [q, sign](int n) {
                if (sign > 0)
                    return n < 0 ? q.pow(-n) - Scalar(1) : Scalar(0);
                return n > 0 ? Scalar(1) - q.pow(-n) : Scalar(0);
            });
            merge(acc, compare(lhs, sub(e1, e2), w));
        }
        return acc;
    }
    case IdentityId::eta0_xi0:
        return compare(flow(F.eta0(), F.xi0(), q), constant(Scalar(0)), w);
    default:
        throw ArgumentError("not a bracket identity");
    }
}

CheckReport bracket_check(IdentityId id, const VerifyConfig& cfg)
{
    CheckReport rep;
    Sampler rng(check_seed(cfg.seed, id));
    ParamPoint p = rng.param_point(0);
    rep.samples.push_back(p.describe());
    rep.truncation = truncation_text(cfg.bracket);
    if (cfg.bracket.d_deg - 2 < 0) {
        finish_windowed(rep, Residual{});
        return rep;
    }
    ModeFields F(p.s(), p.eps());
    finish_windowed(rep, bracket_identity(id, F, cfg.bracket.window()));
    return rep;
}

// Kernel-weighted bilinear correction [kappa eta(w1) eta(w2)]_1 built from the
// four geometric sectors of the lemma kernels.
Field lemma_kernel(Field eta, const Scalar& q, int cAC, int cAE, int cBC, int cBE)
{
    return pair_kernel(eta, eta, [=](int d1, int d2) {
        Scalar r(0);
        const int z = d1 + d2;
        if (d1 <= -1 && z <= -1)
            r += Scalar(cAC) * q.pow(-2 * d1 - d2);
        if (d1 <= -1 && z >= 1)
            r += Scalar(cAE) * q.pow(d2);
        if (d1 >= 1 && z <= -1)
            r += Scalar(cBC) * q.pow(-d2);
        if (d1 >= 1 && z >= 1)
            r += Scalar(cBE) * q.pow(2 * d1 + d2);
        return r;
    });
}

Residual lemma_identity(IdentityId id, ModeFields& F, const Window& w)
{
    const Scalar q = F.q(), eps = F.eps();
    auto eta = F.eta();
    auto M1 = F.eta0();
    auto M2 = pair_kernel(eta, eta, [q](int d1, int d2) {
        if (d1 == 0 && d2 == 0)
            return Scalar(1, 2);
        return d1 >= 1 && d2 == -d1 ? q.pow(d1) : Scalar(0);
    });
    auto M3 = triple_kernel(eta, eta, eta, [q](int d1, int d2, int d3) {
        Scalar r(0);
        if (d1 == 0 && d2 == 0 && d3 == 0)
            r += Scalar(1, 3);
        if (d1 >= 0 && d3 <= -1 && d1 + d2 + d3 == 0)
            r += q.pow(d1 - d3);
        return r;
    });
    auto tm = F.tau(-1), tp = F.tau(1);
    auto tms = F.tau_at(-1, q.inverse()), tps = F.tau_at(1, q);
    auto ep = dilate(F.eta_part(1), q), em = dilate(F.eta_part(-1), q.inverse());
    auto S = add(ep, em);
    auto P = product(ep, em);
    std::vector<FlowSpec> flows{{M1, FlowSide::left}, {M2, FlowSide::left}, {M3, FlowSide::left}};
    auto D = [](int i) { return HirotaPoly::operator_d(3, i); };
    auto Fn = [](Field f) { return HirotaPoly::functional(3, std::move(f)); };
    auto H = [&](const HirotaPoly& poly, Field f, Field g) { return hirota_apply(flows, poly, f, g, q); };
    const auto A1 = D(0) + Fn(M1);
    const auto A2 = D(1) + Scalar(2) * Fn(M2);
    const auto A3 = D(2) + Scalar(3) * Fn(M3);
    const auto M1S = product(M1, S);
    switch (id) {
    case IdentityId::lemma_3_2: {
        auto br = sum({{Scalar(1), M2}, {Scalar(1, 2), product(M1, M1)}, {Scalar(1), M1S}, {Scalar(1), P},
                       {Scalar(1), lemma_kernel(eta, q, 1, 0, 0, 1)}});
        return compare(H(A3, tm, tp), product({tm, tp, eta, br}), w);
    }
    case IdentityId::lemma_3_3: {
        auto br = sum({{Scalar(4), M2}, {Scalar(-1), product(M1, M1)}, {Scalar(1), M1S}, {Scalar(-2), P},
                       {Scalar(1), lemma_kernel(eta, q, 1, 3, 3, 1)}});
        return compare(H(A1.pow(3), tm, tp), product({tm, tp, eta, br}), w);
    }
    case IdentityId::lemma_3_4: {
        auto br = sum({{Scalar(2), M2}, {Scalar(1), M1S}, {Scalar(1), lemma_kernel(eta, q, 1, 1, 1, 1)}});
        return compare(H(A2, tms, tps), product({tms, tps, br}), w);
    }
    case IdentityId::lemma_3_5: {
        auto br = sum({{Scalar(1), product(M1, M1)}, {Scalar(1), M1S}, {Scalar(2), P},
                       {Scalar(1), lemma_kernel(eta, q, 1, -1, -1, 1)}});
        return compare(H(A1.pow(2), tms, tps), product({tms, tps, br}), w);
    }
    case IdentityId::prop_t2:
        return compare(H(A2, tm, tp), scale(H(A1, tms, tps), eps), w);
    case IdentityId::prop_t3: {
        Residual acc;
        auto l3 = H(A3, tm, tp), l13 = H(A1.pow(3), tm, tp);
        auto r2 = H(A2, tms, tps), r12 = H(A1.pow(2), tms, tps);
        merge(acc, compare(l3, sum({{eps * Scalar(1, 2), r2}, {eps * Scalar(1, 2), r12}}), w));
        merge(acc, compare(l13, sum({{eps * Scalar(2), r2}, {-eps, r12}}), w));
        merge(acc, compare(sum({{Scalar(1), l3}, {Scalar(1, 8), l13}}),
                           sum({{eps * Scalar(3, 4), r2}, {eps * Scalar(3, 8), r12}}), w));
        return acc;
    }
    default:
        throw ArgumentError("not a lemma-family identity");
    }
}

// ---- soliton checks ----

struct SolitonSample {
    ParamPoint p;
    std::vector<Scalar> b;
    Scalar alpha, beta;
};

std::string describe(const SolitonSample& s)
{
    std::string out = s.p.describe() + " b=[";
    for (std::size_t i = 0; i < s.b.size(); ++i)
        out += (i ? "," : "") + s.b[i].str();
    return out + "] alpha=" + s.alpha.str() + " beta=" + s.beta.str();
}

Residual tau_shift_residual(const SolitonSample& x)
{
    const auto& p = x.p;
    const int n = p.n();
    const auto& a = p.a();
    auto tp = make_tau_plus(p);
    auto lhs = miwa_shift(tp, MiwaTime::tbar, x.beta, -1).evaluate(x.b);
    // z^n prod_{i<j} c_ij prod_k f_k b_k sum_I z^{-|I|} c_I prod_{k in I} d_k(beta)/b_k
    Scalar pre(1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pre *= interaction(p, i, j);
    std::vector<Scalar> d;
    for (int k = 0; k < n; ++k) {
        const Scalar& ak = a[static_cast<std::size_t>(k)];
        Scalar den = Scalar(1) - x.beta / (p.q() * ak);
        if (den.is_zero())
            throw PoleError("tau shift: vanishing factor");
        pre *= (Scalar(1) - x.beta / ak) / den * x.b[static_cast<std::size_t>(k)];
        d.push_back(shift_coefficient(p, k, x.beta));
    }
    std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0));
    for (const auto& t : tp.terms()) {
        Scalar v = pre;
        for (std::size_t u = 0; u < t.subset.size(); ++u)
            for (std::size_t v2 = u + 1; v2 < t.subset.size(); ++v2)
                v *= interaction(p, t.subset[u], t.subset[v2]);
        for (int k : t.subset)
            v *= d[static_cast<std::size_t>(k)] / x.b[static_cast<std::size_t>(k)];
        c[static_cast<std::size_t>(n) - t.subset.size()] += v;
    }
    auto rhs = LaurentSeries<Scalar>::polynomial(0, 0, std::move(c), Scalar(0));
    return residual_of(lhs - rhs, "tau-shift");
}

Residual soliton_residual(IdentityId id, const SolitonSample& x)
{
    const auto& p = x.p;
    const auto& b = x.b;
    const int n = p.n();
    const Scalar q = p.q(), eps = p.eps(), al = x.alpha, be = x.beta;
    auto tp = make_tau_plus(p), tm = make_tau_minus(p);
    auto shift = [](const SolitonTau& t, MiwaTime w, const Scalar& amount) { return miwa_shift(t, w, amount, 1); };
    auto prod = [&](const SolitonTau& f, const SolitonTau& g) { return tau_product(f, g, b); };
    switch (id) {
    case IdentityId::tau_shift_lemma:
        return tau_shift_residual(x);
    case IdentityId::hm_pm_1: {
        Scalar pre = Scalar(1) - al * q.pow(n) * eps;
        for (const auto& ak : p.a())
            pre *= (Scalar(1) - al * ak) / (Scalar(1) - al * q * ak);
        auto tma = shift(tm, MiwaTime::t, al);
        auto lhs = prod(tma, tp);
        auto rhs = series_scale(prod(tm, shift(tp, MiwaTime::t, al)), pre) +
                   series_scale(prod(tma.dilated(q.inverse()), tp.dilated(q)), al * eps);
        return residual_of(lhs - rhs, "hm-pm-1");
    }
    case IdentityId::hm_pm_2: {
        Scalar pre = Scalar(1) - be / (q.pow(n) * eps);
        for (const auto& ak : p.a())
            pre *= (Scalar(1) - be / ak) / (Scalar(1) - be / (q * ak));
        auto tmb = shift(tm, MiwaTime::tbar, be);
        auto lhs = prod(tmb.dilated(q.inverse()), tp);
        auto rhs = series_scale(prod(tm.dilated(q.inverse()), shift(tp, MiwaTime::tbar, be)), pre) +
                   series_scale(prod(tmb, tp.dilated(q.inverse())), be / eps);
        return residual_of(lhs - rhs, "hm-pm-2");
    }
    case IdentityId::hm_3: {
        Residual acc;
        for (const SolitonTau* t : {&tp, &tm}) {
            auto ta = shift(*t, MiwaTime::t, al), tb = shift(*t, MiwaTime::tbar, be);
            auto lhs = prod(ta, tb);
            auto rhs = series_scale(prod(*t, shift(ta, MiwaTime::tbar, be)), Scalar(1) - al * be) +
                       series_scale(prod(ta.dilated(q.inverse()), tb.dilated(q)), al * be);
            merge(acc, residual_of(lhs - rhs, t->sign() > 0 ? "hm-3 tau+" : "hm-3 tau-"));
        }
        return acc;
    }
    case IdentityId::to_1:
    case IdentityId::to_2:
    case IdentityId::to_3: {
        auto d = [](int i) { return TimePoly::d(3, i); };
        auto c = [](const Scalar& v) { return TimePoly::scalar(3, v); };
        const auto A1 = d(1) + c(closed_M(1, p));
        const auto A2 = d(2) + c(Scalar(2) * closed_M(2, p));
        const auto A3 = d(3) + c(Scalar(3) * closed_M(3, p));
        auto tms = tm.dilated(q.inverse()), tps = tp.dilated(q);
        auto H = [&](const TimePoly& poly, const SolitonTau& f, const SolitonTau& g) {
            return hirota_apply(poly, f, g, b);
        };
        if (id == IdentityId::to_1)
            return residual_of(H(A1, tm, tp) - series_scale(prod(tms, tps), eps), "to-1");
        if (id == IdentityId::to_2)
            return residual_of(H(A2, tm, tp) - series_scale(H(A1, tms, tps), eps), "to-2");
        auto lhs = H(A3, tm, tp) + series_scale(H(A1.pow(3), tm, tp), Scalar(1, 8));
        auto rhs = series_scale(H(A2, tms, tps), eps * Scalar(3, 4)) +
                   series_scale(H(A1.pow(2), tms, tps), eps * Scalar(3, 8));
        return residual_of(lhs - rhs, "to-3");
    }
    default:
        throw ArgumentError("not a soliton identity");
    }
}

CheckReport soliton_check(IdentityId id, const VerifyConfig& cfg)
{
    CheckReport rep;
    rep.truncation = "n=1.." + std::to_string(cfg.solitons) + " samples=" + std::to_string(cfg.samples);
    Sampler rng(check_seed(cfg.seed, id));
    Residual acc;
    int evaluated = 0;
    for (int n = 1; n <= cfg.solitons; ++n)
        for (int i = 0; i < cfg.samples; ++i) {
            bool done = false;
            for (int attempt = 0; attempt < 1000 && !done; ++attempt) {
                SolitonSample x{rng.param_point(n), {}, Scalar(0), Scalar(0)};
                for (int k = 0; k < n; ++k)
                    x.b.emplace_back(rng.uniform(1, 9), 7);
                x.alpha = rng.rational(Scalar(1, 8), 40);
                x.beta = rng.rational(Scalar(1, 8), 40);
                try {
                    Residual r = soliton_residual(id, x);
                    merge(acc, r);
                    rep.samples.push_back(describe(x));
                    done = true;
                } catch (const PoleError&) {
                    // resample
                }
            }
            if (!done)
                throw ArgumentError("soliton check: could not draw a pole-free sample");
            ++evaluated;
        }
    rep.is_exact_zero = acc.exact_zero;
    rep.max_abs = acc.max_abs;
    rep.compared = acc.compared;
    if (evaluated == 0) {
        rep.pass = false;
        rep.detail = "inconclusive: no samples";
    } else {
        rep.pass = acc.exact_zero;
        rep.detail = acc.exact_zero ? std::to_string(evaluated) + " samples, residual identically zero"
                                    : "nonzero residual " + acc.first_failure;
    }
    return rep;
}

// ---- convergent checks ----

struct ConvergentSample {
    SolitonPoint point;
    std::vector<Scalar> b2;
};

std::string describe(const ConvergentSample& s)
{
    std::string out = s.point.params.describe() + " b=[";
    for (std::size_t i = 0; i < s.point.b.size(); ++i)
        out += (i ? "," : "") + s.point.b[i].str();
    out += "] b'=[";
    for (std::size_t i = 0; i < s.b2.size(); ++i)
        out += (i ? "," : "") + s.b2[i].str();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", s.point.decay);
    return out + "] decay=" + buf;
}

constexpr double sample_max_decay = 0.6;

ConvergentSample draw_convergent(Sampler& rng, int n)
{
    Sampler::Options opts;
    opts.s = Scalar(1, 2);
    for (int attempt = 0; attempt < 100; ++attempt) {
        ConvergentSample x{sample_convergent_soliton(rng, n, opts, sample_max_decay), {}};
        // A second point on the same time orbit: rescale each amplitude.
        const long j = static_cast<long>(rng.uniform(1, 4));
        for (Scalar f : {Scalar(16 + j, 16), Scalar(16 - j, 16)}) {
            std::vector<Scalar> b2;
            for (const auto& v : x.point.b)
                b2.push_back(v * f);
            if (expansion_decay(x.point.params, b2) < sample_max_decay) {
                x.b2 = std::move(b2);
                return x;
            }
        }
    }
    throw ArgumentError("convergent sample: no admissible second amplitude");
}

std::vector<ConvergentSample> convergent_samples(std::uint64_t seed, int max_n, int per_n)
{
    Sampler rng(seed);
    std::vector<ConvergentSample> out;
    for (int n = 1; n <= max_n; ++n)
        for (int i = 0; i < per_n; ++i)
            out.push_back(draw_convergent(rng, n));
    return out;
}

double to_d(const Scalar& x) { return std::abs(x.to_double()); }

CheckReport conj_iom_check(const VerifyConfig& cfg)
{
    CheckReport rep;
    const int N3 = cfg.iom_modes, N2 = 2 * N3 / 3, N1 = N3 / 3;
    rep.truncation = "N=" + std::to_string(N1) + "," + std::to_string(N2) + "," + std::to_string(N3) +
                     " k=1..3 order=3N+40 bits=512";
    rep.is_exact_zero = false;
    bool ok = true;
    std::string fail;
    Scalar worst(0);
    auto note = [&](bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            fail = what;
        }
    };
    for (const auto& x : convergent_samples(check_seed(cfg.seed, IdentityId::conj_iom), std::min(2, cfg.solitons),
                                            cfg.samples)) {
        rep.samples.push_back(describe(x));
        const auto& p = x.point.params;
        auto eta = eta_from_taus(p, N3, x.point.b);
        auto eta2 = eta_from_taus(p, N3, x.b2);
        for (int k = 1; k <= 3; ++k) {
            const Scalar exact = closed_I(k, p);
            Scalar e1 = (I_k_def(eta, k, N1, p.q()).value - exact).abs();
            Scalar e2 = (I_k_def(eta, k, N2, p.q()).value - exact).abs();
            Scalar v3 = I_k_def(eta, k, N3, p.q()).value;
            Scalar e3 = (v3 - exact).abs();
            Scalar drift = (I_k_def(eta2, k, N3, p.q()).value - v3).abs();
            worst = std::max(worst, std::max(e3, drift));
            rep.compared += 4;
            const std::string tag = "k=" + std::to_string(k) + " at " + p.describe();
            note(to_d(e3) < iom_tolerance, tag + ": error " + e3.decimal(6) + " at N=" + std::to_string(N3));
            note(to_d(e2) <= iom_error_floor || to_d(e2) >= iom_min_decrease * to_d(e3),
                 tag + ": error did not decrease by the required factor");
            note(to_d(e1) <= iom_error_floor || e1 > e2, tag + ": error not decreasing");
            note(to_d(drift) < iom_tolerance, tag + ": amplitude dependence " + drift.decimal(6));
        }
        auto xi = xi_from_taus(p, N3, x.point.b);
        Scalar eb = (xi[0] - closed_Ibar(1, p)).abs();
        worst = std::max(worst, eb);
        ++rep.compared;
        note(to_d(eb) < iom_tolerance, "barred k=1 at " + p.describe() + ": error " + eb.decimal(6));
    }
    rep.max_abs = worst;
    rep.pass = ok && rep.compared > 0;
    rep.detail = rep.compared == 0 ? "inconclusive: no samples"
                                   : (ok ? "all errors below " + Scalar(1, 10000000000).decimal(1) +
                                               " with decreasing trend"
                                         : fail);
    return rep;
}

CheckReport m_consistency_check(IdentityId id, const VerifyConfig& cfg)
{
    CheckReport rep;
    const bool cubic = id == IdentityId::m3_consistency;
    const int kmin = cubic ? 3 : 1, kmax = cubic ? 4 : 2;
    const int N = cfg.iom_modes;
    rep.truncation = "exact k=" + std::to_string(kmin) + ".." + std::to_string(kmax) + " at " +
                     std::to_string(cfg.m_points) + " points; kernel N=" + std::to_string(N);
    rep.is_exact_zero = false;
    bool ok = true;
    std::string fail;
    Sampler rng(check_seed(cfg.seed, id));
    long exact_checked = 0;
    for (int i = 0; i < cfg.m_points; ++i) {
        ParamPoint p = rng.param_point(1 + i % 3);
        for (bool bar : {false, true}) {
            std::vector<Scalar> I;
            for (int k = 1; k <= kmax; ++k)
                I.push_back(bar ? closed_Ibar(k, p) : closed_I(k, p));
            for (int k = kmin; k <= kmax; ++k) {
                ++exact_checked;
                Scalar d = M_from_I(std::span<const Scalar>(I).first(static_cast<std::size_t>(k)), p.q(), bar) -
                           closed_M(k, p, bar);
                if (!d.is_zero() && ok) {
                    ok = false;
                    fail = std::string(bar ? "barred " : "") + "M_" + std::to_string(k) + " mismatch at " +
                           p.describe();
                }
            }
        }
        rep.samples.push_back(p.describe());
    }
    Scalar worst(0);
    for (const auto& x : convergent_samples(check_seed(cfg.seed, id) + 1, std::min(2, cfg.solitons), 1)) {
        rep.samples.push_back(describe(x));
        const auto& p = x.point.params;
        auto eta = eta_from_taus(p, N, x.point.b);
        const int k = cubic ? 3 : 2;
        std::vector<Scalar> I;
        for (int j = 1; j <= k; ++j)
            I.push_back(I_k_def(eta, j, N, p.q()).value);
        Scalar kernel = cubic ? M3_kernel(eta, N, p.q()) : M2_kernel(eta, N, p.q());
        Scalar d1 = (kernel - M_from_I(I, p.q())).abs();
        Scalar d2 = (kernel - closed_M(k, p)).abs();
        worst = std::max(worst, std::max(d1, d2));
        rep.compared += 2;
        if ((to_d(d1) >= iom_tolerance || to_d(d2) >= iom_tolerance) && ok) {
            ok = false;
            fail = "kernel M_" + std::to_string(k) + " off by " + std::max(d1, d2).decimal(6) + " at " + p.describe();
        }
    }
    rep.compared += exact_checked;
    rep.max_abs = worst;
    rep.pass = ok && rep.compared > 0;
    rep.detail = ok ? std::to_string(exact_checked) + " exact Newton identities hold; kernel values within tolerance"
                    : fail;
    return rep;
}

} // namespace

std::string_view mode_name(CheckMode m)
{
    switch (m) {
    case CheckMode::exact:
        return "exact";
    case CheckMode::windowed:
        return "windowed";
    case CheckMode::convergent:
        return "convergent";
    }
    return "?";
}

const std::vector<IdentityInfo>& identity_table() { return table; }

const IdentityInfo& identity_info(IdentityId id) { return table[static_cast<std::size_t>(id)]; }

std::optional<IdentityId> identity_from_name(std::string_view name)
{
    for (const auto& e : table)
        if (e.name == name)
            return e.id;
    return std::nullopt;
}

CheckReport check_lemma_t3_family(IdentityId id, const AlgebraTruncation& trunc, std::uint64_t seed)
{
    CheckReport rep;
    Sampler rng(check_seed(seed, id));
    ParamPoint p = rng.param_point(0);
    rep.samples.push_back(p.describe());
    rep.truncation = truncation_text(trunc);
    if (trunc.d_deg - 2 < 0) {
        finish_windowed(rep, Residual{});
        return rep;
    }
    ModeFields F(p.s(), p.eps());
    finish_windowed(rep, lemma_identity(id, F, trunc.window()));
    return rep;
}

CheckReport run_check(IdentityId id, const VerifyConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    const IdentityInfo& info = identity_info(id);
    CheckReport rep;
    try {
        if (info.group == "bracket")
            rep = bracket_check(id, config);
        else if (info.group == "lemma")
            rep = check_lemma_t3_family(id, config.lemma, config.seed);
        else if (info.group == "soliton-exact")
            rep = soliton_check(id, config);
        else if (id == IdentityId::conj_iom)
            rep = conj_iom_check(config);
        else
            rep = m_consistency_check(id, config);
    } catch (const std::exception& e) {
        rep = CheckReport{};
        rep.is_exact_zero = false;
        rep.pass = false;
        rep.detail = std::string("error: ") + e.what();
    }
    rep.id = id;
    rep.name = std::string(info.name);
    rep.mode = info.mode;
    rep.seed = config.seed;
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

bool glob_match(std::string_view pat, std::string_view s)
{
    if (pat.empty())
        return s.empty();
    if (pat[0] == '*')
        return glob_match(pat.substr(1), s) || (!s.empty() && glob_match(pat, s.substr(1)));
    return !s.empty() && (pat[0] == '?' || pat[0] == s[0]) && glob_match(pat.substr(1), s.substr(1));
}

} // namespace

std::vector<IdentityId> select_identities(std::string_view filter)
{
    std::vector<IdentityId> out;
    const bool glob = filter.find('*') != std::string_view::npos;
    for (const auto& e : table)
        if (filter == "all" || e.group == filter || e.name == filter || (glob && glob_match(filter, e.name)))
            out.push_back(e.id);
    if (out.empty() && !glob)
        throw ArgumentError("unknown identity or group '" + std::string(filter) + "'");
    return out;
}

int effective_threads(int requested)
{
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TODA_BO_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1)
            n = std::min<long>(n, cap);
    }
    return std::max(1, n);
}

std::vector<CheckReport> run_suite(const std::vector<IdentityId>& ids, const VerifyConfig& config)
{
    std::vector<IdentityId> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<CheckReport> out(sorted.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < sorted.size();)
            out[i] = run_check(sorted[i], config);
    };
    const int nthreads = std::min<int>(effective_threads(config.threads), static_cast<int>(sorted.size()));
    if (nthreads <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    return out;
}

std::vector<CheckReport> run_suite(std::string_view filter, const VerifyConfig& config)
{
    return run_suite(select_identities(filter), config);
}

} // namespace todabo
