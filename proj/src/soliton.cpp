#include "todabo/soliton.hpp"

#include <Eigen/Eigenvalues>
#include <gmpxx.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

namespace todabo {

namespace {

std::vector<std::vector<int>> all_subsets(int n)
{
    std::vector<std::vector<int>> out;
    for (int r = 0; r <= n; ++r) {
        std::vector<bool> pick(static_cast<std::size_t>(n), false);
        std::fill(pick.begin(), pick.begin() + r, true);
        do {
            std::vector<int> s;
            for (int k = 0; k < n; ++k)
                if (pick[static_cast<std::size_t>(k)])
                    s.push_back(k);
            out.push_back(std::move(s));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

Scalar subset_interaction(const ParamPoint& p, const std::vector<int>& subset)
{
    Scalar c(1);
    for (std::size_t x = 0; x < subset.size(); ++x)
        for (std::size_t y = x + 1; y < subset.size(); ++y)
            c *= interaction(p, subset[x], subset[y]);
    return c;
}

Scalar checked_ratio(const Scalar& num, const Scalar& den, const char* what)
{
    if (den.is_zero())
        throw PoleError(std::string(what) + ": vanishing denominator");
    return num / den;
}

const std::vector<Scalar>& amplitudes_or_ones(const std::vector<Scalar>& b, int n, std::vector<Scalar>& storage)
{
    if (b.empty()) {
        storage.assign(static_cast<std::size_t>(n), Scalar(1));
        return storage;
    }
    if (static_cast<int>(b.size()) != n)
        throw ArgumentError("soliton: amplitude count does not match n");
    for (const auto& x : b)
        if (x.is_zero())
            throw ArgumentError("soliton: amplitudes must be nonzero");
    return b;
}

// Coefficients P_0..P_n of tau_+ (in z) or tau_- (in 1/z) at amplitudes b.
std::vector<Scalar> tau_coefficients(const SolitonTau& tau, const std::vector<Scalar>& b)
{
    std::vector<Scalar> c(static_cast<std::size_t>(tau.params().n()) + 1, Scalar(0));
    for (const auto& t : tau.terms())
        c[t.subset.size()] += t.coefficient * tau.amplitude(t, b);
    return c;
}

// Largest |1/root| of the polynomial c_0 + c_1 x + ... (c_0 != 0).
double inverse_root_radius(const std::vector<double>& c)
{
    int deg = static_cast<int>(c.size()) - 1;
    while (deg > 0 && c[static_cast<std::size_t>(deg)] == 0.0)
        --deg;
    if (deg == 0)
        return 0.0;
    // Roots of the reversed polynomial are the reciprocal roots.
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i)
        comp(0, i) = -c[static_cast<std::size_t>(i + 1)] / c[0];
    for (int i = 1; i < deg; ++i)
        comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    double r = 0;
    for (int i = 0; i < deg; ++i)
        r = std::max(r, std::abs(es.eigenvalues()[i]));
    return r;
}

std::vector<double> to_double(const std::vector<Scalar>& v)
{
    std::vector<double> r;
    for (const auto& x : v)
        r.push_back(x.to_double());
    return r;
}

template <class T>
std::vector<T> ratio_series(const std::vector<T>& num, const std::vector<T>& den, int order, const T& zero)
{
    // den[0] == 1
    std::vector<T> inv(static_cast<std::size_t>(order) + 1, zero);
    inv[0] = den[0] / den[0];
    for (int k = 1; k <= order; ++k) {
        T acc = zero;
        for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j)
            acc += den[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
        inv[static_cast<std::size_t>(k)] = -acc;
    }
    std::vector<T> out(static_cast<std::size_t>(order) + 1, zero);
    for (int k = 0; k <= order; ++k) {
        T acc = zero;
        for (int j = 0; j <= k && j < static_cast<int>(num.size()); ++j)
            acc += num[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

// eta_m = pre * sum_j A_j B_{j-m}, with A in powers of 1/z and B in powers of z.
template <class T>
std::vector<T> combine_modes(const std::vector<T>& A, const std::vector<T>& B, int N, const T& pre, const T& zero)
{
    const int L = static_cast<int>(A.size()) - 1;
    std::vector<T> out(static_cast<std::size_t>(2 * N + 1), zero);
    for (int m = -N; m <= N; ++m) {
        T acc = zero;
        for (int j = std::max(0, m); j <= L && j - m <= L; ++j)
            acc += A[static_cast<std::size_t>(j)] * B[static_cast<std::size_t>(j - m)];
        out[static_cast<std::size_t>(m + N)] = pre * acc;
    }
    return out;
}

std::vector<Scalar> dilate_coefficients(const std::vector<Scalar>& c, const Scalar& lambda)
{
    std::vector<Scalar> r;
    for (std::size_t i = 0; i < c.size(); ++i)
        r.push_back(c[i] * lambda.pow(static_cast<long>(i)));
    return r;
}

double envelope(const std::vector<mpf_class>& c, double rho)
{
    double k = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
        k = std::max(k, std::abs(c[j].get_d()) / std::pow(rho, static_cast<double>(j)));
    return k;
}

Scalar scalar_from_double(double x)
{
    return Scalar(mpq_class(x));
}

// Modes of pre * [numP(z)/denP(z)] [numQ(1/z)/denQ(1/z)] on |z| = 1.
ModeVector ratio_modes(const std::vector<Scalar>& numP, const std::vector<Scalar>& denP,
                       const std::vector<Scalar>& numQ, const std::vector<Scalar>& denQ, const Scalar& pre,
                       int N, const ExpansionOptions& opts)
{
    double rho = std::max(inverse_root_radius(to_double(denP)), inverse_root_radius(to_double(denQ)));
    if (!(rho < opts.max_decay))
        throw ArgumentError("expansion region violated: decay rate " + std::to_string(rho));
    const int L = opts.order > 0 ? opts.order : 3 * N + 40;
    const auto bits = static_cast<mp_bitcnt_t>(opts.precision_bits);
    auto to_mpf = [&](const std::vector<Scalar>& v) {
        std::vector<mpf_class> r;
        for (const auto& x : v)
            r.emplace_back(x.raw(), bits);
        return r;
    };
    const mpf_class zero(0, bits);
    auto B = ratio_series(to_mpf(numP), to_mpf(denP), L, zero);
    auto A = ratio_series(to_mpf(numQ), to_mpf(denQ), L, zero);
    auto modes = combine_modes(A, B, N, mpf_class(pre.raw(), bits), zero);
    ModeVector out = ModeVector::zeros(N);
    for (int m = -N; m <= N; ++m)
        out[m] = Scalar(mpq_class(modes[static_cast<std::size_t>(m + N)]));
    // Dropped terms have an index beyond L in A or B. The envelope uses a
    // slightly inflated rate to absorb polynomial prefactors of repeated roots.
    if (rho == 0.0) {
        out.tail = Scalar(0);
    } else {
        double r = std::pow(rho, 0.8);
        double bound = 2.0 * std::abs(pre.to_double()) * envelope(A, r) * envelope(B, r) * std::pow(r, L + 1) /
                       ((1 - r) * (1 - r));
        out.tail = scalar_from_double(bound);
    }
    out.tail += Scalar(mpq_class(1, 1)) * Scalar(1, 2).pow(opts.precision_bits - 32);
    return out;
}

} // namespace

SolitonTau::SolitonTau(int sign, ParamPoint p, std::vector<SolitonTerm> terms)
    : sign_(sign > 0 ? 1 : -1), p_(std::move(p)), terms_(std::move(terms))
{
}

Scalar SolitonTau::time_eigenvalue(const SolitonTerm& term, int i, bool bar) const
{
    if (i < 1)
        throw ArgumentError("time_eigenvalue: time index must be >= 1");
    const int e = bar ? -i : i;
    Scalar factor = Scalar(1) - p_.q().pow(e);
    Scalar sum(0);
    for (int k : term.subset)
        sum += p_.a()[static_cast<std::size_t>(k)].pow(e);
    return Scalar(sign_) * factor * sum;
}

Scalar SolitonTau::amplitude(const SolitonTerm& term, const std::vector<Scalar>& b) const
{
    if (b.empty())
        return Scalar(1);
    Scalar r(1);
    for (int k : term.subset)
        r *= b[static_cast<std::size_t>(k)];
    return sign_ > 0 ? r : r.inverse();
}

LaurentSeries<Scalar> SolitonTau::evaluate(const std::vector<Scalar>& b) const
{
    std::vector<Scalar> storage;
    const auto& amp = amplitudes_or_ones(b, p_.n(), storage);
    const int n = p_.n();
    const int lo = sign_ > 0 ? 0 : -n, hi = sign_ > 0 ? n : 0;
    std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0));
    for (const auto& t : terms_)
        c[static_cast<std::size_t>(t.z_degree - lo)] += t.coefficient * amplitude(t, amp);
    (void)hi;
    return LaurentSeries<Scalar>::polynomial(0, lo, std::move(c), Scalar(0));
}

SolitonTau SolitonTau::dilated(const Scalar& lambda) const
{
    std::vector<SolitonTerm> t = terms_;
    for (auto& term : t)
        term.coefficient *= lambda.pow(term.z_degree);
    return SolitonTau(sign_, p_, std::move(t));
}

Scalar interaction(const ParamPoint& p, int i, int j)
{
    const auto& a = p.a();
    const Scalar &ai = a[static_cast<std::size_t>(i)], &aj = a[static_cast<std::size_t>(j)];
    Scalar d = ai - aj;
    return checked_ratio(d * d, (ai - p.q() * aj) * (ai - p.q().inverse() * aj), "interaction");
}

Scalar shift_coefficient(const ParamPoint& p, int k, const Scalar& beta)
{
    const Scalar& ak = p.a()[static_cast<std::size_t>(k)];
    Scalar r = checked_ratio(Scalar(1) - beta / (p.q() * ak), Scalar(1) - beta / ak, "d_k");
    for (int j = 0; j < p.n(); ++j)
        if (j != k)
            r /= interaction(p, k, j);
    return r;
}

SolitonTau make_tau_plus(const ParamPoint& p)
{
    std::vector<SolitonTerm> terms;
    for (auto& s : all_subsets(p.n())) {
        int deg = static_cast<int>(s.size());
        Scalar c = subset_interaction(p, s);
        terms.push_back({std::move(s), std::move(c), deg});
    }
    return SolitonTau(1, p, std::move(terms));
}

SolitonTau make_tau_minus(const ParamPoint& p)
{
    const Scalar beta = p.q().pow(p.n()) * p.eps();
    std::vector<Scalar> d;
    for (int k = 0; k < p.n(); ++k)
        d.push_back(shift_coefficient(p, k, beta));
    std::vector<SolitonTerm> terms;
    for (auto& s : all_subsets(p.n())) {
        Scalar c = subset_interaction(p, s);
        for (int k : s)
            c *= d[static_cast<std::size_t>(k)];
        int deg = -static_cast<int>(s.size());
        terms.push_back({std::move(s), std::move(c), deg});
    }
    return SolitonTau(-1, p, std::move(terms));
}

SolitonTau miwa_shift(const SolitonTau& tau, MiwaTime which, const Scalar& amount, int direction)
{
    if (direction != 1 && direction != -1)
        throw ArgumentError("miwa_shift: direction must be +1 or -1");
    const ParamPoint& p = tau.params();
    std::vector<Scalar> factor;
    for (const auto& ak : p.a()) {
        Scalar num, den;
        if (which == MiwaTime::t) {
            num = Scalar(1) - amount * p.q() * ak;
            den = Scalar(1) - amount * ak;
        } else {
            num = Scalar(1) - amount / (p.q() * ak);
            den = Scalar(1) - amount / ak;
        }
        if (direction * tau.sign() < 0)
            std::swap(num, den);
        factor.push_back(checked_ratio(num, den, "miwa_shift"));
    }
    std::vector<SolitonTerm> terms = tau.terms();
    for (auto& t : terms)
        for (int k : t.subset)
            t.coefficient *= factor[static_cast<std::size_t>(k)];
    return SolitonTau(tau.sign(), p, std::move(terms));
}

TimePoly TimePoly::d(int ntimes, int i)
{
    if (i < 1 || i > ntimes)
        throw ArgumentError("TimePoly: time index out of range");
    TimePoly p(ntimes);
    Powers pw(static_cast<std::size_t>(ntimes), 0);
    pw[static_cast<std::size_t>(i - 1)] = 1;
    p.accumulate(pw, Scalar(1));
    return p;
}

TimePoly TimePoly::scalar(int ntimes, const Scalar& c)
{
    TimePoly p(ntimes);
    p.accumulate(Powers(static_cast<std::size_t>(ntimes), 0), c);
    return p;
}

void TimePoly::accumulate(const Powers& p, const Scalar& c)
{
    auto [it, fresh] = terms_.try_emplace(p, c);
    if (!fresh)
        it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

TimePoly operator+(const TimePoly& a, const TimePoly& b)
{
    if (a.ntimes_ != b.ntimes_)
        throw ArgumentError("TimePoly: time count mismatch");
    TimePoly r = a;
    for (const auto& [p, c] : b.terms_)
        r.accumulate(p, c);
    return r;
}

TimePoly operator*(const TimePoly& a, const TimePoly& b)
{
    if (a.ntimes_ != b.ntimes_)
        throw ArgumentError("TimePoly: time count mismatch");
    TimePoly r(a.ntimes_);
    for (const auto& [pa, ca] : a.terms_)
        for (const auto& [pb, cb] : b.terms_) {
            TimePoly::Powers p(pa.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                p[i] = pa[i] + pb[i];
            r.accumulate(p, ca * cb);
        }
    return r;
}

TimePoly operator*(const Scalar& c, const TimePoly& a) { return TimePoly::scalar(a.ntimes_, c) * a; }

TimePoly TimePoly::pow(int k) const
{
    if (k < 0)
        throw ArgumentError("TimePoly: negative power");
    TimePoly r = scalar(ntimes_, Scalar(1));
    for (int i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

LaurentSeries<Scalar> hirota_apply(const TimePoly& poly, const SolitonTau& f, const SolitonTau& g,
                                   const std::vector<Scalar>& b)
{
    const int n = f.params().n();
    std::vector<Scalar> storage;
    const auto& amp = amplitudes_or_ones(b, n, storage);
    const int r = poly.ntimes();
    auto eigen = [&](const SolitonTau& tau, const SolitonTerm& t) {
        std::vector<Scalar> v;
        for (int i = 1; i <= r; ++i)
            v.push_back(tau.time_eigenvalue(t, i));
        return v;
    };
    std::vector<std::vector<Scalar>> ef, eg;
    for (const auto& t : f.terms())
        ef.push_back(eigen(f, t));
    for (const auto& t : g.terms())
        eg.push_back(eigen(g, t));
    const int lo = (f.sign() > 0 ? 0 : -n) + (g.sign() > 0 ? 0 : -n);
    std::vector<Scalar> c(static_cast<std::size_t>(2 * n) + 1, Scalar(0));
    for (std::size_t x = 0; x < f.terms().size(); ++x)
        for (std::size_t y = 0; y < g.terms().size(); ++y) {
            const auto &tf = f.terms()[x], &tg = g.terms()[y];
            Scalar v(0);
            for (const auto& [pw, coef] : poly.terms()) {
                Scalar m = coef;
                for (int i = 0; i < r; ++i)
                    if (pw[static_cast<std::size_t>(i)] > 0)
                        m *= (ef[x][static_cast<std::size_t>(i)] - eg[y][static_cast<std::size_t>(i)])
                                 .pow(pw[static_cast<std::size_t>(i)]);
                v += m;
            }
            if (v.is_zero())
                continue;
            c[static_cast<std::size_t>(tf.z_degree + tg.z_degree - lo)] +=
                v * tf.coefficient * tg.coefficient * f.amplitude(tf, amp) * g.amplitude(tg, amp);
        }
    return LaurentSeries<Scalar>::polynomial(0, lo, std::move(c), Scalar(0));
}

LaurentSeries<Scalar> tau_product(const SolitonTau& f, const SolitonTau& g, const std::vector<Scalar>& b)
{
    return hirota_apply(TimePoly::scalar(1, Scalar(1)), f, g, b);
}

const Scalar& ModeVector::operator[](int m) const
{
    if (m < -N || m > N)
        throw ArgumentError("ModeVector: index outside window");
    return values[static_cast<std::size_t>(m + N)];
}

Scalar& ModeVector::operator[](int m)
{
    if (m < -N || m > N)
        throw ArgumentError("ModeVector: index outside window");
    return values[static_cast<std::size_t>(m + N)];
}

ModeVector ModeVector::zeros(int N)
{
    ModeVector v;
    v.N = N;
    v.values.assign(static_cast<std::size_t>(2 * N + 1), Scalar(0));
    return v;
}

double expansion_decay(const ParamPoint& p, const std::vector<Scalar>& b)
{
    auto P = to_double(tau_coefficients(make_tau_plus(p), b));
    auto Q = to_double(tau_coefficients(make_tau_minus(p), b));
    double r = std::max(inverse_root_radius(P), inverse_root_radius(Q));
    return r * std::max(1.0, std::abs(p.s().to_double()));
}

ModeVector eta_from_taus(const ParamPoint& p, int N, const std::vector<Scalar>& b, const ExpansionOptions& opts)
{
    std::vector<Scalar> storage;
    const auto& amp = amplitudes_or_ones(b, p.n(), storage);
    auto P = tau_coefficients(make_tau_plus(p), amp);
    auto Q = tau_coefficients(make_tau_minus(p), amp);
    return ratio_modes(dilate_coefficients(P, p.q()), P, dilate_coefficients(Q, p.q()), Q, p.eps(), N, opts);
}

ModeVector xi_from_taus(const ParamPoint& p, int N, const std::vector<Scalar>& b, const ExpansionOptions& opts)
{
    std::vector<Scalar> storage;
    const auto& amp = amplitudes_or_ones(b, p.n(), storage);
    auto P = tau_coefficients(make_tau_plus(p), amp);
    auto Q = tau_coefficients(make_tau_minus(p), amp);
    const Scalar s = p.s(), si = p.s().inverse();
    // tau_+(z/s)/tau_+(zs) in z; tau_-(zs)/tau_-(z/s) in 1/z.
    return ratio_modes(dilate_coefficients(P, si), dilate_coefficients(P, s), dilate_coefficients(Q, si),
                       dilate_coefficients(Q, s), p.eps().inverse(), N, opts);
}

std::vector<Scalar> alpha_from_tau(const ParamPoint& p, int N, const std::vector<Scalar>& b)
{
    std::vector<Scalar> alpha(static_cast<std::size_t>(2 * N) + 1, Scalar(0));
    auto lp = series_log(make_tau_plus(p).evaluate(b), N);
    auto lm = series_log(make_tau_minus(p).evaluate(b), N);
    for (int n = 1; n <= N; ++n) {
        Scalar f = Scalar(-1) * (Scalar(1) - p.q().pow(n));
        alpha[static_cast<std::size_t>(N - n)] = f * lp.at(n);
        alpha[static_cast<std::size_t>(N + n)] = f * lm.at(-n);
    }
    return alpha;
}

ModeVector eta_from_alpha(const std::vector<Scalar>& alpha, int N, const Scalar& eps, int order)
{
    const int M = (static_cast<int>(alpha.size()) - 1) / 2;
    std::vector<Scalar> pos(static_cast<std::size_t>(M) + 1, Scalar(0)), neg(static_cast<std::size_t>(M) + 1, Scalar(0));
    for (int n = 1; n <= M; ++n) {
        pos[static_cast<std::size_t>(n)] = alpha[static_cast<std::size_t>(M - n)];
        neg[static_cast<std::size_t>(n)] = alpha[static_cast<std::size_t>(M + n)];
    }
    auto ep = series_exp(LaurentSeries<Scalar>::power_series(0, pos, Scalar(0)).bounded(0, M), order);
    auto en = series_exp(LaurentSeries<Scalar>::inverse_power_series(0, neg, Scalar(0)).bounded(-M, 0), order);
    std::vector<Scalar> A, B;
    for (int j = 0; j <= order; ++j) {
        A.push_back(en.at(-j));
        B.push_back(ep.at(j));
    }
    ModeVector out = ModeVector::zeros(N);
    out.values = combine_modes(A, B, N, eps, Scalar(0));
    return out;
}

std::vector<double> eta_modes_double(const ParamPoint& p, const std::vector<double>& b, int N, int order)
{
    if (static_cast<int>(b.size()) != p.n())
        throw ArgumentError("eta_modes_double: amplitude count does not match n");
    auto coeffs = [&](const SolitonTau& tau) {
        std::vector<double> c(static_cast<std::size_t>(p.n()) + 1, 0.0);
        for (const auto& t : tau.terms()) {
            double amp = 1;
            for (int k : t.subset)
                amp *= tau.sign() > 0 ? b[static_cast<std::size_t>(k)] : 1.0 / b[static_cast<std::size_t>(k)];
            c[t.subset.size()] += t.coefficient.to_double() * amp;
        }
        return c;
    };
    auto P = coeffs(make_tau_plus(p)), Q = coeffs(make_tau_minus(p));
    const double q = p.q().to_double();
    auto dil = [&](std::vector<double> c) {
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] *= std::pow(q, static_cast<double>(i));
        return c;
    };
    auto B = ratio_series(dil(P), P, order, 0.0);
    auto A = ratio_series(dil(Q), Q, order, 0.0);
    return combine_modes(A, B, N, p.eps().to_double(), 0.0);
}

SolitonPoint sample_convergent_soliton(Sampler& rng, int n, const Sampler::Options& opts, double max_decay)
{
    for (int attempt = 0; attempt < 200000; ++attempt) {
        ParamPoint p = rng.param_point(n, opts);
        const Scalar beta = p.q().pow(n) * p.eps();
        std::vector<Scalar> b;
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            Scalar d;
            try {
                d = shift_coefficient(p, k, beta);
            } catch (const PoleError&) {
                ok = false;
                break;
            }
            double root = std::sqrt(std::abs(d.to_double()));
            long grid = std::lround(root * 64.0);
            if (grid < 1 || root > max_decay) {
                ok = false;
                break;
            }
            b.emplace_back(grid, 64);
        }
        if (!ok)
            continue;
        double decay = expansion_decay(p, b);
        if (decay < max_decay)
            return SolitonPoint{std::move(p), std::move(b), decay};
    }
    throw ArgumentError("sample_convergent_soliton: no convergent point found");
}

SolitonPoint parse_soliton_spec(const std::string& json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("soliton spec: ") + e.what());
    }
    auto get = [&](const char* key) -> std::string {
        if (!j.contains(key) || !j[key].is_string())
            throw ArgumentError(std::string("soliton spec: missing string field '") + key + "'");
        return j[key].get<std::string>();
    };
    Scalar s = Scalar::parse(get("s")), eps = Scalar::parse(get("eps"));
    std::vector<Scalar> a, b;
    if (!j.contains("a") || !j["a"].is_array())
        throw ArgumentError("soliton spec: missing array field 'a'");
    for (const auto& x : j["a"])
        a.push_back(Scalar::parse(x.get<std::string>()));
    if (j.contains("b")) {
        for (const auto& x : j["b"])
            b.push_back(Scalar::parse(x.get<std::string>()));
        if (b.size() != a.size())
            throw ArgumentError("soliton spec: 'a' and 'b' differ in length");
    } else {
        b.assign(a.size(), Scalar(1));
    }
    ParamPoint p(s, eps, std::move(a));
    double decay = expansion_decay(p, b);
    return SolitonPoint{std::move(p), std::move(b), decay};
}

} // namespace todabo
