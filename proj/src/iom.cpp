#include "todabo/iom.hpp"

#include "todabo/symmetric.hpp"

#include <algorithm>
#include <cmath>

namespace todabo {

namespace {

struct ConstantTermSum {
    int k;
    int N;
    const ModeVector& modes;
    std::vector<Scalar> weight; // weight[p], p = 0..N
    std::vector<int> p;         // flattened pair exponents, (i, j) with i < j
    Scalar total{0};

    int pair_index(int i, int j) const { return i * k - i * (i + 1) / 2 + (j - i - 1); }

    void run() { recurse(0); }

    void recurse(std::size_t slot)
    {
        if (slot == p.size()) {
            Scalar term(1);
            for (int i = 0; i < k; ++i) {
                int n = 0;
                for (int j = 0; j < i; ++j)
                    n += p[static_cast<std::size_t>(pair_index(j, i))];
                for (int j = i + 1; j < k; ++j)
                    n -= p[static_cast<std::size_t>(pair_index(i, j))];
                if (n < -N || n > N)
                    return;
                term *= modes[n];
                if (term.is_zero())
                    return;
            }
            for (int x : p)
                term *= weight[static_cast<std::size_t>(x)];
            total += term;
            return;
        }
        for (int x = 0; x <= N; ++x) {
            p[slot] = x;
            recurse(slot + 1);
        }
    }
};

// Envelope |v_m| <= C rho^{|m|} read off the stored modes.
std::pair<double, double> envelope(const ModeVector& v)
{
    double c = 0;
    for (const auto& x : v.values)
        c = std::max(c, std::abs(x.to_double()));
    double rho = 0;
    if (c > 0)
        for (int m = std::max(1, v.N / 2); m <= v.N; ++m) {
            double r = std::max(std::abs(v[m].to_double()), std::abs(v[-m].to_double()));
            if (r > 0)
                rho = std::max(rho, std::pow(r / c, 1.0 / m));
        }
    return {c, std::min(rho, 0.99)};
}

IomResult constant_term_integral(const ModeVector& v, int k, int N, const Scalar& base)
{
    if (k < 1 || k > max_iom_order)
        throw ArgumentError("integral of motion order " + std::to_string(k) + " outside [1, " +
                            std::to_string(max_iom_order) + "]");
    if (N < 0 || N > v.N)
        throw ArgumentError("integral of motion: truncation exceeds the mode window");
    ConstantTermSum s{k, N, v, {}, std::vector<int>(static_cast<std::size_t>(k * (k - 1) / 2), 0)};
    s.weight.push_back(Scalar(1));
    const Scalar g = Scalar(1) - base.inverse();
    for (int x = 1; x <= N; ++x)
        s.weight.push_back(g * base.pow(x));
    s.run();

    // Error budget: the stored-mode error propagates through at most k
    // factors, and the dropped terms carry some mode or kernel index beyond N.
    auto [c, rho] = envelope(v);
    const double b = std::abs(base.to_double());
    const double gd = std::abs(g.to_double());
    const double pairs = k * (k - 1) / 2.0;
    double mode_sum = c * (1 + rho) / (1 - rho);
    double kernel_sum = 1 + gd * (b < 1 ? b / (1 - b) : static_cast<double>(N) * std::pow(b, N));
    double tail = std::pow(kernel_sum, pairs) * k * std::pow(mode_sum + v.tail.to_double(), k - 1) *
                  v.tail.to_double() * (2.0 * N + 1);
    double drop_modes = 2 * c * std::pow(rho, N + 1) / (1 - rho);
    double drop_kernel = b < 1 ? gd * std::pow(b, N + 1) / (1 - b) : INFINITY;
    tail += std::pow(kernel_sum, pairs) * std::pow(mode_sum, k - 1) * k * drop_modes +
            pairs * drop_kernel * std::pow(kernel_sum, pairs - 1) * std::pow(mode_sum, k);
    Scalar t = std::isfinite(tail) ? Scalar(mpq_class(tail * 1.0000001 + 1e-300)) : Scalar(-1);
    return IomResult{k, s.total, N, t};
}

} // namespace

IomResult I_k_def(const ModeVector& eta, int k, int N, const Scalar& q)
{
    return constant_term_integral(eta, k, N, q);
}

IomResult Ibar_k_def(const ModeVector& xi, int k, int N, const Scalar& q)
{
    return constant_term_integral(xi, k, N, q.inverse());
}

Field I_functional(Field eta, int k, const Scalar& q)
{
    if (k == 1)
        return degree_part(eta, DegreePart::zero);
    if (k == 2) {
        const Scalar g = Scalar(1) - q.inverse();
        return pair_kernel(eta, eta, [q, g](int d1, int d2) {
            if (d1 == 0 && d2 == 0)
                return Scalar(1);
            if (d1 >= 1 && d2 == -d1)
                return g * q.pow(d1);
            return Scalar(0);
        });
    }
    throw ArgumentError("I_functional: only k = 1, 2 are available");
}

Scalar M_from_I(std::span<const Scalar> I, const Scalar& q, bool bar)
{
    const Scalar base = bar ? q.inverse() : q;
    const int k = static_cast<int>(I.size());
    if (k < 1)
        throw ArgumentError("M_from_I: need at least I_1");
    std::vector<Scalar> e;
    for (int j = 1; j <= k; ++j) {
        Scalar poch = q_pochhammer(base, j);
        if (poch.is_zero())
            throw PoleError("M_from_I: (q;q)_j vanishes");
        e.push_back(base.pow(static_cast<long>(j) * (j - 1) / 2) * I[static_cast<std::size_t>(j - 1)] / poch);
    }
    return (Scalar(1) - base.pow(k)) * Scalar(1, k) * newton_p_from_e(e);
}

Scalar M2_kernel(const ModeVector& eta, int N, const Scalar& q)
{
    if (N > eta.N)
        throw ArgumentError("M2_kernel: truncation exceeds the mode window");
    Scalar r = Scalar(1, 2) * eta[0] * eta[0];
    for (int m = 1; m <= N; ++m)
        r += q.pow(m) * eta[-m] * eta[m];
    return r;
}

Scalar M3_kernel(const ModeVector& eta, int N, const Scalar& q)
{
    if (N > eta.N)
        throw ArgumentError("M3_kernel: truncation exceeds the mode window");
    Scalar r = Scalar(1, 3) * eta[0] * eta[0] * eta[0];
    for (int a = 0; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            r += q.pow(a + b) * eta[-a] * eta[a - b] * eta[b];
    return r;
}

Scalar closed_I(int k, const ParamPoint& p)
{
    if (k < 0)
        throw ArgumentError("closed_I: negative order");
    const Scalar& q = p.q();
    auto ea = elementary_symmetric_all(p.a(), k);
    const Scalar x0 = q.pow(p.n()) * p.eps();
    Scalar e(0);
    for (int j = 0; j <= k; ++j)
        e += ea[static_cast<std::size_t>(k - j)] * e_geometric_tail(x0, q, j);
    return q.pow(-static_cast<long>(k) * (k - 1) / 2) * q_pochhammer(q, k) * e;
}

Scalar closed_Ibar(int k, const ParamPoint& p) { return closed_I(k, p.inverted()); }

Scalar closed_M(int i, const ParamPoint& p, bool bar)
{
    if (i < 1)
        throw ArgumentError("closed_M: order must be >= 1");
    const ParamPoint pp = bar ? p.inverted() : p;
    return (Scalar(1) - pp.q().pow(i)) * Scalar(1, i) * power_sum_extended(i, pp);
}

} // namespace todabo
