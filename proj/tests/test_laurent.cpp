#include "doctest.h"

#include "todabo/alpha_poly.hpp"
#include "todabo/laurent.hpp"
#include "todabo/multi_series.hpp"
#include "todabo/params.hpp"

using namespace todabo;

namespace {

using S = LaurentSeries<Scalar>;

S poly(int lo, std::vector<long> c)
{
    std::vector<Scalar> v(c.begin(), c.end());
    return S::polynomial(0, lo, std::move(v), Scalar(0));
}

S random_power_series(Sampler& rng, int terms, bool zero_constant, bool unit_constant)
{
    std::vector<Scalar> c;
    for (int i = 0; i < terms; ++i)
        c.push_back(rng.rational(Scalar(2), 9));
    if (zero_constant)
        c[0] = Scalar(0);
    if (unit_constant)
        c[0] = Scalar(1);
    return S::polynomial(0, 0, std::move(c), Scalar(0));
}

} // namespace

TEST_CASE("products of Laurent polynomials")
{
    auto f = poly(0, {1, 1}) * poly(0, {1, -1});
    CHECK(f.at(0) == Scalar(1));
    CHECK(f.at(1) == Scalar(0));
    CHECK(f.at(2) == Scalar(-1));
    CHECK(f.at(7) == Scalar(0));
    auto g = poly(-1, {1}) * poly(1, {1});
    CHECK(g.at(0) == Scalar(1));
    CHECK(g.at(-3) == Scalar(0));
}

TEST_CASE("unknown degrees are never implicit zeros")
{
    auto ps = S::power_series(0, {Scalar(1), Scalar(2), Scalar(3)}, Scalar(0));
    CHECK(ps.at(-5) == Scalar(0)); // outside the support
    CHECK_THROWS_AS(ps.at(3), ArgumentError);
    auto prod = ps * S::inverse_power_series(0, {Scalar(1), Scalar(1)}, Scalar(0));
    // Two-sided unknown tails leave only degrees that every contributing pair determines.
    CHECK_THROWS_AS(prod.at(0), ArgumentError);
    CHECK_THROWS_AS(series_inv(prod), ArgumentError);
    auto other = LaurentSeries<Scalar>(1, 0, 0, 0, 0, Scalar(0));
    CHECK_THROWS_AS(ps * other, ArgumentError);
}

TEST_CASE("constant term of a product is the convolution")
{
    Sampler rng(17);
    for (int t = 0; t < 20; ++t) {
        std::vector<Scalar> a, b;
        for (int i = 0; i < 9; ++i) {
            a.push_back(rng.rational(Scalar(3), 11));
            b.push_back(rng.rational(Scalar(3), 11));
        }
        auto f = S::polynomial(0, -4, a, Scalar(0)), g = S::polynomial(0, -4, b, Scalar(0));
        Scalar conv(0);
        for (int d = -4; d <= 4; ++d)
            conv += a[static_cast<std::size_t>(d + 4)] * b[static_cast<std::size_t>(-d + 4)];
        CHECK((f * g).at(0) == conv);
    }
}

TEST_CASE("series inversion")
{
    CHECK(series_inv(poly(0, {1})).at(0) == Scalar(1));
    auto geo = series_inv(S::power_series(0, {Scalar(1), Scalar(-1)}, Scalar(0)).bounded(0, 1), 12);
    for (int k = 0; k <= 12; ++k)
        CHECK(geo.at(k) == Scalar(1));
    auto f = poly(0, {1, 3, 2});
    auto inv = series_inv(f, 16);
    auto back = f * inv;
    CHECK(back.at(0) == Scalar(1));
    for (int k = 1; k <= 16; ++k)
        CHECK(back.at(k) == Scalar(0));
    CHECK_THROWS_AS(series_inv(poly(0, {2, 1})), ArgumentError);
    CHECK_THROWS_AS(series_inv(poly(-1, {1, 1, 1})), ArgumentError);
    // One-sided in 1/z works as well.
    auto down = series_inv(poly(-2, {5, 0, 1}), 8);
    CHECK((poly(-2, {5, 0, 1}) * down).at(-6) == Scalar(0));
}

TEST_CASE("exp and log")
{
    CHECK(series_exp(poly(0, {0}), 5).at(3) == Scalar(0));
    auto l = series_log(poly(0, {1, 1}), 6);
    for (int k = 1; k <= 6; ++k)
        CHECK(l.at(k) == Scalar(k % 2 ? 1 : -1, k));
    CHECK_THROWS_AS(series_exp(poly(0, {1, 1})), ArgumentError);
    CHECK_THROWS_AS(series_log(poly(0, {2, 1})), ArgumentError);
    Sampler rng(23);
    for (int t = 0; t < 5; ++t) {
        auto f = random_power_series(rng, 8, true, false);
        auto round = series_log(series_exp(f, 16), 16);
        for (int k = 0; k <= 16; ++k)
            CHECK(round.at(k) == f.at(k));
        auto g = random_power_series(rng, 8, false, true);
        auto round2 = series_exp(series_log(g, 16), 16);
        for (int k = 0; k <= 16; ++k)
            CHECK(round2.at(k) == g.at(k));
    }
}

TEST_CASE("ring axioms on random series")
{
    Sampler rng(29);
    for (int t = 0; t < 10; ++t) {
        auto f = S::power_series(0, {rng.rational(Scalar(2), 9), rng.rational(Scalar(2), 9), rng.rational(Scalar(2), 9), rng.rational(Scalar(2), 9)}, Scalar(0));
        auto g = random_power_series(rng, 3, false, false);
        auto h = random_power_series(rng, 5, false, false);
        auto a = (f * g) * h, b = f * (g * h);
        auto c = f * (g + h), d = f * g + f * h;
        for (int k = 0; k <= 3; ++k) {
            CHECK(a.at(k) == b.at(k));
            CHECK(c.at(k) == d.at(k));
        }
        CHECK_THROWS_AS(a.at(4), ArgumentError);
    }
}

TEST_CASE("exp/log round trip with mode-algebra coefficients")
{
    Truncation t{3, 4};
    std::vector<AlphaPoly> c{AlphaPoly(t)};
    for (int n = 1; n <= 3; ++n)
        c.push_back(AlphaPoly::mode(t, -n) * Scalar(1, n + 1));
    auto f = LaurentSeries<AlphaPoly>::polynomial(0, 0, c, AlphaPoly(t));
    auto round = series_log(series_exp(f, 6), 6);
    for (int k = 0; k <= 3; ++k)
        CHECK(round.at(k) == f.at(k));
}

TEST_CASE("multivariate constant terms")
{
    using M = MultiSeries<Scalar>;
    M a(2, 3, Scalar(0));
    a.add({1, -1}, Scalar(1));
    CHECK(a.constant_term() == Scalar(0));
    M b(2, 3, Scalar(0));
    b.add({-1, 1}, Scalar(1));
    CHECK((a * b).constant_term() == Scalar(1));
    CHECK_THROWS_AS(M(5, 2, Scalar(0)), ArgumentError);
    CHECK_THROWS_AS(M(2, -1, Scalar(0)), ArgumentError);
    // [eta(w)]_1 = eta_0
    auto eta = S::polynomial(0, -2, {Scalar(3), Scalar(5), Scalar(7), Scalar(11), Scalar(13)}, Scalar(0));
    CHECK(M::embed(1, 4, 0, eta).constant_term() == Scalar(7));
    CHECK(M::embed(2, 4, 1, eta).dump().find("(0,0): 7/1") != std::string::npos);
}

TEST_CASE("kernel series")
{
    const Scalar q(1, 3);
    auto k1 = kernel_series(KernelKind::plus, 0, 1, 1, q, 2, 4, Scalar(0));
    CHECK(k1.terms().size() == 2);
    CHECK(k1.terms().at({-1, 1}) == (Scalar(1) - q.inverse()) * q);
    CHECK_THROWS_AS(kernel_series(KernelKind::plus, 1, 1, 2, q, 2, 4, Scalar(0)), ArgumentError);
    // times (1 - q w_j/w_i) gives (1 - w_j/w_i) up to order N
    const int N = 12;
    auto k = kernel_series(KernelKind::plus, 0, 1, N, q, 2, N + 1, Scalar(0));
    MultiSeries<Scalar> f(2, N + 1, Scalar(0));
    f.add({0, 0}, Scalar(1));
    f.add({-1, 1}, -q);
    auto prod = k * f;
    for (const auto& [e, c] : prod.terms()) {
        if (e[1] > N)
            continue;
        if (e == std::vector<int>{0, 0})
            CHECK(c == Scalar(1));
        else if (e == std::vector<int>{-1, 1})
            CHECK(c == Scalar(-1));
        else
            CHECK(c == Scalar(0));
    }
    auto minus = kernel_series(KernelKind::minus, 0, 1, 3, q, 2, 4, Scalar(0));
    auto plus_inv = kernel_series(KernelKind::plus, 0, 1, 3, q.inverse(), 2, 4, Scalar(0));
    CHECK(minus.dump() == plus_inv.dump());
}
