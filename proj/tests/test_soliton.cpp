#include "doctest.h"

#include "todabo/soliton.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace todabo;

namespace {

using V = std::vector<Scalar>;

ParamPoint one_soliton() { return ParamPoint(Scalar(1, 2), Scalar(1, 8), V{Scalar(1, 7)}); }
ParamPoint two_soliton() { return ParamPoint(Scalar(1, 2), Scalar(1, 8), V{Scalar(1, 5), Scalar(-1, 7)}); }

// Modes of the field by a direct DFT of the tau ratio sampled on |z| = 1.
std::vector<std::complex<double>> sampled_eta_modes(const ParamPoint& p, const V& b, int N)
{
    auto tp = make_tau_plus(p).evaluate(b), tm = make_tau_minus(p).evaluate(b);
    auto at = [](const LaurentSeries<Scalar>& f, std::complex<double> z) {
        std::complex<double> v = 0;
        for (int d = f.lo(); d <= f.hi(); ++d)
            v += f.at(d).to_double() * std::pow(z, d);
        return v;
    };
    const double q = p.q().to_double(), eps = p.eps().to_double();
    const int M = 512;
    std::vector<std::complex<double>> modes(static_cast<std::size_t>(2 * N + 1));
    for (int j = 0; j < M; ++j) {
        std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi * j / M);
        std::complex<double> v = eps * at(tm, z / q) * at(tp, z * q) / (at(tm, z) * at(tp, z));
        for (int m = -N; m <= N; ++m)
            modes[static_cast<std::size_t>(m + N)] += v * std::pow(z, m) / static_cast<double>(M);
    }
    return modes;
}

} // namespace

TEST_CASE("zero-soliton tau functions are constant")
{
    ParamPoint p(Scalar(1, 2), Scalar(1, 8), V{});
    auto tp = make_tau_plus(p).evaluate();
    CHECK(tp.lo() == 0);
    CHECK(tp.hi() == 0);
    CHECK(tp.at(0) == Scalar(1));
    CHECK(make_tau_minus(p).evaluate().at(0) == Scalar(1));
    auto eta = eta_from_taus(p, 4);
    CHECK(eta[0] == Scalar(1, 8));
    for (int m = 1; m <= 4; ++m) {
        CHECK(eta[m] == Scalar(0));
        CHECK(eta[-m] == Scalar(0));
    }
    CHECK(eta.tail < Scalar(1, 1000000000));
}

TEST_CASE("one-soliton tau functions")
{
    ParamPoint p = one_soliton();
    const Scalar q = p.q(), a = p.a()[0], b(3, 7);
    auto tp = make_tau_plus(p).evaluate({b});
    CHECK(tp.at(0) == Scalar(1));
    CHECK(tp.at(1) == b);
    const Scalar beta = q * p.eps();
    const Scalar d = (Scalar(1) - beta / (q * a)) / (Scalar(1) - beta / a);
    CHECK(shift_coefficient(p, 0, beta) == d);
    auto tm = make_tau_minus(p).evaluate({b});
    CHECK(tm.at(0) == Scalar(1));
    CHECK(tm.at(-1) == d / b);
    // alpha_{-1} = -(1-q) [z] log(1 + b z)
    auto alpha = alpha_from_tau(p, 3, {Scalar(1)});
    CHECK(alpha[3 - 1] == Scalar(-1) * (Scalar(1) - q));
    CHECK(alpha[3 - 2] == (Scalar(1) - q * q) * Scalar(1, 2));
}

TEST_CASE("two-soliton interaction")
{
    ParamPoint p = two_soliton();
    const Scalar q = p.q(), a1 = p.a()[0], a2 = p.a()[1];
    const Scalar c = (a1 - a2) * (a1 - a2) / ((a1 - q * a2) * (a1 - a2 / q));
    CHECK(interaction(p, 0, 1) == c);
    CHECK(interaction(p, 1, 0) == c);
    V b{Scalar(2, 3), Scalar(5, 4)};
    auto tp = make_tau_plus(p).evaluate(b);
    CHECK(tp.at(1) == b[0] + b[1]);
    CHECK(tp.at(2) == c * b[0] * b[1]);
    auto tm = make_tau_minus(p).evaluate(b);
    const Scalar beta = q * q * p.eps();
    const Scalar d0 = shift_coefficient(p, 0, beta), d1 = shift_coefficient(p, 1, beta);
    CHECK(d0 == (Scalar(1) - beta / (q * a1)) / (Scalar(1) - beta / a1) / c);
    CHECK(tm.at(-2) == c * d0 * d1 / (b[0] * b[1]));
    CHECK(make_tau_plus(p).terms().size() == 4);
}

TEST_CASE("time eigenvalues and Hirota derivatives")
{
    ParamPoint p = two_soliton();
    const Scalar q = p.q();
    auto tp = make_tau_plus(p);
    for (const auto& t : tp.terms()) {
        Scalar expect(0);
        for (int k : t.subset)
            expect += (Scalar(1) - q.pow(2)) * p.a()[static_cast<std::size_t>(k)].pow(2);
        CHECK(tp.time_eigenvalue(t, 2) == expect);
    }
    // D f.f vanishes for odd operators.
    auto d1 = TimePoly::d(2, 1), d2 = TimePoly::d(2, 2);
    CHECK_THROWS_AS(TimePoly::d(2, 0), ArgumentError);
    V b{Scalar(2, 3), Scalar(5, 4)};
    auto odd = hirota_apply(d1 * d1 * d1 + d1 * d2 * d2, tp, tp, b);
    for (int d = odd.lo(); d <= odd.hi(); ++d)
        CHECK(odd.at(d) == Scalar(0));
    // The constant polynomial gives the plain product.
    auto prod = hirota_apply(TimePoly::scalar(2, Scalar(1)), tp, make_tau_minus(p), b);
    auto plain = tau_product(tp, make_tau_minus(p), b);
    for (int d = -2; d <= 2; ++d)
        CHECK(prod.at(d) == plain.at(d));
}

TEST_CASE("Miwa shifts compose")
{
    ParamPoint p = two_soliton();
    V b{Scalar(2, 3), Scalar(5, 4)};
    const Scalar x(1, 3), y(2, 9);
    for (auto tau : {make_tau_plus(p), make_tau_minus(p)}) {
        for (auto which : {MiwaTime::t, MiwaTime::tbar}) {
            auto there = miwa_shift(miwa_shift(tau, which, x, 1), which, x, -1).evaluate(b);
            auto orig = tau.evaluate(b);
            for (int d = -2; d <= 2; ++d)
                CHECK(there.at(d) == orig.at(d));
            auto xy = miwa_shift(miwa_shift(tau, which, x, 1), which, y, 1).evaluate(b);
            auto yx = miwa_shift(miwa_shift(tau, which, y, 1), which, x, 1).evaluate(b);
            for (int d = -2; d <= 2; ++d)
                CHECK(xy.at(d) == yx.at(d));
        }
    }
    // t + [alpha] multiplies b_k by (1 - alpha q a_k)/(1 - alpha a_k) in tau_+
    auto shifted = miwa_shift(make_tau_plus(p), MiwaTime::t, x, 1).evaluate(b);
    const Scalar q = p.q(), a0 = p.a()[0];
    const Scalar f0 = (Scalar(1) - x * q * a0) / (Scalar(1) - x * a0);
    CHECK(shifted.at(2) / make_tau_plus(p).evaluate(b).at(2) ==
          f0 * (Scalar(1) - x * q * p.a()[1]) / (Scalar(1) - x * p.a()[1]));
    CHECK_THROWS_AS(miwa_shift(make_tau_plus(p), MiwaTime::t, a0.inverse(), 1), PoleError);
    CHECK_THROWS_AS(miwa_shift(make_tau_plus(p), MiwaTime::t, x, 2), ArgumentError);
}

TEST_CASE("eta modes against a sampled Fourier transform")
{
    Sampler rng(3);
    auto sp = sample_convergent_soliton(rng, 2, Sampler::Options{});
    const ParamPoint& p = sp.params;
    const V& b = sp.b;
    const int N = 8;
    auto exact = eta_from_taus(p, N, b);
    auto ref = sampled_eta_modes(p, b, N);
    for (int m = -N; m <= N; ++m) {
        CHECK(std::abs(ref[static_cast<std::size_t>(m + N)].imag()) < 1e-12);
        CHECK(std::abs(exact[m].to_double() - ref[static_cast<std::size_t>(m + N)].real()) < 1e-12);
    }
    CHECK(exact.tail < Scalar(1, 1000000000));
    std::vector<double> bd{b[0].to_double(), b[1].to_double()};
    auto dbl = eta_modes_double(p, bd, N, 200);
    for (int m = -N; m <= N; ++m)
        CHECK(std::abs(dbl[static_cast<std::size_t>(m + N)] - exact[m].to_double()) < 1e-13);
}

TEST_CASE("eta from the mode variables matches the tau ratio")
{
    ParamPoint p = one_soliton();
    V b{Scalar(2, 5)};
    const int N = 6;
    auto direct = eta_from_taus(p, N, b);
    auto alpha = alpha_from_tau(p, 40, b);
    auto rebuilt = eta_from_alpha(alpha, N, p.eps(), 60);
    for (int m = -N; m <= N; ++m)
        CHECK(std::abs((direct[m] - rebuilt[m]).to_double()) < 1e-20);
}

TEST_CASE("expansion decay")
{
    ParamPoint p = one_soliton();
    const Scalar b(2, 5);
    const Scalar d = shift_coefficient(p, 0, p.q() * p.eps());
    const double expect = std::max(b.to_double(), std::abs((d / b).to_double()));
    CHECK(std::abs(expansion_decay(p, {b}) - expect) < 1e-12);
    CHECK_THROWS_AS(eta_from_taus(p, 4, {Scalar(3)}), ArgumentError);
    CHECK_THROWS_AS(eta_from_taus(p, 4, {Scalar(1), Scalar(1)}), ArgumentError);
}

TEST_CASE("convergent sampling")
{
    Sampler rng(13);
    for (int n = 1; n <= 2; ++n) {
        auto sp = sample_convergent_soliton(rng, n, Sampler::Options{});
        CHECK(sp.params.n() == n);
        CHECK(sp.decay < 0.6);
        CHECK(std::abs(expansion_decay(sp.params, sp.b) - sp.decay) < 1e-15);
    }
}

TEST_CASE("soliton spec parsing")
{
    auto sp = parse_soliton_spec(R"({"s":"1/2","eps":"1/8","a":["1/5"],"b":["1/4"]})");
    CHECK(sp.params.q() == Scalar(1, 4));
    CHECK(sp.b[0] == Scalar(1, 4));
    auto dflt = parse_soliton_spec(R"({"s":"1/2","eps":"1/8","a":["1/5","-1/7"]})");
    CHECK(dflt.b == V{Scalar(1), Scalar(1)});
    CHECK_THROWS_AS(parse_soliton_spec("{"), ArgumentError);
    CHECK_THROWS_AS(parse_soliton_spec(R"({"eps":"1/8","a":[]})"), ArgumentError);
    CHECK_THROWS_AS(parse_soliton_spec(R"({"s":"1/2","eps":"1/8"})"), ArgumentError);
    CHECK_THROWS_AS(parse_soliton_spec(R"({"s":"1/2","eps":"1/8","a":["1/5"],"b":[]})"), ArgumentError);
    CHECK_THROWS_AS(parse_soliton_spec(R"({"s":"1","eps":"1/8","a":["1/5"]})"), ArgumentError);
    CHECK_THROWS_AS(parse_soliton_spec(R"({"s":"1/2","eps":"x","a":["1/5"]})"), ArgumentError);
}
