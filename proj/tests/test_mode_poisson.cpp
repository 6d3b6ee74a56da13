#include "doctest.h"

#include "todabo/alpha_poly.hpp"
#include "todabo/field.hpp"
#include "todabo/fields.hpp"
#include "todabo/params.hpp"

using namespace todabo;

namespace {

AlphaPoly random_poly(Sampler& rng, Truncation t, int max_deg)
{
    AlphaPoly p(t);
    for (const auto& m : enumerate_monomials(t.n_modes, max_deg, 100)) {
        if (rng.uniform(0, 2) != 0)
            continue;
        p.add_term(m, rng.rational(Scalar(2), 7));
    }
    return p;
}

// Coefficientwise equality of two series over degrees |d| <= n_z, keeping
// monomials of degree <= max_deg.
bool series_agree(const FieldSeries& a, const FieldSeries& b, int n_z, int max_deg)
{
    for (int d = -n_z; d <= n_z; ++d)
        if (!(a.at(d).truncated_to(max_deg) == b.at(d).truncated_to(max_deg)))
            return false;
    return true;
}

} // namespace

TEST_CASE("bracket of generators")
{
    const Scalar q(1, 3);
    Truncation t{4, 4};
    CHECK(bracket_constant(2, q) == Scalar(8, 9));
    CHECK(bracket_constant(-2, q) == Scalar(-8, 9));
    for (int n = 1; n <= 4; ++n) {
        auto b = bracket(AlphaPoly::mode(t, n), AlphaPoly::mode(t, -n), q);
        CHECK(b == AlphaPoly::constant(t, Scalar(1) - q.pow(n)));
        CHECK(bracket(AlphaPoly::mode(t, n), AlphaPoly::mode(t, n), q).is_zero());
        CHECK(bracket(AlphaPoly::mode(t, n), AlphaPoly::mode(t, n % 4 + 1), q).is_zero());
    }
    CHECK_THROWS_AS(AlphaPoly::mode(t, 5), ArgumentError);
    CHECK_THROWS_AS(bracket(AlphaPoly::mode(t, 1), AlphaPoly::mode(Truncation{3, 4}, 1), q), ArgumentError);
}

TEST_CASE("bracket is antisymmetric, Leibniz and Jacobi on random polynomials")
{
    const Scalar q(2, 5);
    Truncation t{3, 9};
    Sampler rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        auto f = random_poly(rng, t, 2), g = random_poly(rng, t, 2), h = random_poly(rng, t, 2);
        CHECK(bracket(f, g, q) == -bracket(g, f, q));
        CHECK(bracket(f, g * h, q) == bracket(f, g, q) * h + g * bracket(f, h, q));
        auto jac = bracket(f, bracket(g, h, q), q) + bracket(g, bracket(h, f, q), q) +
                   bracket(h, bracket(f, g, q), q);
        CHECK(jac.is_zero());
    }
}

TEST_CASE("tau fields")
{
    const Scalar q(1, 4);
    Truncation t{3, 3};
    auto tp = build_tau(1, t, q);
    CHECK(tp.at(0) == AlphaPoly::constant(t, Scalar(1)));
    CHECK(tp.at(1) == AlphaPoly::mode(t, -1) * (Scalar(-1) / (Scalar(1) - q)));
    CHECK(tp.at(-1).is_zero());
    auto tm = build_tau(-1, t, q);
    CHECK(tm.at(-1) == AlphaPoly::mode(t, 1) * (Scalar(-1) / (Scalar(1) - q)));
    // [z^2] tau_+ = a_{-1}^2 / (2 (1-q)^2) - a_{-2} / (1-q^2)
    AlphaPoly expect = AlphaPoly::mode(t, -1) * AlphaPoly::mode(t, -1) *
                           (Scalar(1, 2) / ((Scalar(1) - q) * (Scalar(1) - q))) -
                       AlphaPoly::mode(t, -2) * (Scalar(1) / (Scalar(1) - q * q));
    CHECK(tp.at(2) == expect);
}

TEST_CASE("eta carries the pair monomials in its constant term")
{
    const Scalar eps(1, 8);
    Truncation t{3, 2};
    auto eta = build_eta(t, eps);
    AlphaPoly expect = AlphaPoly::constant(t, eps);
    for (int n = 1; n <= 3; ++n)
        expect += AlphaPoly::mode(t, n) * AlphaPoly::mode(t, -n) * eps;
    CHECK(eta.at(0) == expect);
    CHECK(eta.at(-2).coefficient(Monomial{2}) == eps);
    CHECK(eta.at(-2).coefficient(Monomial{1, 1}) == eps * Scalar(1, 2));
}

TEST_CASE("lazy fields agree with the truncated constructors")
{
    const Scalar s(1, 2), eps(1, 8);
    Truncation t{3, 4};
    ModeFields F(s, eps);
    const int nz = 3;
    CHECK(series_agree(materialize(F.eta(), t, nz), build_eta(t, eps), nz, t.d_deg));
    CHECK(series_agree(materialize(F.xi(), t, nz), build_xi(t, s, eps), nz, t.d_deg));
    CHECK(series_agree(materialize(F.tau(1), t, nz), build_tau(1, t, F.q()), nz, t.d_deg));
    CHECK(series_agree(materialize(F.eta_from_taus(), t, nz), build_eta_ratio(t, F.q(), eps), nz, t.d_deg));
    CHECK(series_agree(materialize(F.xi_from_taus(), t, nz), build_xi_ratio(t, s, eps), nz, t.d_deg));
    auto e0 = materialize(F.eta0(), t, 0).at(0);
    CHECK(e0 == build_eta(t, eps).at(0));
}

TEST_CASE("linear flows act as derivatives")
{
    const Scalar q(1, 3), eps(1, 5);
    Truncation t{3, 5};
    auto eta = build_eta(t, eps);
    for (int m : {-2, -1, 1, 3}) {
        // {alpha_m, eta(z)} = sgn(m)(1-q^|m|) z^m eta(z)
        auto lhs = flow(AlphaPoly::mode(t, m), eta, q);
        const Scalar c = bracket_constant(m, q);
        for (int d = -6; d <= 6; ++d)
            CHECK(lhs.at(d).truncated_to(t.d_deg - 1) == (eta.at(d - m) * c).truncated_to(t.d_deg - 1));
    }
}

TEST_CASE("truncated Hirota derivative matches the lazy operator")
{
    // A bracket can remove a mode above the cutoff and leave lower ones
    // behind, so the truncated result is complete only on part of the window.
    // With cutoff 6, result degree <= 2 and modes <= 3, a missing term would
    // need at most two modes of size <= 3 adding up to more than 6.
    const Scalar s(1, 2), eps(1, 8);
    Truncation t{6, 4};
    ModeFields F(s, eps);
    const Scalar q = F.q();
    const int nz = 2;
    AlphaPoly h = materialize(F.eta0(), t, 0).at(0);
    auto tm = build_tau(-1, t, q), tp = build_tau(1, t, q);

    std::vector<FlowSpec> fl{{F.eta0(), FlowSide::left}};
    auto lazy = materialize(hirota_apply(fl, HirotaPoly::operator_d(1, 0), F.tau(-1), F.tau(1), q), t, nz);
    auto trunc = hirota_pair({{h, 1, FlowSide::left}}, tm, tp, q);
    long compared = 0;
    for (int d = -nz; d <= nz; ++d) {
        auto a = lazy.at(d), b = trunc.at(d);
        for (const auto& m : enumerate_monomials(3, 2, nz)) {
            if (-m.weight() != d)
                continue;
            CHECK(a.coefficient(m) == b.coefficient(m));
            ++compared;
        }
    }
    CHECK(compared > 10);

    // D f.f = 0
    auto self = hirota_pair({{h, 1, FlowSide::left}}, tp, tp, q);
    for (int d = -nz; d <= nz; ++d)
        CHECK(self.at(d).is_zero());
    CHECK_THROWS_AS(hirota_pair({{h, 3, FlowSide::left}}, tm, tp, q), ArgumentError);
}

TEST_CASE("comparison detects a wrong identity")
{
    const Scalar s(1, 2);
    ModeFields a(s, Scalar(1, 8)), b(s, Scalar(1, 7));
    Window w{2, 3, 2};
    auto same = compare(a.eta(), a.eta_from_taus(), w);
    CHECK(same.exact_zero);
    CHECK(same.compared > 0);
    auto wrong = compare(a.eta(), b.eta_from_taus(), w);
    CHECK_FALSE(wrong.exact_zero);
    CHECK(wrong.max_abs > Scalar(0));
    CHECK_FALSE(wrong.first_failure.empty());
    // Changing s leaves the constant term 1 of tau alone but not the next ones.
    ModeFields c(Scalar(1, 3), Scalar(1, 8));
    CHECK_FALSE(compare(a.tau(1), c.tau(1), w).exact_zero);
}

TEST_CASE("degree parts and inverse")
{
    const Scalar s(1, 2), eps(1, 8);
    ModeFields F(s, eps);
    Window w{3, 3, 4};
    auto parts = sum({{Scalar(1), F.eta_part(1)}, {Scalar(1), F.eta0()}, {Scalar(1), F.eta_part(-1)}});
    CHECK(compare(parts, F.eta(), w).exact_zero);
    auto one = product(F.tau(1), inverse(F.tau(1)));
    CHECK(compare(one, constant(Scalar(1)), w).exact_zero);
    CHECK(compare(dilate(F.tau(-1), Scalar(1)), F.tau(-1), w).exact_zero);
}
