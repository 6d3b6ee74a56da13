#include "doctest.h"

#include "todabo/params.hpp"
#include "todabo/scalar.hpp"
#include "todabo/symmetric.hpp"

#include <random>

using namespace todabo;

TEST_CASE("scalar normalization and rendering")
{
    CHECK(Scalar(6, -4).str() == "-3/2");
    CHECK(Scalar(5).str() == "5/1");
    CHECK(Scalar::parse("-3/7") == Scalar(-3, 7));
    CHECK(Scalar::parse("12") == Scalar(12));
    CHECK(Scalar::parse(" 4/6 ").str() == "2/3");
    CHECK_THROWS_AS(Scalar::parse("1/0"), ArgumentError);
    CHECK_THROWS_AS(Scalar::parse("x"), ArgumentError);
    CHECK_THROWS_AS(Scalar(0).inverse(), PoleError);
    CHECK(Scalar(0).decimal() == "0");
}

TEST_CASE("decimal rendering against long division")
{
    // 1/7 = 0.142857142857..., 30 significant digits
    CHECK(Scalar(1, 7).decimal(30) == "1.42857142857142857142857142857e-1");
    CHECK(Scalar(-2, 3).decimal(5) == "-6.6667e-1");
    CHECK(Scalar(123456).decimal(3) == "1.23e5");
    std::mt19937_64 eng(3);
    for (int i = 0; i < 50; ++i) {
        long num = static_cast<long>(eng() % 100000) + 1, den = static_cast<long>(eng() % 997) + 1;
        Scalar x(num, den);
        // Rebuild the leading digits by integer division.
        mpz_class n = x.numerator(), d = x.denominator();
        int exp10 = 0;
        while (n >= d * 10) {
            d *= 10;
            ++exp10;
        }
        while (n < d) {
            n *= 10;
            --exp10;
        }
        std::string digits;
        for (int k = 0; k < 12; ++k) {
            mpz_class q = n / d;
            digits += q.get_str();
            n = (n - q * d) * 10;
        }
        // Round half away from zero on the 12th digit.
        mpz_class lead(digits.substr(0, 11));
        if (digits[11] >= '5')
            lead += 1;
        std::string s = lead.get_str();
        if (s.size() > 11) {
            s = s.substr(0, 11);
            ++exp10;
        }
        std::string expect = s.substr(0, 1) + "." + s.substr(1) + "e" + std::to_string(exp10);
        CHECK(x.decimal(11) == expect);
    }
}

TEST_CASE("field axioms on random rationals")
{
    Sampler rng(11);
    for (int i = 0; i < 200; ++i) {
        Scalar a = rng.rational(Scalar(5), 30), b = rng.rational(Scalar(5), 30), c = rng.rational(Scalar(5), 30);
        CHECK((a / b) * (b / a) == Scalar(1));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a - a == Scalar(0));
        CHECK(a.denominator() > 0);
    }
}

TEST_CASE("parameter points reject degeneracies")
{
    using V = std::vector<Scalar>;
    CHECK_THROWS_AS(ParamPoint(Scalar(1), Scalar(1, 8), V{}), ArgumentError);
    CHECK_THROWS_AS(ParamPoint(Scalar(-1), Scalar(1, 8), V{}), ArgumentError);
    CHECK_THROWS_AS(ParamPoint(Scalar(1, 2), Scalar(0), V{}), ArgumentError);
    CHECK_THROWS_AS(ParamPoint(Scalar(1, 2), Scalar(1, 8), V{Scalar(0)}), ArgumentError);
    CHECK_THROWS_AS(ParamPoint(Scalar(1, 2), Scalar(1, 8), V{Scalar(1, 5), Scalar(1, 5)}), ArgumentError);
    CHECK_THROWS_AS(ParamPoint(Scalar(1, 2), Scalar(1, 8), V{Scalar(1, 5), Scalar(1, 20)}), ArgumentError);
    CHECK_THROWS_AS(ParamPoint(Scalar(1, 2), Scalar(1, 8), V{Scalar(1, 32)}), ArgumentError);
    ParamPoint p(Scalar(1, 2), Scalar(1, 8), V{Scalar(1, 5)});
    CHECK(p.q() == Scalar(1, 4));
    ParamPoint r = p.inverted();
    CHECK(r.q() == Scalar(4));
    CHECK(r.a()[0] == Scalar(5));
    CHECK(r.eps() == Scalar(8));
}

TEST_CASE("sampler is deterministic and respects bounds")
{
    Sampler a(42), b(42);
    for (int i = 0; i < 20; ++i) {
        ParamPoint x = a.param_point(3), y = b.param_point(3);
        CHECK(x.describe() == y.describe());
        for (const auto& v : x.a())
            CHECK(v.abs() <= Scalar(1, 4));
        CHECK(x.eps().abs() <= Scalar(1, 8));
    }
}

TEST_CASE("newton_p_from_e")
{
    std::vector<Scalar> e1{Scalar(5)};
    CHECK(newton_p_from_e(e1) == Scalar(5));
    std::vector<Scalar> e2{Scalar(3), Scalar(2)};
    CHECK(newton_p_from_e(e2) == Scalar(5));
    std::vector<Scalar> e3{Scalar(1), Scalar(1), Scalar(1)};
    CHECK(newton_p_from_e(e3) == Scalar(1));
    CHECK_THROWS_AS(newton_p_from_e(std::vector<Scalar>{}), ArgumentError);
}

TEST_CASE("newton_p_from_e inverts the triangular e-from-p relation")
{
    Sampler rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 6;
        std::vector<Scalar> p;
        for (int i = 0; i < k; ++i)
            p.push_back(rng.rational(Scalar(3), 20));
        // j e_j = sum_{i=1..j} (-1)^{i-1} e_{j-i} p_i
        std::vector<Scalar> e{Scalar(1)};
        for (int j = 1; j <= k; ++j) {
            Scalar acc(0);
            for (int i = 1; i <= j; ++i)
                acc += Scalar(i % 2 ? 1 : -1) * e[static_cast<std::size_t>(j - i)] * p[static_cast<std::size_t>(i - 1)];
            e.push_back(acc / Scalar(j));
        }
        for (int j = 1; j <= k; ++j)
            CHECK(newton_p_from_e(std::span<const Scalar>(e).subspan(1, static_cast<std::size_t>(j))) ==
                  p[static_cast<std::size_t>(j - 1)]);
    }
}

TEST_CASE("elementary and power sums of a finite alphabet")
{
    std::vector<Scalar> x{Scalar(1), Scalar(2), Scalar(3)};
    CHECK(elementary_symmetric(x, 0) == Scalar(1));
    CHECK(elementary_symmetric(x, 2) == Scalar(11));
    CHECK(elementary_symmetric(x, 3) == Scalar(6));
    CHECK(elementary_symmetric(x, 4) == Scalar(0));
    CHECK(power_sum(x, 2) == Scalar(14));
}

TEST_CASE("e_geometric_tail")
{
    CHECK(e_geometric_tail(Scalar(3), Scalar(1, 2), 0) == Scalar(1));
    CHECK(e_geometric_tail(Scalar(1, 2), Scalar(1, 3), 1) == Scalar(3, 4));
    CHECK(e_geometric_tail(Scalar(1), Scalar(1, 2), 2) == Scalar(4, 3));
    CHECK_THROWS_AS(e_geometric_tail(Scalar(1), Scalar(-1), 2), PoleError);
}

TEST_CASE("e_geometric_tail is the limit of finite products")
{
    const Scalar q(1, 3), x0(2, 5);
    for (int k = 1; k <= 3; ++k) {
        const Scalar exact = e_geometric_tail(x0, q, k);
        Scalar prev_err(-1);
        for (int M = 10; M <= 60; M += 10) {
            std::vector<Scalar> alphabet;
            for (int m = 0; m <= M; ++m)
                alphabet.push_back(x0 * q.pow(m));
            Scalar err = (elementary_symmetric(alphabet, k) - exact).abs();
            if (prev_err.sign() >= 0)
                CHECK(err * Scalar(1000) < prev_err); // shrinks by at least |q|^10 / (1 + slack)
            prev_err = err;
        }
    }
}

TEST_CASE("power_sum_extended")
{
    std::vector<Scalar> none;
    CHECK(power_sum_extended(1, none, Scalar(1, 2), Scalar(1, 3)) == Scalar(3, 4));
    std::vector<Scalar> a{Scalar(2)};
    CHECK(power_sum_extended(1, a, Scalar(1, 4), Scalar(1, 2)) == Scalar(9, 4));
    ParamPoint p(Scalar(1, 2), Scalar(1, 8), {Scalar(1, 5), Scalar(-1, 7)});
    const Scalar q = p.q();
    CHECK((Scalar(1) - q) * power_sum_extended(1, p) == (Scalar(1) - q) * (p.a()[0] + p.a()[1]) + q.pow(2) * p.eps());
    CHECK_THROWS_AS(power_sum_extended(2, a, Scalar(1, 4), Scalar(-1)), PoleError);
}

TEST_CASE("determinant")
{
    Matrix m(3);
    int v[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = Scalar(v[i][j]);
    CHECK(determinant(m) == Scalar(18));
    Matrix z(2);
    z(0, 0) = Scalar(0);
    z(0, 1) = Scalar(1);
    z(1, 0) = Scalar(1);
    z(1, 1) = Scalar(0);
    CHECK(determinant(z) == Scalar(-1));
}
