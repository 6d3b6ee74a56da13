#include "doctest.h"

#include "todabo/evolve.hpp"
#include "todabo/soliton.hpp"

#include <cmath>
#include <numbers>

using namespace todabo;

namespace {

// Right-hand side by direct summation over all index pairs in the window.
std::vector<Complex> brute_rhs(const State& s)
{
    std::vector<Complex> r(s.modes.size());
    for (int m = -s.N; m <= s.N; ++m)
        for (int a = -s.N; a <= s.N; ++a)
            for (int b = -s.N; b <= s.N; ++b) {
                // eta_a eta_b with a = -l, b = m + l
                int l = -a;
                if (l == 0 || b != m + l)
                    continue;
                double sg = l > 0 ? 1.0 : -1.0;
                r[static_cast<std::size_t>(m + s.N)] += sg * (1.0 - std::pow(s.q, std::abs(l))) * s[a] * s[b];
            }
    return r;
}

} // namespace

TEST_CASE("q from gamma")
{
    CHECK(std::abs(q_from_gamma({0.5, 0}) - Complex(-1, 0)) < 1e-15);
    CHECK(std::abs(q_from_gamma({0, 1}) - Complex(std::exp(-2 * std::numbers::pi), 0)) < 1e-15);
    CHECK_THROWS_AS(q_from_gamma({0.1, -0.2}), ArgumentError);
}

TEST_CASE("right-hand side")
{
    State c = State::zeros(6, {0.25, 0});
    c[0] = 0.3;
    for (auto v : bo_rhs(c))
        CHECK(v == Complex(0, 0));
    CHECK(integral_I2(c) == Complex(0.09, 0));

    State r = random_initial(5, 6, q_from_gamma({0.1, 0.2}), 0.2, 0.6, 0.5);
    auto fast = bo_rhs(r), slow = brute_rhs(r);
    CHECK(max_abs_diff(fast, slow) < 1e-15);
    CHECK(std::abs(fast[6]) < 1e-16);
}

TEST_CASE("zero state is a fixed point")
{
    State z = State::zeros(4, {0.25, 0});
    State next = rk4_step(z, 0.1);
    for (auto v : next.modes)
        CHECK(v == Complex(0, 0));
    CHECK(next.t == doctest::Approx(0.1));
}

TEST_CASE("fourth-order convergence")
{
    State r = random_initial(9, 8, {0.25, 0}, 0.2, 0.5, 0.3);
    double ratio = step_halving_ratio(r, 0.1, 1.0);
    CHECK(ratio > 14);
    CHECK(ratio < 18);
}

TEST_CASE("conserved quantities on random data")
{
    State r = random_initial(11, 12, q_from_gamma({0.05, 0.15}), 0.2, 0.5, 0.2);
    RunConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 500;
    cfg.check_interval = 100;
    auto res = run(r, cfg);
    CHECK_FALSE(res.blew_up);
    CHECK(res.max_I1_drift < 1e-13);
    CHECK(res.samples.size() == 6);
    CHECK(res.samples.back().t == doctest::Approx(0.5));
    CHECK_FALSE(res.max_mode_error.has_value());
}

TEST_CASE("one-soliton trajectory")
{
    ParamPoint p(Scalar(1, 2), Scalar(1, 8), {Scalar(1, 7)});
    auto init = soliton_initial(p, {0.4}, 32);
    RunConfig cfg;
    cfg.dt = 1e-3;
    cfg.steps = 300;
    auto res = run(init.state, cfg, init.reference);
    REQUIRE(res.max_mode_error.has_value());
    CHECK(*res.max_mode_error < 1e-9);
    CHECK(res.max_I1_drift < 1e-13);
    CHECK(res.max_I2_rel_drift < 1e-9);
    // The reference at t = 0 is the initial state.
    CHECK(max_abs_diff(init.reference(0.0), init.state.modes) < 1e-15);
    auto exact = eta_modes_double(p, {0.4}, 32, 136);
    for (int m = -32; m <= 32; ++m)
        CHECK(std::abs(init.state[m] - exact[static_cast<std::size_t>(m + 32)]) < 1e-15);
}

TEST_CASE("blow-up is reported")
{
    State r = random_initial(3, 6, {4.0, 0}, 1.0, 0.9, 50.0);
    RunConfig cfg;
    cfg.dt = 0.05;
    cfg.steps = 2000;
    cfg.blowup_bound = 1e6;
    auto res = run(r, cfg);
    CHECK(res.blew_up);
    CHECK_FALSE(res.message.empty());
}
