#include "todabo/evolve.hpp"

#include "todabo/scalar.hpp"
#include "todabo/soliton.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace todabo {

State State::zeros(int N, Complex q)
{
    if (N < 0)
        throw ArgumentError("State: negative window");
    State s;
    s.N = N;
    s.modes.assign(static_cast<std::size_t>(2 * N + 1), Complex(0, 0));
    s.q = q;
    return s;
}

Complex q_from_gamma(Complex gamma)
{
    if (gamma.imag() < 0)
        throw ArgumentError("gamma must satisfy Im gamma >= 0");
    return std::exp(Complex(0, 2 * std::numbers::pi) * gamma);
}

std::vector<Complex> bo_rhs(const State& s)
{
    const int N = s.N;
    std::vector<Complex> c(static_cast<std::size_t>(N) + 1);
    Complex qp(1, 0);
    for (int l = 1; l <= N; ++l) {
        qp *= s.q;
        c[static_cast<std::size_t>(l)] = Complex(1, 0) - qp;
    }
    std::vector<Complex> out(s.modes.size(), Complex(0, 0));
    for (int m = -N; m <= N; ++m) {
        Complex acc(0, 0);
        for (int l = 1; l <= N; ++l) {
            // +l and -l together
            Complex t(0, 0);
            if (m + l <= N)
                t += s[-l] * s[m + l];
            if (m - l >= -N)
                t -= s[l] * s[m - l];
            acc += c[static_cast<std::size_t>(l)] * t;
        }
        out[static_cast<std::size_t>(m + N)] = acc;
    }
    return out;
}

namespace {

State axpy(const State& s, const std::vector<Complex>& k, double h)
{
    State r = s;
    for (std::size_t i = 0; i < r.modes.size(); ++i)
        r.modes[i] += h * k[i];
    return r;
}

double max_abs(const std::vector<Complex>& v)
{
    double m = 0;
    for (const auto& x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

State rk4_step(const State& s, double dt)
{
    auto k1 = bo_rhs(s);
    auto k2 = bo_rhs(axpy(s, k1, dt / 2));
    auto k3 = bo_rhs(axpy(s, k2, dt / 2));
    auto k4 = bo_rhs(axpy(s, k3, dt));
    State r = s;
    for (std::size_t i = 0; i < r.modes.size(); ++i) {
        r.modes[i] += dt / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(r.modes[i].real()) || !std::isfinite(r.modes[i].imag()))
            throw std::runtime_error("rk4_step: non-finite mode at t = " + std::to_string(s.t + dt));
    }
    r.t = s.t + dt;
    return r;
}

Complex integral_I1(const State& s) { return s[0]; }

Complex integral_I2(const State& s)
{
    Complex acc(0, 0), qp(1, 0);
    for (int m = 1; m <= s.N; ++m) {
        qp *= s.q;
        acc += qp * s[-m] * s[m];
    }
    return s[0] * s[0] + (Complex(1, 0) - 1.0 / s.q) * acc;
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    if (a.size() != b.size())
        throw ArgumentError("max_abs_diff: size mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

RunResult run(const State& init, const RunConfig& cfg, const Reference& reference)
{
    if (!(cfg.dt > 0) || cfg.steps < 1 || cfg.check_interval < 1)
        throw ArgumentError("run: need dt > 0, steps >= 1, check_interval >= 1");
    RunResult res;
    State s = init;
    const Complex I1_0 = integral_I1(s), I2_0 = integral_I2(s);
    const double I2_scale = std::max(std::abs(I2_0), 1e-300);
    auto record = [&](const State& x) {
        res.samples.push_back(Sample{x.t, x.modes, integral_I1(x), integral_I2(x)});
    };
    auto measure = [&](const State& x) {
        res.max_I1_drift = std::max(res.max_I1_drift, std::abs(integral_I1(x) - I1_0));
        res.max_I2_rel_drift = std::max(res.max_I2_rel_drift, std::abs(integral_I2(x) - I2_0) / I2_scale);
        if (reference) {
            double e = max_abs_diff(x.modes, reference(x.t));
            res.max_mode_error = std::max(res.max_mode_error.value_or(0.0), e);
        }
    };
    record(s);
    measure(s);
    for (int step = 1; step <= cfg.steps; ++step) {
        try {
            s = rk4_step(s, cfg.dt);
        } catch (const std::runtime_error& e) {
            res.blew_up = true;
            res.message = e.what();
            break;
        }
        // Accumulated time drifts from step * dt; recompute it.
        s.t = init.t + step * cfg.dt;
        if (max_abs(s.modes) > cfg.blowup_bound) {
            res.blew_up = true;
            res.message = "mode amplitude exceeded " + std::to_string(cfg.blowup_bound) + " at t = " +
                          std::to_string(s.t);
            break;
        }
        measure(s);
        if (step % cfg.check_interval == 0 || step == cfg.steps)
            record(s);
    }
    res.final_state = s;
    return res;
}

SolitonInit soliton_initial(const ParamPoint& p, const std::vector<double>& b, int N, int order)
{
    if (order <= 0)
        order = 3 * N + 40;
    std::vector<double> a;
    for (const auto& x : p.a())
        a.push_back(x.to_double());
    const double q = p.q().to_double();
    auto modes_at = [p, b, a, q, N, order](double t) {
        std::vector<double> bt = b;
        for (std::size_t k = 0; k < bt.size(); ++k)
            bt[k] *= std::exp((1 - q) * a[k] * t);
        auto v = eta_modes_double(p, bt, N, order);
        return std::vector<Complex>(v.begin(), v.end());
    };
    SolitonInit out;
    out.state = State::zeros(N, Complex(q, 0));
    out.state.modes = modes_at(0);
    out.reference = modes_at;
    return out;
}

State random_initial(std::uint64_t seed, int N, Complex q, double eps, double rate, double amplitude)
{
    if (!(rate > 0 && rate < 1))
        throw ArgumentError("random_initial: decay rate must lie in (0, 1)");
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    State s = State::zeros(N, q);
    s[0] = Complex(eps, 0);
    for (int m = 1; m <= N; ++m)
        for (int sign : {-1, 1}) {
            double re = u(eng), im = u(eng);
            s[sign * m] = amplitude * std::pow(rate, m) * Complex(re, im);
        }
    return s;
}

double step_halving_ratio(const State& init, double dt, double t_end)
{
    auto integrate = [&](double h) {
        const int steps = static_cast<int>(std::lround(t_end / h));
        State s = init;
        for (int i = 0; i < steps; ++i)
            s = rk4_step(s, h);
        return s.modes;
    };
    auto y1 = integrate(dt), y2 = integrate(dt / 2), y4 = integrate(dt / 4);
    double den = max_abs_diff(y2, y4);
    if (den == 0)
        throw ArgumentError("step_halving_ratio: no measurable discretization error");
    return max_abs_diff(y1, y2) / den;
}

} // namespace todabo
