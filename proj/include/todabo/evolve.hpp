#pragma once

#include "todabo/params.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace todabo {

using Complex = std::complex<double>;

/// Truncated mode state eta_m, |m| <= N.
struct State {
    int N = 0;
    std::vector<Complex> modes;
    double t = 0;
    Complex q{0.25, 0};

    Complex& operator[](int m) { return modes[static_cast<std::size_t>(m + N)]; }
    const Complex& operator[](int m) const { return modes[static_cast<std::size_t>(m + N)]; }
    /// Zero state with the given window and q.
    static State zeros(int N, Complex q);
};

/// q = exp(2 pi i gamma). Throws ArgumentError for Im gamma < 0.
Complex q_from_gamma(Complex gamma);

/// d/dt eta_m = sum_{l != 0} sgn(l) (1 - q^{|l|}) eta_{-l} eta_{m+l}, modes
/// outside the window taken as zero.
std::vector<Complex> bo_rhs(const State& s);

/// One classical Runge-Kutta step. Throws std::runtime_error on non-finite values.
State rk4_step(const State& s, double dt);

Complex integral_I1(const State& s);
/// eta_0^2 + (1 - q^{-1}) sum_{m>0} q^m eta_{-m} eta_m.
Complex integral_I2(const State& s);

struct RunConfig {
    double dt = 1e-3;
    int steps = 1000;
    /// Record a sample every check_interval steps (and at the end).
    int check_interval = 100;
    /// Largest allowed max |eta_m| before the run is declared blown up.
    double blowup_bound = 1e8;
};

struct Sample {
    double t = 0;
    std::vector<Complex> modes;
    Complex I1, I2;
};

struct RunResult {
    State final_state;
    std::vector<Sample> samples;
    double max_I1_drift = 0;
    double max_I2_rel_drift = 0;
    /// Largest |eta_m(t) - reference_m(t)| over checked samples, if a reference was given.
    std::optional<double> max_mode_error;
    bool blew_up = false;
    std::string message;
};

using Reference = std::function<std::vector<Complex>(double t)>;

/// Integrates from init. Drift and reference errors are measured at every
/// step; samples are kept at the check interval.
RunResult run(const State& init, const RunConfig& cfg, const Reference& reference = nullptr);

/// An n-soliton state at t = 0 with real parameters, plus the exact
/// trajectory b_k(t) = b_k(0) exp((1 - q) a_k t) rendered through the mode
/// expansion.
struct SolitonInit {
    State state;
    Reference reference;
};
SolitonInit soliton_initial(const ParamPoint& p, const std::vector<double>& b, int N, int order = 0);

/// Random decaying data: eta_0 = eps, eta_m = amplitude * rate^{|m|} * u_m
/// with u_m uniform in the unit square.
State random_initial(std::uint64_t seed, int N, Complex q, double eps, double rate, double amplitude = 0.1);

/// max |a_m - b_m|.
double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Step-halving ratio |y(dt) - y(dt/2)| / |y(dt/2) - y(dt/4)| after
/// integrating to t_end; close to 16 for a fourth-order method.
double step_halving_ratio(const State& init, double dt, double t_end);

} // namespace todabo
