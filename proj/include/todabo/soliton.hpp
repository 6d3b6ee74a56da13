#pragma once

#include "todabo/laurent.hpp"
#include "todabo/params.hpp"
#include "todabo/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace todabo {

/// One term c z^{degree} prod_{k in I} b_k^{sign} of a soliton tau function.
struct SolitonTerm {
    std::vector<int> subset;
    Scalar coefficient;
    int z_degree = 0;
};

/// Specialized n-soliton tau function with symbolic amplitudes b_k. The
/// amplitudes carry all time dependence, so time flows and Miwa shifts act
/// diagonally on terms.
class SolitonTau {
public:
    SolitonTau(int sign, ParamPoint p, std::vector<SolitonTerm> terms);

    int sign() const { return sign_; }
    const ParamPoint& params() const { return p_; }
    const std::vector<SolitonTerm>& terms() const { return terms_; }

    /// Eigenvalue of d/dt_i (bar: d/dtbar_i) on a term:
    /// sign * sum_{k in I} (1 - q^{+-i}) a_k^{+-i}.
    Scalar time_eigenvalue(const SolitonTerm& term, int i, bool bar = false) const;

    /// Amplitude product prod_{k in I} b_k^{sign}.
    Scalar amplitude(const SolitonTerm& term, const std::vector<Scalar>& b) const;

    /// The exact Laurent polynomial in z at amplitudes b (empty b means all 1).
    LaurentSeries<Scalar> evaluate(const std::vector<Scalar>& b = {}) const;

    /// tau(lambda z).
    SolitonTau dilated(const Scalar& lambda) const;

private:
    int sign_;
    ParamPoint p_;
    std::vector<SolitonTerm> terms_;
};

/// (a_i - a_j)^2 / ((a_i - q a_j)(a_i - q^{-1} a_j)).
Scalar interaction(const ParamPoint& p, int i, int j);
/// d_k(beta) = ((1 - beta/(q a_k)) / (1 - beta/a_k)) prod_{j != k} 1/interaction(k, j), k 0-based.
Scalar shift_coefficient(const ParamPoint& p, int k, const Scalar& beta);

SolitonTau make_tau_plus(const ParamPoint& p);
SolitonTau make_tau_minus(const ParamPoint& p);

enum class MiwaTime { t, tbar };

/// t -> t + direction [amount] (or the same on tbar). For tau_+ terms
/// t+[alpha] multiplies b_k by (1 - alpha q a_k)/(1 - alpha a_k) and
/// tbar+[beta] by (1 - beta/(q a_k))/(1 - beta/a_k); tau_- terms take the
/// reciprocal factors. Throws PoleError on a vanishing denominator.
SolitonTau miwa_shift(const SolitonTau& tau, MiwaTime which, const Scalar& amount, int direction);

/// Polynomial in D_{t_1}, ..., D_{t_r} with Scalar coefficients.
class TimePoly {
public:
    using Powers = std::vector<int>;

    explicit TimePoly(int ntimes) : ntimes_(ntimes) {}
    static TimePoly d(int ntimes, int i);
    static TimePoly scalar(int ntimes, const Scalar& c);

    int ntimes() const { return ntimes_; }
    const std::map<Powers, Scalar>& terms() const { return terms_; }

    friend TimePoly operator+(const TimePoly& a, const TimePoly& b);
    friend TimePoly operator*(const TimePoly& a, const TimePoly& b);
    friend TimePoly operator*(const Scalar& c, const TimePoly& a);
    TimePoly pow(int k) const;

private:
    void accumulate(const Powers& p, const Scalar& c);

    int ntimes_;
    std::map<Powers, Scalar> terms_;
};

/// P(D) f.g: on the term pair (I, J), D_{t_i} contributes
/// lambda_i(I) - lambda_i(J).
LaurentSeries<Scalar> hirota_apply(const TimePoly& poly, const SolitonTau& f, const SolitonTau& g,
                                   const std::vector<Scalar>& b = {});

/// Plain product f(z) g(z) at amplitudes b.
LaurentSeries<Scalar> tau_product(const SolitonTau& f, const SolitonTau& g, const std::vector<Scalar>& b = {});

/// Fourier modes v_m, |m| <= N, of a field on the unit circle.
struct ModeVector {
    int N = 0;
    std::vector<Scalar> values;
    /// Upper bound on |error| of every stored mode.
    Scalar tail{0};

    const Scalar& operator[](int m) const;
    Scalar& operator[](int m);
    static ModeVector zeros(int N);
};

struct ExpansionOptions {
    /// Length of the one-sided inversions; 0 picks 3N + 40.
    int order = 0;
    /// Working precision of the numeric inversion, in bits.
    int precision_bits = 512;
    /// Largest accepted decay rate of the expansion.
    double max_decay = 0.9;
};

/// Largest |1/root| over the denominators of eta (tau_+(z) roots in z,
/// tau_-(z) roots in 1/z). Values >= 1 mean the unit-circle expansion fails.
double expansion_decay(const ParamPoint& p, const std::vector<Scalar>& b);

/// Modes eta_m, |m| <= N, of eps tau_-(z/q) tau_+(zq) / (tau_-(z) tau_+(z))
/// on |z| = 1. Throws ArgumentError when the decay test fails.
ModeVector eta_from_taus(const ParamPoint& p, int N, const std::vector<Scalar>& b = {},
                         const ExpansionOptions& opts = {});
/// Modes xi_m of eps^{-1} tau_-(zs) tau_+(z/s) / (tau_-(z/s) tau_+(zs)).
ModeVector xi_from_taus(const ParamPoint& p, int N, const std::vector<Scalar>& b = {},
                        const ExpansionOptions& opts = {});

/// Exact alpha_n for 0 < |n| <= N from alpha_{-n} = -(1-q^n) [z^n] log tau_+
/// and alpha_n = -(1-q^n) [z^{-n}] log tau_-. Index n + N.
std::vector<Scalar> alpha_from_tau(const ParamPoint& p, int N, const std::vector<Scalar>& b = {});

/// eta modes rebuilt from alphas: eps exp(sum alpha_n z^{-n}) truncated to
/// exponent modes |n| <= N and expansion order L in each direction.
ModeVector eta_from_alpha(const std::vector<Scalar>& alpha, int N, const Scalar& eps, int order);

/// Same expansion in double precision for real amplitudes, used by the
/// floating-point integrator.
std::vector<double> eta_modes_double(const ParamPoint& p, const std::vector<double>& b, int N, int order);

/// Parameters plus amplitudes, with the expansion decay rate of eta and xi.
struct SolitonPoint {
    ParamPoint params;
    std::vector<Scalar> b;
    double decay = 0;
};

/// Draws a soliton point whose eta and xi expand on the unit circle with
/// decay rate at most max_decay. Amplitudes are set near sqrt|d_k(q^n eps)|.
SolitonPoint sample_convergent_soliton(Sampler& rng, int n, const Sampler::Options& opts,
                                       double max_decay = 0.6);

/// Parses {"s":"1/2","eps":"1/8","a":[...],"b":[...]}; b defaults to all 1.
SolitonPoint parse_soliton_spec(const std::string& json_text);

} // namespace todabo
