#pragma once

#include "todabo/alpha_poly.hpp"
#include "todabo/field.hpp"

#include <map>
#include <vector>

namespace todabo {

// Exact lazy fields of the mode algebra for fixed s (q = s^2) and eps.
// Build one instance per computation; nodes share memo tables.
class ModeFields {
public:
    ModeFields(Scalar s, Scalar eps);

    const Scalar& s() const { return s_; }
    const Scalar& q() const { return q_; }
    const Scalar& eps() const { return eps_; }

    /// tau_+(z) = exp(-sum_{n>0} alpha_{-n} z^n / (1-q^n)) for sign > 0,
    /// tau_-(z) = exp(-sum_{n>0} alpha_n z^{-n} / (1-q^n)) otherwise.
    Field tau(int sign);
    /// tau_sign(lambda z).
    Field tau_at(int sign, const Scalar& lambda);
    /// phi_+ = sum_{n>0} alpha_{-n} z^n, phi_- = -sum_{n>0} alpha_n z^{-n}.
    Field phi(int sign);
    /// eps exp(sum_{n != 0} alpha_n z^{-n}).
    Field eta();
    /// eps^{-1} exp(-sum_{n != 0} alpha_n s^{-|n|} z^{-n}).
    Field xi();
    /// eps tau_-(z/q) tau_+(zq) / (tau_-(z) tau_+(z)).
    Field eta_from_taus();
    /// eps^{-1} tau_-(zs) tau_+(z/s) / (tau_-(z/s) tau_+(zs)).
    Field xi_from_taus();
    /// eta_+ = sum_{n>0} eta_{-n} z^n, eta_- = sum_{n>0} eta_n z^{-n}.
    Field eta_part(int sign);
    Field xi_part(int sign);
    Field eta0();
    Field xi0();

private:
    Scalar s_, q_, eps_;
    std::map<int, Field> tau_, phi_;
    Field eta_, xi_, eta0_, xi0_;
};

/// One flow: left means d/dt F = {H, F}, right means {F, H}.
struct FlowSpec {
    Field hamiltonian;
    FlowSide side = FlowSide::left;
};

/// Polynomial in the Hirota operators D_1..D_r with functional coefficients,
/// e.g. (D_1 + M_1)^3.
class HirotaPoly {
public:
    using Powers = std::vector<int>;

    explicit HirotaPoly(int nflows) : nflows_(nflows) {}
    static HirotaPoly operator_d(int nflows, int i);
    static HirotaPoly functional(int nflows, Field c);
    static HirotaPoly scalar(int nflows, const Scalar& c);

    int nflows() const { return nflows_; }
    const std::map<Powers, Field>& terms() const { return terms_; }

    friend HirotaPoly operator+(const HirotaPoly& a, const HirotaPoly& b);
    friend HirotaPoly operator*(const HirotaPoly& a, const HirotaPoly& b);
    friend HirotaPoly operator*(const Scalar& c, const HirotaPoly& a);
    HirotaPoly pow(int k) const;

private:
    void accumulate(const Powers& p, Field c);

    int nflows_;
    std::map<Powers, Field> terms_;
};

/// P(D) f.g with D_i f.g = (d_i f) g - f (d_i g), expanded by the Leibniz
/// rule with d_i realized by the flows.
Field hirota_apply(const std::vector<FlowSpec>& flows, const HirotaPoly& poly, Field f, Field g,
                   const Scalar& q);

// Concrete truncated constructors. Each returns the exact series over the
// truncated algebra: z-window [-n_modes d_deg, n_modes d_deg] with matching
// support, so products never lose a degree.
FieldSeries build_tau(int sign, const Truncation& t, const Scalar& q);
FieldSeries build_phi(int sign, const Truncation& t);
FieldSeries build_eta(const Truncation& t, const Scalar& eps);
FieldSeries build_xi(const Truncation& t, const Scalar& s, const Scalar& eps);
/// The tau-ratio forms, computed through one-sided series inversion.
FieldSeries build_eta_ratio(const Truncation& t, const Scalar& q, const Scalar& eps);
FieldSeries build_xi_ratio(const Truncation& t, const Scalar& s, const Scalar& eps);

/// Coefficientwise {H, F} (left) or {F, H} (right).
FieldSeries flow(const AlphaPoly& h, const FieldSeries& f, const Scalar& q, FlowSide side = FlowSide::left);

struct HirotaOp {
    AlphaPoly hamiltonian;
    int power = 1;
    FlowSide side = FlowSide::left;
};

/// D_1^{p_1} ... D_r^{p_r} f.g over the truncated algebra. Throws
/// ArgumentError when the degree budget cannot absorb the derivative order.
FieldSeries hirota_pair(const std::vector<HirotaOp>& ops, const FieldSeries& f, const FieldSeries& g,
                        const Scalar& q);

} // namespace todabo
