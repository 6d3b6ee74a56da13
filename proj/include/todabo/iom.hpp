#pragma once

#include "todabo/field.hpp"
#include "todabo/params.hpp"
#include "todabo/scalar.hpp"
#include "todabo/soliton.hpp"

#include <span>
#include <vector>

namespace todabo {

struct IomResult {
    int k = 0;
    Scalar value;
    int N = 0;
    /// Upper bound on |value - limit| coming from the mode error of the input
    /// and the dropped kernel terms.
    Scalar tail{0};
};

/// Largest k accepted by the constant-term definitions.
inline constexpr int max_iom_order = 4;

/// [prod_{i<j} K(w_j/w_i) prod_i eta(w_i)]_1 with
/// K(x) = 1 + (1 - q^{-1}) sum_{p>0} q^p x^p, kernel powers cut at N.
IomResult I_k_def(const ModeVector& eta, int k, int N, const Scalar& q);
/// The same with q replaced by q^{-1} and xi in place of eta.
IomResult Ibar_k_def(const ModeVector& xi, int k, int N, const Scalar& q);

/// Functional I_1 and I_2 over the mode algebra (I_2's kernel is infinite but
/// each coefficient only sees finitely many terms).
Field I_functional(Field eta, int k, const Scalar& q);

/// M_k from I_1..I_k: I'_j = q^{j(j-1)/2} I_j / (q;q)_j, then
/// M_k = (1 - q^k)/k times the Newton determinant. bar uses q^{-1}.
Scalar M_from_I(std::span<const Scalar> I, const Scalar& q, bool bar = false);

/// [(1/2 + sum_{m>0} q^m w2^m/w1^m) eta(w1) eta(w2)]_1 with |m| <= N.
Scalar M2_kernel(const ModeVector& eta, int N, const Scalar& q);
/// The cubic kernel, summed over mode indices up to N.
Scalar M3_kernel(const ModeVector& eta, int N, const Scalar& q);

/// q^{-k(k-1)/2} (q;q)_k e_k(a_1..a_n, q^n eps, q^{n+1} eps, ...).
Scalar closed_I(int k, const ParamPoint& p);
Scalar closed_Ibar(int k, const ParamPoint& p);
/// (1 - q^i)/i p_i(a) + q^{n i} eps^i / i; bar mirrors the parameters.
Scalar closed_M(int i, const ParamPoint& p, bool bar = false);

} // namespace todabo
