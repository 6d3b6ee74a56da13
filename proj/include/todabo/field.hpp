#pragma once

#include "todabo/alpha_poly.hpp"
#include "todabo/monomial.hpp"
#include "todabo/scalar.hpp"

#include <functional>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

namespace todabo {

/// A field F(z) = sum_m F[m] alpha^m z^{-weight(m)} over the full mode
/// algebra. Every coefficient is weight-homogeneous, so the monomial alone
/// fixes the power of z. Coefficients are computed on demand and memoized;
/// there is no mode cutoff, so each one is the exact algebra value.
///
/// Nodes carry mutable memo tables and must not be shared across threads.
class FieldNode {
public:
    virtual ~FieldNode() = default;
    const Scalar& at(const Monomial& m);

protected:
    virtual Scalar compute(const Monomial& m) = 0;

private:
    std::unordered_map<Monomial, Scalar, MonomialHash> memo_;
};

using Field = std::shared_ptr<FieldNode>;
using ModeCoefficient = std::function<Scalar(int)>;

/// c * exp(sum_{n != 0} coeff(n) alpha_n z^{-n}).
Field vertex(const Scalar& c, ModeCoefficient coeff);
/// sum_{n != 0} coeff(n) alpha_n z^{-n}.
Field linear(ModeCoefficient coeff);
Field constant(const Scalar& c);
Field sum(std::vector<std::pair<Scalar, Field>> terms);
Field add(Field a, Field b);
Field sub(Field a, Field b);
Field scale(Field a, const Scalar& c);
Field product(Field a, Field b);
Field product(const std::vector<Field>& factors);
/// F(lambda z).
Field dilate(Field f, const Scalar& lambda);

enum class DegreePart { positive, zero, negative };
/// The part of F carrying positive, zero or negative powers of z.
Field degree_part(Field f, DegreePart part);
/// 1/F for F with constant term 1.
Field inverse(Field f);

enum class FlowSide { left, right };
/// {H, F} (left) or {F, H} (right) for a functional H (weight-zero support).
Field flow(Field h, Field f, const Scalar& q, FlowSide side = FlowSide::left);

/// [kappa * A(w1) B(w2)]_{1,w1,w2} as a field in z. The kernel must be
/// homogeneous of degree zero in (w1, w2, z); kappa(d1, d2) is the coefficient
/// of w1^{-d1} w2^{-d2} z^{d1+d2}.
Field pair_kernel(Field a, Field b, std::function<Scalar(int, int)> kappa);
/// [kappa * A(w1) B(w2) C(w3)]_1 with kappa(d1, d2, d3) the coefficient of
/// w1^{-d1} w2^{-d2} w3^{-d3} z^{d1+d2+d3}.
Field triple_kernel(Field a, Field b, Field c, std::function<Scalar(int, int, int)> kappa);

/// A field in two variables x, y. Its coefficient at (kx, m) multiplies
/// alpha^m x^{kx} y^{-weight(m)-kx}.
class Field2Node {
public:
    virtual ~Field2Node() = default;
    const Scalar& at(int kx, const Monomial& m);

protected:
    virtual Scalar compute(int kx, const Monomial& m) = 0;

private:
    struct Key {
        int kx;
        Monomial m;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const
        {
            return k.m.hash() ^ (static_cast<std::size_t>(k.kx) * 0x9e3779b97f4a7c15ull);
        }
    };
    std::unordered_map<Key, Scalar, KeyHash> memo_;
};

using Field2 = std::shared_ptr<Field2Node>;

/// {X(x), Y(y)}.
Field2 bracket2(Field x, Field y, const Scalar& q);
/// X(x) Y(y) sum_l kappa(l) (y/x)^l.
Field2 kernel_product2(Field x, Field y, std::function<Scalar(int)> kappa);
/// delta(c y/x) R(x), with delta(u) = sum_{j in Z} u^j.
Field2 delta2(Field r, const Scalar& c);
Field2 sum2(std::vector<std::pair<Scalar, Field2>> terms);

/// Comparison window: |z-degree| <= n_z (each variable for two-variable
/// fields), modes 0 < |n| <= n_modes, monomial degree <= max_deg.
struct Window {
    int n_z = 3;
    int n_modes = 6;
    int max_deg = 4;
};

struct Residual {
    bool exact_zero = true;
    Scalar max_abs{0};
    long compared = 0;
    /// First nonzero residual coefficient, for diagnostics.
    std::string first_failure;
};

Residual compare(Field lhs, Field rhs, const Window& w);
Residual compare2(Field2 lhs, Field2 rhs, const Window& w);

/// Coefficients of F for |z-degree| <= n_z over the truncated algebra t, as
/// an exact Laurent series with AlphaPoly coefficients.
FieldSeries materialize(Field f, Truncation t, int n_z);

} // namespace todabo
