#pragma once

#include "todabo/laurent.hpp"
#include "todabo/monomial.hpp"
#include "todabo/scalar.hpp"

#include <map>
#include <string>

namespace todabo {

/// Mode and degree caps of the truncated mode algebra.
struct Truncation {
    int n_modes = 6;
    int d_deg = 4;
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// sgn(n) (1 - q^{|n|}), the structure constant of {alpha_n, alpha_{-n}}.
Scalar bracket_constant(int n, const Scalar& q);

/// Polynomial in alpha_n, 0 < |n| <= n_modes, with every monomial of degree
/// above d_deg dropped. exact_deg records the degree up to which the
/// coefficients are unaffected by that truncation; each bracket lowers it by 2.
class AlphaPoly {
public:
    explicit AlphaPoly(Truncation t) : t_(t), exact_deg_(t.d_deg) {}

    static AlphaPoly constant(Truncation t, const Scalar& c);
    /// The generator alpha_n.
    static AlphaPoly mode(Truncation t, int n);

    const Truncation& truncation() const { return t_; }
    int exact_deg() const { return exact_deg_; }
    void set_exact_deg(int d) { exact_deg_ = d; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const Monomial& m) const;
    int degree() const;

    /// Adds c * m; monomials outside the truncation are rejected.
    void add_term(const Monomial& m, const Scalar& c);
    /// Partial derivative with respect to alpha_n.
    AlphaPoly derivative(int n) const;
    /// Keeps only monomials of degree <= d.
    AlphaPoly truncated_to(int d) const;

    AlphaPoly& operator+=(const AlphaPoly& o);
    AlphaPoly& operator-=(const AlphaPoly& o);
    AlphaPoly& operator*=(const Scalar& c);
    friend AlphaPoly operator+(AlphaPoly a, const AlphaPoly& b) { return a += b; }
    friend AlphaPoly operator-(AlphaPoly a, const AlphaPoly& b) { return a -= b; }
    friend AlphaPoly operator*(AlphaPoly a, const Scalar& c) { return a *= c; }
    friend AlphaPoly operator*(const Scalar& c, AlphaPoly a) { return a *= c; }
    friend AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b);
    AlphaPoly operator-() const { return *this * Scalar(-1); }
    friend bool operator==(const AlphaPoly& a, const AlphaPoly& b) { return a.terms_ == b.terms_; }

    /// "c*a1^2*a-3 + ..." in Monomial order; "0" when empty.
    std::string str() const;

private:
    void require_compatible(const AlphaPoly& o) const;

    Truncation t_;
    int exact_deg_;
    std::map<Monomial, Scalar> terms_;
};

/// {F, G} = sum_{0<|n|<=n_modes} sgn(n)(1-q^{|n|}) dF/dalpha_n dG/dalpha_{-n}.
AlphaPoly bracket(const AlphaPoly& f, const AlphaPoly& g, const Scalar& q);

inline AlphaPoly zero_like(const AlphaPoly& x) { return AlphaPoly(x.truncation()); }
inline AlphaPoly one_like(const AlphaPoly& x) { return AlphaPoly::constant(x.truncation(), Scalar(1)); }
inline bool is_zero(const AlphaPoly& x) { return x.is_zero(); }
inline std::string to_string(const AlphaPoly& x) { return x.str(); }

/// Laurent series in z with AlphaPoly coefficients.
using FieldSeries = LaurentSeries<AlphaPoly>;

} // namespace todabo
