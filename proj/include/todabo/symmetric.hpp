#pragma once

#include "todabo/params.hpp"
#include "todabo/scalar.hpp"

#include <span>
#include <vector>

namespace todabo {

/// Dense square matrix over Scalar, row-major.
class Matrix {
public:
    explicit Matrix(int size) : n_(size), a_(static_cast<std::size_t>(size) * size) {}
    int size() const { return n_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    int n_;
    std::vector<Scalar> a_;
};

/// Exact determinant by fraction-free pivoted elimination.
Scalar determinant(Matrix m);

/// e_k of a finite alphabet (e_0 = 1, e_k = 0 for k > size).
Scalar elementary_symmetric(std::span<const Scalar> x, int k);

/// All of e_0 .. e_kmax, via the product of (1 + x_i y).
std::vector<Scalar> elementary_symmetric_all(std::span<const Scalar> x, int kmax);

Scalar power_sum(std::span<const Scalar> x, int k);

/// p_k from e_1..e_k through the k x k Newton determinant
///   | e1   1    0  ... |
///   | 2e2  e1   1  ... |
///   | ...              |
///   | k ek e_{k-1} ... e1 |
Scalar newton_p_from_e(std::span<const Scalar> e);

/// e_k(x0, q x0, q^2 x0, ...) = x0^k q^{k(k-1)/2} / prod_{i=1..k} (1 - q^i).
Scalar e_geometric_tail(const Scalar& x0, const Scalar& q, int k);

/// p_i(a) + q^{n i} eps^i / (1 - q^i): the power sum of the alphabet
/// a_1..a_n, q^n eps, q^{n+1} eps, ... with its geometric tail summed.
Scalar power_sum_extended(int i, std::span<const Scalar> a, const Scalar& eps, const Scalar& q);
Scalar power_sum_extended(int i, const ParamPoint& p);

/// prod_{i=1..k} (1 - q^i).
Scalar q_pochhammer(const Scalar& q, int k);

} // namespace todabo
