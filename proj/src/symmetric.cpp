#include "todabo/symmetric.hpp"

#include <utility>

namespace todabo {

Scalar determinant(Matrix m)
{
    const int n = m.size();
    Scalar det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        while (pivot < n && m(pivot, col).is_zero())
            ++pivot;
        if (pivot == n)
            return Scalar(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m(pivot, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        Scalar inv = m(col, col).inverse();
        for (int row = col + 1; row < n; ++row) {
            if (m(row, col).is_zero())
                continue;
            Scalar f = m(row, col) * inv;
            for (int j = col; j < n; ++j)
                m(row, j) -= f * m(col, j);
        }
    }
    return det;
}

std::vector<Scalar> elementary_symmetric_all(std::span<const Scalar> x, int kmax)
{
    std::vector<Scalar> e(static_cast<std::size_t>(kmax) + 1, Scalar(0));
    e[0] = Scalar(1);
    for (const auto& xi : x)
        for (int k = kmax; k >= 1; --k)
            e[k] += xi * e[k - 1];
    return e;
}

Scalar elementary_symmetric(std::span<const Scalar> x, int k)
{
    if (k < 0)
        return Scalar(0);
    return elementary_symmetric_all(x, k)[k];
}

Scalar power_sum(std::span<const Scalar> x, int k)
{
    Scalar s(0);
    for (const auto& xi : x)
        s += xi.pow(k);
    return s;
}

Scalar newton_p_from_e(std::span<const Scalar> e)
{
    const int k = static_cast<int>(e.size());
    if (k < 1)
        throw ArgumentError("newton_p_from_e: need at least e_1");
    auto ek = [&](int i) { return i == 0 ? Scalar(1) : (i < 0 ? Scalar(0) : e[i - 1]); };
    Matrix m(k);
    for (int i = 0; i < k; ++i) {
        m(i, 0) = Scalar(i + 1) * ek(i + 1);
        for (int j = 1; j < k; ++j)
            m(i, j) = ek(i - j + 1);
    }
    return determinant(std::move(m));
}

Scalar q_pochhammer(const Scalar& q, int k)
{
    Scalar r(1), qi(1);
    for (int i = 1; i <= k; ++i) {
        qi *= q;
        r *= Scalar(1) - qi;
    }
    return r;
}

Scalar e_geometric_tail(const Scalar& x0, const Scalar& q, int k)
{
    if (k < 0)
        return Scalar(0);
    if (k == 0)
        return Scalar(1);
    Scalar den = q_pochhammer(q, k);
    if (den.is_zero())
        throw PoleError("e_geometric_tail: q^i = 1 for some i <= k");
    return x0.pow(k) * q.pow(static_cast<long>(k) * (k - 1) / 2) / den;
}

Scalar power_sum_extended(int i, std::span<const Scalar> a, const Scalar& eps, const Scalar& q)
{
    if (i < 1)
        throw ArgumentError("power_sum_extended: i must be >= 1");
    Scalar qi = q.pow(i);
    if (qi == Scalar(1))
        throw PoleError("power_sum_extended: q^i = 1");
    const long n = static_cast<long>(a.size());
    return power_sum(a, i) + q.pow(n * i) * eps.pow(i) / (Scalar(1) - qi);
}

Scalar power_sum_extended(int i, const ParamPoint& p)
{
    return power_sum_extended(i, p.a(), p.eps(), p.q());
}

} // namespace todabo
