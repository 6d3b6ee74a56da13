#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace todabo {

/// Commutative monomial in the mode symbols alpha_n (n != 0), stored as a
/// sorted multiset of mode indices.
class Monomial {
public:
    static constexpr int capacity = 24;

    Monomial() = default;
    Monomial(std::initializer_list<int> modes);
    explicit Monomial(std::span<const int> modes);

    int degree() const { return n_; }
    bool empty() const { return n_ == 0; }
    /// Sum of the mode indices. A monomial contributes to z^{-weight} in every field.
    int weight() const;
    int operator[](int i) const { return m_[static_cast<std::size_t>(i)]; }
    int multiplicity(int mode) const;
    int max_abs_mode() const;

    /// This monomial times alpha_mode.
    Monomial with(int mode) const;
    Monomial operator*(const Monomial& other) const;

    /// Calls f(sub, rest) once for every distinct sub-multiset, including the
    /// empty one and the whole monomial.
    void for_each_split(const std::function<void(const Monomial&, const Monomial&)>& f) const;

    /// Distinct modes with multiplicities, in increasing mode order.
    std::vector<std::pair<int, int>> runs() const;

    std::string str() const;
    std::size_t hash() const;

    friend bool operator==(const Monomial& a, const Monomial& b)
    {
        return a.n_ == b.n_ && std::equal(a.m_.begin(), a.m_.begin() + a.n_, b.m_.begin());
    }
    /// Degree first, then lexicographic on the sorted modes.
    friend bool operator<(const Monomial& a, const Monomial& b);

private:
    void push_sorted(int mode);

    std::array<std::int16_t, capacity> m_{};
    std::uint8_t n_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All monomials with modes 0 < |n| <= n_modes and degree <= max_degree, in
/// Monomial order. With a weight filter only monomials with |weight| <= bound
/// are produced.
std::vector<Monomial> enumerate_monomials(int n_modes, int max_degree, int max_abs_weight);

} // namespace todabo
