#include "todabo/monomial.hpp"

#include "todabo/scalar.hpp"

#include <algorithm>
#include <cstdlib>

namespace todabo {

Monomial::Monomial(std::initializer_list<int> modes)
{
    for (int m : modes)
        push_sorted(m);
}

Monomial::Monomial(std::span<const int> modes)
{
    for (int m : modes)
        push_sorted(m);
}

void Monomial::push_sorted(int mode)
{
    if (mode == 0)
        throw ArgumentError("Monomial: mode index 0 does not exist");
    if (n_ >= capacity)
        throw ArgumentError("Monomial: degree exceeds capacity");
    if (mode > 32767 || mode < -32767)
        throw ArgumentError("Monomial: mode index out of range");
    int i = n_;
    while (i > 0 && m_[i - 1] > mode) {
        m_[i] = m_[i - 1];
        --i;
    }
    m_[i] = static_cast<std::int16_t>(mode);
    ++n_;
}

int Monomial::weight() const
{
    int w = 0;
    for (int i = 0; i < n_; ++i)
        w += m_[i];
    return w;
}

int Monomial::multiplicity(int mode) const
{
    return static_cast<int>(std::count(m_.begin(), m_.begin() + n_, mode));
}

int Monomial::max_abs_mode() const
{
    int r = 0;
    for (int i = 0; i < n_; ++i)
        r = std::max(r, std::abs(static_cast<int>(m_[i])));
    return r;
}

Monomial Monomial::with(int mode) const
{
    Monomial r = *this;
    r.push_sorted(mode);
    return r;
}

Monomial Monomial::operator*(const Monomial& other) const
{
    Monomial r = *this;
    for (int i = 0; i < other.n_; ++i)
        r.push_sorted(other.m_[i]);
    return r;
}

std::vector<std::pair<int, int>> Monomial::runs() const
{
    std::vector<std::pair<int, int>> r;
    for (int i = 0; i < n_; ++i) {
        if (!r.empty() && r.back().first == m_[i])
            ++r.back().second;
        else
            r.emplace_back(m_[i], 1);
    }
    return r;
}

void Monomial::for_each_split(const std::function<void(const Monomial&, const Monomial&)>& f) const
{
    auto rs = runs();
    std::vector<int> take(rs.size(), 0);
    for (;;) {
        Monomial sub, rest;
        for (std::size_t r = 0; r < rs.size(); ++r) {
            for (int c = 0; c < take[r]; ++c)
                sub.m_[sub.n_++] = static_cast<std::int16_t>(rs[r].first);
            for (int c = take[r]; c < rs[r].second; ++c)
                rest.m_[rest.n_++] = static_cast<std::int16_t>(rs[r].first);
        }
        f(sub, rest);
        std::size_t r = 0;
        while (r < rs.size() && take[r] == rs[r].second)
            take[r++] = 0;
        if (r == rs.size())
            return;
        ++take[r];
    }
}

std::string Monomial::str() const
{
    if (n_ == 0)
        return "1";
    std::string out;
    for (auto [mode, mult] : runs()) {
        if (!out.empty())
            out += "*";
        out += "a" + std::to_string(mode);
        if (mult > 1)
            out += "^" + std::to_string(mult);
    }
    return out;
}

std::size_t Monomial::hash() const
{
    std::uint64_t h = 1469598103934665603ull ^ n_;
    for (int i = 0; i < n_; ++i) {
        h ^= static_cast<std::uint16_t>(m_[i]);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

bool operator<(const Monomial& a, const Monomial& b)
{
    if (a.n_ != b.n_)
        return a.n_ < b.n_;
    return std::lexicographical_compare(a.m_.begin(), a.m_.begin() + a.n_, b.m_.begin(),
                                        b.m_.begin() + b.n_);
}

std::vector<Monomial> enumerate_monomials(int n_modes, int max_degree, int max_abs_weight)
{
    std::vector<int> symbols;
    for (int n = -n_modes; n <= n_modes; ++n)
        if (n != 0)
            symbols.push_back(n);
    std::vector<Monomial> out;
    // Non-decreasing index sequences into symbols, one degree at a time.
    std::vector<Monomial> layer{Monomial{}};
    std::vector<int> last_index{-1};
    for (int d = 0; d <= max_degree; ++d) {
        for (const auto& m : layer)
            if (std::abs(m.weight()) <= max_abs_weight)
                out.push_back(m);
        if (d == max_degree)
            break;
        std::vector<Monomial> next;
        std::vector<int> next_last;
        for (std::size_t i = 0; i < layer.size(); ++i)
            for (int s = std::max(0, last_index[i]); s < static_cast<int>(symbols.size()); ++s) {
                next.push_back(layer[i].with(symbols[static_cast<std::size_t>(s)]));
                next_last.push_back(s);
            }
        layer = std::move(next);
        last_index = std::move(next_last);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace todabo
