#pragma once

#include "todabo/laurent.hpp"

#include <map>
#include <sstream>
#include <vector>

namespace todabo {

/// Sparse truncated Laurent series in w_1..w_k, every exponent in
/// [-window, window]. Products drop exponents that leave the window.
template <class C>
class MultiSeries {
public:
    static constexpr int default_max_vars = 4;
    using Exponents = std::vector<int>;

    MultiSeries(int nvars, int window, const C& zero, int max_vars = default_max_vars)
        : nvars_(nvars), window_(window), zero_(zero_like(zero))
    {
        if (nvars < 1 || nvars > max_vars)
            throw ArgumentError("MultiSeries: variable count out of range");
        if (window < 0)
            throw ArgumentError("MultiSeries: negative window");
    }

    static MultiSeries constant(int nvars, int window, const C& value)
    {
        MultiSeries m(nvars, window, value);
        m.add(Exponents(static_cast<std::size_t>(nvars), 0), value);
        return m;
    }

    /// Embeds a one-variable series as a function of w_var (0-based); only
    /// degrees inside both the series window and this window are kept.
    static MultiSeries embed(int nvars, int window, int var, const LaurentSeries<C>& s)
    {
        MultiSeries m(nvars, window, s.zero());
        for (int d = std::max(s.lo(), -window); d <= std::min(s.hi(), window); ++d) {
            Exponents e(static_cast<std::size_t>(nvars), 0);
            e[static_cast<std::size_t>(var)] = d;
            m.add(e, s.at(d));
        }
        return m;
    }

    int nvars() const { return nvars_; }
    int window() const { return window_; }
    const std::map<Exponents, C>& terms() const { return terms_; }

    bool in_window(const Exponents& e) const
    {
        for (int x : e)
            if (x < -window_ || x > window_)
                return false;
        return true;
    }

    void add(const Exponents& e, const C& c)
    {
        if (static_cast<int>(e.size()) != nvars_)
            throw ArgumentError("MultiSeries: exponent arity mismatch");
        if (!in_window(e) || is_zero(c))
            return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second = it->second + c;
            if (is_zero(it->second))
                terms_.erase(it);
        }
    }

    friend MultiSeries operator*(const MultiSeries& f, const MultiSeries& g)
    {
        if (f.nvars_ != g.nvars_ || f.window_ != g.window_)
            throw ArgumentError("MultiSeries: shape mismatch");
        MultiSeries r(f.nvars_, f.window_, f.zero_);
        Exponents e(static_cast<std::size_t>(f.nvars_));
        for (const auto& [ef, cf] : f.terms_)
            for (const auto& [eg, cg] : g.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ef[i] + eg[i];
                r.add(e, cf * cg);
            }
        return r;
    }

    /// Coefficient of w_1^0 ... w_k^0.
    C constant_term() const
    {
        auto it = terms_.find(Exponents(static_cast<std::size_t>(nvars_), 0));
        return it == terms_.end() ? zero_ : it->second;
    }

    /// One line per stored exponent vector: "(e1,...,ek): coefficient".
    std::string dump() const
    {
        std::ostringstream os;
        for (const auto& [e, c] : terms_) {
            os << "(";
            for (std::size_t i = 0; i < e.size(); ++i)
                os << (i ? "," : "") << e[i];
            os << "): " << to_string(c) << "\n";
        }
        return os.str();
    }

private:
    int nvars_;
    int window_;
    C zero_;
    std::map<Exponents, C> terms_;
};

enum class KernelKind { plus, minus };

/// (1 - w_j/w_i) / (1 - q^{+-1} w_j/w_i) = 1 + (1 - q^{-+1}) sum_{m=1..N} (q^{+-1} w_j/w_i)^m
/// for kind = plus / minus; i, j are 0-based variable indices.
template <class C>
MultiSeries<C> kernel_series(KernelKind kind, int i, int j, int order, const Scalar& q, int nvars,
                             int window, const C& zero)
{
    if (i == j)
        throw ArgumentError("kernel_series: i == j");
    if (i < 0 || j < 0 || i >= nvars || j >= nvars)
        throw ArgumentError("kernel_series: variable index out of range");
    Scalar base = kind == KernelKind::plus ? q : q.inverse();
    Scalar lead = Scalar(1) - base.inverse();
    MultiSeries<C> m(nvars, window, zero);
    typename MultiSeries<C>::Exponents e(static_cast<std::size_t>(nvars), 0);
    m.add(e, one_like(zero));
    for (int p = 1; p <= order; ++p) {
        e[static_cast<std::size_t>(j)] = p;
        e[static_cast<std::size_t>(i)] = -p;
        m.add(e, one_like(zero) * (lead * base.pow(p)));
    }
    return m;
}

} // namespace todabo
