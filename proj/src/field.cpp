#include "todabo/field.hpp"

#include <algorithm>

namespace todabo {

const Scalar& FieldNode::at(const Monomial& m)
{
    auto it = memo_.find(m);
    if (it != memo_.end())
        return it->second;
    Scalar v = compute(m);
    return memo_.emplace(m, std::move(v)).first->second;
}

const Scalar& Field2Node::at(int kx, const Monomial& m)
{
    Key key{kx, m};
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;
    Scalar v = compute(kx, m);
    return memo_.emplace(std::move(key), std::move(v)).first->second;
}

namespace {

// Multiplicity-weighted coefficient of alpha^m in dF/dalpha_n, read off at
// the monomial alpha_n * m.
Scalar partial(FieldNode& f, int n, const Monomial& m)
{
    Monomial up = m.with(n);
    const Scalar& c = f.at(up);
    if (c.is_zero())
        return c;
    return c * Scalar(up.multiplicity(n));
}

class CachedCoefficient {
public:
    explicit CachedCoefficient(ModeCoefficient f) : f_(std::move(f)) {}
    const Scalar& operator()(int n)
    {
        auto it = cache_.find(n);
        if (it == cache_.end())
            it = cache_.emplace(n, f_(n)).first;
        return it->second;
    }

private:
    ModeCoefficient f_;
    std::unordered_map<int, Scalar> cache_;
};

class VertexNode : public FieldNode {
public:
    VertexNode(Scalar c, ModeCoefficient coeff) : c_(std::move(c)), coeff_(std::move(coeff)) {}

protected:
    Scalar compute(const Monomial& m) override
    {
        Scalar r = c_;
        for (auto [mode, mult] : m.runs()) {
            const Scalar& cn = coeff_(mode);
            if (cn.is_zero())
                return Scalar(0);
            Scalar fact(1);
            for (int i = 2; i <= mult; ++i)
                fact *= Scalar(i);
            r *= cn.pow(mult) / fact;
        }
        return r;
    }

private:
    Scalar c_;
    CachedCoefficient coeff_;
};

class LinearNode : public FieldNode {
public:
    explicit LinearNode(ModeCoefficient coeff) : coeff_(std::move(coeff)) {}

protected:
    Scalar compute(const Monomial& m) override
    {
        if (m.degree() != 1)
            return Scalar(0);
        return coeff_(m[0]);
    }

private:
    CachedCoefficient coeff_;
};

class ConstantNode : public FieldNode {
public:
    explicit ConstantNode(Scalar c) : c_(std::move(c)) {}

protected:
    Scalar compute(const Monomial& m) override { return m.empty() ? c_ : Scalar(0); }

private:
    Scalar c_;
};

class SumNode : public FieldNode {
public:
    explicit SumNode(std::vector<std::pair<Scalar, Field>> terms) : terms_(std::move(terms)) {}

protected:
    Scalar compute(const Monomial& m) override
    {
        Scalar r(0);
        for (auto& [c, f] : terms_)
            r += c * f->at(m);
        return r;
    }

private:
    std::vector<std::pair<Scalar, Field>> terms_;
};

class ProductNode : public FieldNode {
public:
    ProductNode(Field a, Field b) : a_(std::move(a)), b_(std::move(b)) {}

protected:
    Scalar compute(const Monomial& m) override
    {
        Scalar r(0);
        m.for_each_split([&](const Monomial& s, const Monomial& rest) {
            const Scalar& x = a_->at(s);
            if (x.is_zero())
                return;
            const Scalar& y = b_->at(rest);
            if (!y.is_zero())
                r += x * y;
        });
        return r;
    }

private:
    Field a_, b_;
};

class DilateNode : public FieldNode {
public:
    DilateNode(Field f, Scalar lambda) : f_(std::move(f)), lambda_(std::move(lambda)) {}

protected:
    Scalar compute(const Monomial& m) override
    {
        const Scalar& c = f_->at(m);
        if (c.is_zero())
            return c;
        return c * lambda_.pow(-m.weight());
    }

private:
    Field f_;
    Scalar lambda_;
};

class DegreePartNode : public FieldNode {
public:
    DegreePartNode(Field f, DegreePart part) : f_(std::move(f)), part_(part) {}

protected:
    Scalar compute(const Monomial& m) override
    {
        int d = -m.weight();
        bool keep = part_ == DegreePart::positive ? d > 0 : part_ == DegreePart::negative ? d < 0 : d == 0;
        return keep ? f_->at(m) : Scalar(0);
    }

private:
    Field f_;
    DegreePart part_;
};

class InverseNode : public FieldNode {
public:
    explicit InverseNode(Field f) : f_(std::move(f))
    {
        if (!(f_->at(Monomial{}) == Scalar(1)))
            throw ArgumentError("inverse: constant term must be 1");
    }

protected:
    Scalar compute(const Monomial& m) override
    {
        if (m.empty())
            return Scalar(1);
        Scalar r(0);
        m.for_each_split([&](const Monomial& s, const Monomial& rest) {
            if (s.empty())
                return;
            const Scalar& x = f_->at(s);
            if (!x.is_zero())
                r -= x * at(rest);
        });
        return r;
    }

private:
    Field f_;
};

class FlowNode : public FieldNode {
public:
    FlowNode(Field h, Field f, Scalar q, FlowSide side)
        : h_(std::move(h)), f_(std::move(f)), q_(std::move(q)), sign_(side == FlowSide::left ? 1 : -1)
    {
    }

protected:
    Scalar compute(const Monomial& m) override
    {
        Scalar r(0);
        m.for_each_split([&](const Monomial& s, const Monomial& rest) {
            int n = -s.weight();
            if (n == 0)
                return;
            Scalar dh = partial(*h_, n, s);
            if (dh.is_zero())
                return;
            Scalar df = partial(*f_, -n, rest);
            if (!df.is_zero())
                r += bracket_constant(n, q_) * dh * df;
        });
        return sign_ > 0 ? r : -r;
    }

private:
    Field h_, f_;
    Scalar q_;
    int sign_;
};

class PairKernelNode : public FieldNode {
public:
    PairKernelNode(Field a, Field b, std::function<Scalar(int, int)> kappa)
        : a_(std::move(a)), b_(std::move(b)), kappa_(std::move(kappa))
    {
    }

protected:
    Scalar compute(const Monomial& m) override
    {
        Scalar r(0);
        const int w = m.weight();
        m.for_each_split([&](const Monomial& s, const Monomial& rest) {
            int d1 = -s.weight();
            Scalar k = kappa_(d1, -w - d1);
            if (k.is_zero())
                return;
            const Scalar& x = a_->at(s);
            if (x.is_zero())
                return;
            r += k * x * b_->at(rest);
        });
        return r;
    }

private:
    Field a_, b_;
    std::function<Scalar(int, int)> kappa_;
};

class TripleKernelNode : public FieldNode {
public:
    TripleKernelNode(Field a, Field b, Field c, std::function<Scalar(int, int, int)> kappa)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), kappa_(std::move(kappa))
    {
    }

protected:
    Scalar compute(const Monomial& m) override
    {
        Scalar r(0);
        const int w = m.weight();
        m.for_each_split([&](const Monomial& s1, const Monomial& rest1) {
            const int d1 = -s1.weight();
            const Scalar& x = a_->at(s1);
            if (x.is_zero())
                return;
            rest1.for_each_split([&](const Monomial& s2, const Monomial& s3) {
                const int d2 = -s2.weight();
                Scalar k = kappa_(d1, d2, -w - d1 - d2);
                if (k.is_zero())
                    return;
                const Scalar& y = b_->at(s2);
                if (y.is_zero())
                    return;
                r += k * x * y * c_->at(s3);
            });
        });
        return r;
    }

private:
    Field a_, b_, c_;
    std::function<Scalar(int, int, int)> kappa_;
};

class Bracket2Node : public Field2Node {
public:
    Bracket2Node(Field x, Field y, Scalar q) : x_(std::move(x)), y_(std::move(y)), q_(std::move(q)) {}

protected:
    Scalar compute(int kx, const Monomial& m) override
    {
        Scalar r(0);
        m.for_each_split([&](const Monomial& s, const Monomial& rest) {
            int n = -kx - s.weight();
            if (n == 0)
                return;
            Scalar dx = partial(*x_, n, s);
            if (dx.is_zero())
                return;
            Scalar dy = partial(*y_, -n, rest);
            if (!dy.is_zero())
                r += bracket_constant(n, q_) * dx * dy;
        });
        return r;
    }

private:
    Field x_, y_;
    Scalar q_;
};

class KernelProduct2Node : public Field2Node {
public:
    KernelProduct2Node(Field x, Field y, std::function<Scalar(int)> kappa)
        : x_(std::move(x)), y_(std::move(y)), kappa_(std::move(kappa))
    {
    }

protected:
    Scalar compute(int kx, const Monomial& m) override
    {
        Scalar r(0);
        m.for_each_split([&](const Monomial& s, const Monomial& rest) {
            Scalar k = kappa_(-s.weight() - kx);
            if (k.is_zero())
                return;
            const Scalar& a = x_->at(s);
            if (a.is_zero())
                return;
            r += k * a * y_->at(rest);
        });
        return r;
    }

private:
    Field x_, y_;
    std::function<Scalar(int)> kappa_;
};

class Delta2Node : public Field2Node {
public:
    Delta2Node(Field r, Scalar c) : r_(std::move(r)), c_(std::move(c)) {}

protected:
    Scalar compute(int kx, const Monomial& m) override
    {
        const Scalar& v = r_->at(m);
        if (v.is_zero())
            return v;
        int ky = -m.weight() - kx;
        return v * c_.pow(ky);
    }

private:
    Field r_;
    Scalar c_;
};

class Sum2Node : public Field2Node {
public:
    explicit Sum2Node(std::vector<std::pair<Scalar, Field2>> terms) : terms_(std::move(terms)) {}

protected:
    Scalar compute(int kx, const Monomial& m) override
    {
        Scalar r(0);
        for (auto& [c, f] : terms_)
            r += c * f->at(kx, m);
        return r;
    }

private:
    std::vector<std::pair<Scalar, Field2>> terms_;
};

void record(Residual& res, const Scalar& diff, const std::string& where)
{
    ++res.compared;
    if (diff.is_zero())
        return;
    if (res.exact_zero)
        res.first_failure = where + ": " + diff.str();
    res.exact_zero = false;
    Scalar a = diff.abs();
    if (a > res.max_abs)
        res.max_abs = a;
}

} // namespace

Field vertex(const Scalar& c, ModeCoefficient coeff) { return std::make_shared<VertexNode>(c, std::move(coeff)); }
Field linear(ModeCoefficient coeff) { return std::make_shared<LinearNode>(std::move(coeff)); }
Field constant(const Scalar& c) { return std::make_shared<ConstantNode>(c); }
Field sum(std::vector<std::pair<Scalar, Field>> terms) { return std::make_shared<SumNode>(std::move(terms)); }
Field add(Field a, Field b) { return sum({{Scalar(1), std::move(a)}, {Scalar(1), std::move(b)}}); }
Field sub(Field a, Field b) { return sum({{Scalar(1), std::move(a)}, {Scalar(-1), std::move(b)}}); }
Field scale(Field a, const Scalar& c) { return sum({{c, std::move(a)}}); }
Field product(Field a, Field b) { return std::make_shared<ProductNode>(std::move(a), std::move(b)); }

Field product(const std::vector<Field>& factors)
{
    if (factors.empty())
        return constant(Scalar(1));
    Field r = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        r = product(r, factors[i]);
    return r;
}

Field dilate(Field f, const Scalar& lambda) { return std::make_shared<DilateNode>(std::move(f), lambda); }
Field degree_part(Field f, DegreePart part) { return std::make_shared<DegreePartNode>(std::move(f), part); }
Field inverse(Field f) { return std::make_shared<InverseNode>(std::move(f)); }

Field flow(Field h, Field f, const Scalar& q, FlowSide side)
{
    return std::make_shared<FlowNode>(std::move(h), std::move(f), q, side);
}

Field pair_kernel(Field a, Field b, std::function<Scalar(int, int)> kappa)
{
    return std::make_shared<PairKernelNode>(std::move(a), std::move(b), std::move(kappa));
}

Field triple_kernel(Field a, Field b, Field c, std::function<Scalar(int, int, int)> kappa)
{
    return std::make_shared<TripleKernelNode>(std::move(a), std::move(b), std::move(c), std::move(kappa));
}

Field2 bracket2(Field x, Field y, const Scalar& q) { return std::make_shared<Bracket2Node>(std::move(x), std::move(y), q); }

Field2 kernel_product2(Field x, Field y, std::function<Scalar(int)> kappa)
{
    return std::make_shared<KernelProduct2Node>(std::move(x), std::move(y), std::move(kappa));
}

Field2 delta2(Field r, const Scalar& c) { return std::make_shared<Delta2Node>(std::move(r), c); }
Field2 sum2(std::vector<std::pair<Scalar, Field2>> terms) { return std::make_shared<Sum2Node>(std::move(terms)); }

Residual compare(Field lhs, Field rhs, const Window& w)
{
    Residual res;
    for (const auto& m : enumerate_monomials(w.n_modes, w.max_deg, w.n_z))
        record(res, lhs->at(m) - rhs->at(m), "[" + m.str() + "]");
    return res;
}

Residual compare2(Field2 lhs, Field2 rhs, const Window& w)
{
    Residual res;
    for (const auto& m : enumerate_monomials(w.n_modes, w.max_deg, 2 * w.n_z)) {
        const int wt = m.weight();
        for (int kx = std::max(-w.n_z, -wt - w.n_z); kx <= std::min(w.n_z, -wt + w.n_z); ++kx)
            record(res, lhs->at(kx, m) - rhs->at(kx, m),
                   "[x^" + std::to_string(kx) + " y^" + std::to_string(-wt - kx) + " " + m.str() + "]");
    }
    return res;
}

FieldSeries materialize(Field f, Truncation t, int n_z)
{
    AlphaPoly zero(t);
    FieldSeries s(0, -n_z, n_z, std::nullopt, std::nullopt, zero);
    for (const auto& m : enumerate_monomials(t.n_modes, t.d_deg, n_z)) {
        const Scalar& c = f->at(m);
        if (!c.is_zero())
            s.mut(-m.weight()).add_term(m, c);
    }
    return s;
}

} // namespace todabo
