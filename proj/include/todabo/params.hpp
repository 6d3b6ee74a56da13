#pragma once

#include "todabo/scalar.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace todabo {

/// A sampled parameter assignment. `s` is primary and q = s^2, so the
/// half-integer powers q^{n/2} stay rational.
class ParamPoint {
public:
    /// Number of shifts q^m eps (|m| <= guard) checked against each a_i.
    static constexpr int default_guard = 8;

    /// Validates all non-degeneracy constraints; throws ArgumentError.
    ParamPoint(Scalar s, Scalar eps, std::vector<Scalar> a, int guard = default_guard);

    const Scalar& s() const { return s_; }
    const Scalar& q() const { return q_; }
    const Scalar& eps() const { return eps_; }
    const std::vector<Scalar>& a() const { return a_; }
    int n() const { return static_cast<int>(a_.size()); }

    /// The mirrored point s -> 1/s, a -> 1/a, eps -> 1/eps, used for the
    /// barred quantities.
    ParamPoint inverted() const;

    std::string describe() const;

private:
    Scalar s_, q_, eps_;
    std::vector<Scalar> a_;
};

/// Deterministic sampler. Bounded integers are drawn with a fixed rejection
/// scheme over raw mt19937_64 output so streams match across standard
/// libraries.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    /// Nonzero rational p/d with 2 <= d <= max_den and |p/d| <= bound.
    Scalar rational(const Scalar& bound, int max_den);

    struct Options {
        Scalar a_bound{1, 4};
        Scalar eps_bound{1, 8};
        int max_den = 40;
        /// When set, s is fixed; otherwise it is drawn from a small list.
        std::optional<Scalar> s;
    };

    /// Draws a valid ParamPoint with n solitons, rejecting degenerate draws.
    ParamPoint param_point(int n, const Options& opts);
    ParamPoint param_point(int n) { return param_point(n, Options{}); }

private:
    std::mt19937_64 engine_;
};

} // namespace todabo
