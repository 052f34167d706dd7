#pragma once

// Shared fixtures for the unit tests: literal helpers and a seeded generator
// written independently of the library samplers.

#include <gtest/gtest.h>

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

#include "qbisect/fan.hpp"

namespace qt {

using namespace qbisect;

using S = Exact;
using Q = Quaternion<Exact>;
using V = HVector<Exact>;
using M = Matrix<Exact>;
using FQ = Quaternion<Float>;
using FV = HVector<Float>;

inline Q q(std::string_view text) { return parse_quaternion<Exact>(text); }
inline FQ fq(std::string_view text) { return parse_quaternion<Float>(text); }

inline Exact rat(long p, long d = 1) {
    Exact x(p, d);
    x.canonicalize();
    return x;
}

inline V vec(std::initializer_list<std::string_view> xs) {
    V v(xs.size());
    std::size_t i = 0;
    for (auto t : xs) v[i++] = q(t);
    return v;
}

inline ProjectivePoint<Exact> bp(std::initializer_list<std::string_view> xs) {
    std::vector<Q> w;
    for (auto t : xs) w.push_back(q(t));
    return ball(std::move(w));
}

inline FV to_float(const V& v) {
    FV out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = {v[i].re.get_d(), v[i].x.get_d(), v[i].y.get_d(), v[i].z.get_d()};
    return out;
}

/// Seeded generator for property tests: small-denominator rationals.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    SplitMix64& rng() { return rng_; }

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng_.next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Exact scalar(int bound = 9) { return rat(integer(-bound, bound), integer(1, bound)); }

    Q quat(int bound = 9) { return {scalar(bound), scalar(bound), scalar(bound), scalar(bound)}; }

    Q nonzero_quat(int bound = 9) {
        for (;;) {
            Q a = quat(bound);
            if (!is_zero(a)) return a;
        }
    }

    Q imaginary(int bound = 9) {
        for (;;) {
            Q a{S(0), scalar(bound), scalar(bound), scalar(bound)};
            if (!is_zero(a)) return a;
        }
    }

    V vector(std::size_t dim, int bound = 9) {
        V v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = quat(bound);
        return v;
    }

    /// Interior ball point with coordinates in a small cube scaled inside.
    ProjectivePoint<Exact> ball_point(std::size_t n) {
        std::vector<Q> w(n);
        for (auto& c : w) c = quat(4) / S(static_cast<long>(4 * n + 8));
        return ball(std::move(w));
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform01(); }

private:
    SplitMix64 rng_;
};

}  // namespace qt
