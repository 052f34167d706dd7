#pragma once

// Seeded samplers. Exact draws are small-denominator rationals; the float
// backend draws the same rationals converted to binary64 unless a finer grid
// is requested.

#include <cstdint>

#include "qbisect/model.hpp"
#include "qbisect/rng.hpp"

namespace qbisect {

struct SamplingBounds {
    std::int64_t max_num = 16;
    std::int64_t max_den = 16;
};

template <class S>
S from_ratio(std::int64_t num, std::int64_t den) {
    if constexpr (ScalarTraits<S>::exact) {
        Exact q(static_cast<long>(num), static_cast<unsigned long>(den));
        q.canonicalize();
        return q;
    } else {
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

/// num / den with |num| <= max_num, 1 <= den <= max_den.
template <class S>
S random_scalar(SplitMix64& rng, const SamplingBounds& b = {}) {
    const std::int64_t den = rng.uniform_int(1, b.max_den);
    const std::int64_t num = rng.uniform_int(-b.max_num, b.max_num);
    return from_ratio<S>(num, den);
}

/// Rational in [-1, 1].
template <class S>
S random_unit_interval(SplitMix64& rng, const SamplingBounds& b = {}) {
    const std::int64_t den = rng.uniform_int(1, b.max_den);
    const std::int64_t num = rng.uniform_int(-den, den);
    return from_ratio<S>(num, den);
}

template <class S>
Quaternion<S> random_quaternion(SplitMix64& rng, const SamplingBounds& b = {}) {
    return {random_scalar<S>(rng, b), random_scalar<S>(rng, b), random_scalar<S>(rng, b), random_scalar<S>(rng, b)};
}

template <class S>
Quaternion<S> random_nonzero_quaternion(SplitMix64& rng, const SamplingBounds& b = {}) {
    for (;;) {
        Quaternion<S> q = random_quaternion<S>(rng, b);
        if (norm_sq(q) != S(0)) return q;
    }
}

template <class S>
Quaternion<S> random_imaginary(SplitMix64& rng, const SamplingBounds& b = {}) {
    return {S(0), random_scalar<S>(rng, b), random_scalar<S>(rng, b), random_scalar<S>(rng, b)};
}

template <class S>
ImaginaryDirection<S> random_direction(SplitMix64& rng, const SamplingBounds& b = {}) {
    for (;;) {
        Quaternion<S> q = random_imaginary<S>(rng, b);
        if (imag_norm_sq(q) != S(0)) return ImaginaryDirection<S>(q);
    }
}

/// Exact unit quaternion via the Cayley transform of a random imaginary.
template <class S>
Quaternion<S> random_unit_quaternion(SplitMix64& rng, const SamplingBounds& b = {}) {
    return cayley_unit(random_imaginary<S>(rng, b));
}

/// Quaternion in the closed unit ball of Q (|q| <= 1).
template <class S>
Quaternion<S> random_small_quaternion(SplitMix64& rng, const SamplingBounds& b = {}) {
    return {random_unit_interval<S>(rng, b) / S(2), random_unit_interval<S>(rng, b) / S(2),
            random_unit_interval<S>(rng, b) / S(2), random_unit_interval<S>(rng, b) / S(2)};
}

/// Interior ball point: coordinates drawn from a cube, pulled inside by an
/// integer factor m with m^2 > |w|^2 and a random shrink in (0, 1).
template <class S>
ProjectivePoint<S> random_ball_point(SplitMix64& rng, std::size_t n, const SamplingBounds& b = {}) {
    std::vector<Quaternion<S>> w(n);
    S r(0);
    for (auto& q : w) {
        q = {random_unit_interval<S>(rng, b), random_unit_interval<S>(rng, b), random_unit_interval<S>(rng, b),
             random_unit_interval<S>(rng, b)};
        r += norm_sq(q);
    }
    const auto m = static_cast<std::int64_t>(std::floor(std::sqrt(ScalarTraits<S>::to_double(r)))) + 1;
    const S shrink = from_ratio<S>(rng.uniform_int(1, b.max_den - 1), b.max_den * m);
    for (auto& q : w) q *= shrink;
    return ball(std::move(w));
}

/// Random vector with every coordinate a random quaternion (any sign class).
template <class S>
HVector<S> random_vector(SplitMix64& rng, std::size_t dim, const SamplingBounds& b = {}) {
    HVector<S> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = random_quaternion<S>(rng, b);
    return v;
}

}  // namespace qbisect
