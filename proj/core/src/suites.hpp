#pragma once

#include "qbisect/harness.hpp"
#include "qbisect/qlinalg.hpp"
#include "qbisect/rng.hpp"

namespace qbisect::detail {

/// Stream of trial k of the suite at position `suite` in suite_names().
inline SplitMix64 trial_stream(std::uint64_t seed, std::size_t suite, std::uint64_t k) {
    return SplitMix64(seed).split(suite).split(k);
}

std::size_t suite_index(const std::string& name);

SuiteResult run_suite(const Scenario& s, const std::string& name);

template <class S>
HVector<Float> to_float(const HVector<S>& v) {
    HVector<Float> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& q = v[i];
        out[i] = Quaternion<Float>(ScalarTraits<S>::to_double(q.re), ScalarTraits<S>::to_double(q.x),
                                   ScalarTraits<S>::to_double(q.y), ScalarTraits<S>::to_double(q.z));
    }
    return out;
}

}  // namespace qbisect::detail
