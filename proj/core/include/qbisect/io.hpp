#pragma once

// JSON encodings. A quaternion is a 4-array of scalar strings
// ["a0","a1","a2","a3"] (exact scalars as "p/q"); the text form
// "a0 + a1 i + a2 j + a3 k" is accepted wherever a quaternion is read.
// Vectors are arrays of quaternions, matrices arrays of rows, and a ball
// point is the array of its n affine coordinates.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qbisect/model.hpp"

namespace qbisect {

template <class S>
std::string to_json(const Quaternion<S>& q);
template <class S>
std::string to_json(const HVector<S>& v);
template <class S>
std::string to_json(const Matrix<S>& m);

template <class S>
Quaternion<S> quaternion_from_json(std::string_view text);
template <class S>
HVector<S> vector_from_json(std::string_view text);
template <class S>
Matrix<S> matrix_from_json(std::string_view text);
/// A ball point given by its affine coordinates.
template <class S>
ProjectivePoint<S> ball_point_from_json(std::string_view text);

struct CloudEntry {
    std::vector<std::array<std::string, 4>> coords;  // ball coordinates as scalar strings
    double residual = 0;
    bool member = false;
};

/// Point-cloud export: {"what", "n", "count", "points": [{"ball": [[a0,a1,a2,a3], ...],
/// "residual": r, "member": b}, ...]}.
std::string point_cloud_json(std::string_view what, std::size_t n, const std::vector<CloudEntry>& points);

template <class S>
CloudEntry cloud_entry(const ProjectivePoint<S>& p, double residual, bool member) {
    CloudEntry e;
    const auto b = to_ball(p);
    using T = ScalarTraits<S>;
    for (const auto& q : b.coords()) e.coords.push_back({T::str(q.re), T::str(q.x), T::str(q.y), T::str(q.z)});
    e.residual = residual;
    e.member = member;
    return e;
}

}  // namespace qbisect
