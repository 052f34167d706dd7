#pragma once

// nlohmann::json conversions shared by the library sources; not installed.

#include <json.hpp>

#include "qbisect/io.hpp"

namespace qbisect::jio {

using json = nlohmann::ordered_json;

template <class S>
json scalar(const S& s) {
    return ScalarTraits<S>::str(s);
}

template <class S>
S scalar_from(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return ScalarTraits<S>::parse(j.get<std::string>());
        if (j.is_number_integer()) return S(j.get<long>());
        if (j.is_number()) {
            if constexpr (ScalarTraits<S>::exact) return ScalarTraits<S>::parse(j.dump());
            else return j.get<double>();
        }
    } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(path, "expected a scalar string");
}

template <class S>
json quaternion(const Quaternion<S>& q) {
    return json::array({scalar(q.re), scalar(q.x), scalar(q.y), scalar(q.z)});
}

template <class S>
Quaternion<S> quaternion_from(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_quaternion<S>(j.get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(path, e.what());
        }
    }
    if (j.is_number()) return Quaternion<S>(scalar_from<S>(j, path));
    if (!j.is_array() || j.size() != 4) throw ConfigError(path, "expected a quaternion (4-array or text)");
    return {scalar_from<S>(j[0], path + "[0]"), scalar_from<S>(j[1], path + "[1]"), scalar_from<S>(j[2], path + "[2]"),
            scalar_from<S>(j[3], path + "[3]")};
}

template <class S>
json vector(const HVector<S>& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(quaternion(q));
    return out;
}

template <class S>
HVector<S> vector_from(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of quaternions");
    HVector<S> v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = quaternion_from<S>(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

template <class S>
json matrix(const Matrix<S>& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(quaternion(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

template <class S>
Matrix<S> matrix_from(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw ConfigError(path, "expected an array of rows");
    Matrix<S> m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != m.cols()) throw ConfigError(rp, "ragged matrix row");
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = quaternion_from<S>(j[i][k], rp + "[" + std::to_string(k) + "]");
    }
    return m;
}

template <class S>
ProjectivePoint<S> ball_point_from(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a ball point (array of quaternions)");
    std::vector<Quaternion<S>> w;
    for (std::size_t i = 0; i < j.size(); ++i) w.push_back(quaternion_from<S>(j[i], path + "[" + std::to_string(i) + "]"));
    try {
        return ball(std::move(w));
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
}

template <class S>
json ball_point(const ProjectivePoint<S>& p) {
    json out = json::array();
    const auto b = to_ball(p);
    for (const auto& q : b.coords()) out.push_back(quaternion(q));
    return out;
}

json parse(std::string_view text, const std::string& path);

}  // namespace qbisect::jio
