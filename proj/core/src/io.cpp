#include "json_io.hpp"

namespace qbisect {

namespace jio {

json parse(std::string_view text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace jio

template <class S>
std::string to_json(const Quaternion<S>& q) {
    return jio::quaternion(q).dump();
}
template <class S>
std::string to_json(const HVector<S>& v) {
    return jio::vector(v).dump();
}
template <class S>
std::string to_json(const Matrix<S>& m) {
    return jio::matrix(m).dump();
}

template <class S>
Quaternion<S> quaternion_from_json(std::string_view text) {
    return jio::quaternion_from<S>(jio::parse(text, "$"), "$");
}
template <class S>
HVector<S> vector_from_json(std::string_view text) {
    return jio::vector_from<S>(jio::parse(text, "$"), "$");
}
template <class S>
Matrix<S> matrix_from_json(std::string_view text) {
    return jio::matrix_from<S>(jio::parse(text, "$"), "$");
}
template <class S>
ProjectivePoint<S> ball_point_from_json(std::string_view text) {
    return jio::ball_point_from<S>(jio::parse(text, "$"), "$");
}

std::string point_cloud_json(std::string_view what, std::size_t n, const std::vector<CloudEntry>& points) {
    jio::json out;
    out["what"] = std::string(what);
    out["n"] = n;
    out["count"] = points.size();
    jio::json arr = jio::json::array();
    for (const auto& p : points) {
        jio::json e;
        e["ball"] = p.coords;
        e["residual"] = p.residual;
        e["member"] = p.member;
        arr.push_back(std::move(e));
    }
    out["points"] = std::move(arr);
    return out.dump(2);
}

#define QBISECT_IO_INSTANTIATE(S)                                  \
    template std::string to_json(const Quaternion<S>&);            \
    template std::string to_json(const HVector<S>&);               \
    template std::string to_json(const Matrix<S>&);                \
    template Quaternion<S> quaternion_from_json<S>(std::string_view); \
    template HVector<S> vector_from_json<S>(std::string_view);     \
    template Matrix<S> matrix_from_json<S>(std::string_view);      \
    template ProjectivePoint<S> ball_point_from_json<S>(std::string_view);

QBISECT_IO_INSTANTIATE(Exact)
QBISECT_IO_INSTANTIATE(Float)

}  // namespace qbisect
