#pragma once

// Hamilton quaternions over a scalar backend.
//
//   i^2 = j^2 = k^2 = -1,  ij = -ji = k,  jk = -kj = i,  ki = -ik = j.

#include <array>
#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

#include "qbisect/scalar.hpp"

namespace qbisect {

template <class S>
struct Quaternion {
    S re{0};
    S x{0};  // i
    S y{0};  // j
    S z{0};  // k

    Quaternion() = default;
    Quaternion(S r) : re(std::move(r)) {}  // NOLINT: reals embed implicitly
    Quaternion(S r, S i, S j, S k) : re(std::move(r)), x(std::move(i)), y(std::move(j)), z(std::move(k)) {}
    Quaternion(int r) : re(r) {}  // NOLINT

    static Quaternion unit_i() { return {S(0), S(1), S(0), S(0)}; }
    static Quaternion unit_j() { return {S(0), S(0), S(1), S(0)}; }
    static Quaternion unit_k() { return {S(0), S(0), S(0), S(1)}; }

    Quaternion imag() const { return {S(0), x, y, z}; }
    S real() const { return re; }

    Quaternion operator-() const { return {S(-re), S(-x), S(-y), S(-z)}; }

    Quaternion& operator+=(const Quaternion& o) {
        re += o.re;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        re -= o.re;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Quaternion& operator*=(const S& s) {
        re *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    Quaternion& operator/=(const S& s) {
        re /= s;
        x /= s;
        y /= s;
        z /= s;
        return *this;
    }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend Quaternion operator*(Quaternion a, const S& s) { return a *= s; }
    friend Quaternion operator*(const S& s, Quaternion a) { return a *= s; }
    friend Quaternion operator/(Quaternion a, const S& s) { return a /= s; }

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {S(a.re * b.re - a.x * b.x - a.y * b.y - a.z * b.z),
                S(a.re * b.x + a.x * b.re + a.y * b.z - a.z * b.y),
                S(a.re * b.y - a.x * b.z + a.y * b.re + a.z * b.x),
                S(a.re * b.z + a.x * b.y - a.y * b.x + a.z * b.re)};
    }

    /// Exact component equality. Geometry code uses `equal()` instead,
    /// which honours the float tolerance.
    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.re == b.re && a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

using ExactQuaternion = Quaternion<Exact>;
using FloatQuaternion = Quaternion<Float>;

template <class S>
Quaternion<S> conj(const Quaternion<S>& a) {
    return {a.re, S(-a.x), S(-a.y), S(-a.z)};
}

template <class S>
S norm_sq(const Quaternion<S>& a) {
    return S(a.re * a.re + a.x * a.x + a.y * a.y + a.z * a.z);
}

template <class S>
S imag_norm_sq(const Quaternion<S>& a) {
    return S(a.x * a.x + a.y * a.y + a.z * a.z);
}

/// Euclidean dot product of the imaginary parts as 3-vectors.
template <class S>
S imag_dot(const Quaternion<S>& a, const Quaternion<S>& b) {
    return S(a.x * b.x + a.y * b.y + a.z * b.z);
}

template <class S>
bool is_zero(const Quaternion<S>& a) {
    return is_zero(a.re) && is_zero(a.x) && is_zero(a.y) && is_zero(a.z);
}

template <class S>
bool equal(const Quaternion<S>& a, const Quaternion<S>& b) {
    return scalar_eq(a.re, b.re) && scalar_eq(a.x, b.x) && scalar_eq(a.y, b.y) && scalar_eq(a.z, b.z);
}

template <class S>
bool is_real(const Quaternion<S>& a) {
    return is_zero(a.x) && is_zero(a.y) && is_zero(a.z);
}

template <class S>
bool is_imaginary(const Quaternion<S>& a) {
    return is_zero(a.re);
}

/// Tiny but nonzero float quaternions are still inverted; only a literal
/// zero is rejected.
template <class S>
Quaternion<S> inverse(const Quaternion<S>& a) {
    const S n = norm_sq(a);
    if (n == S(0)) throw DomainError("division by zero quaternion");
    return conj(a) / n;
}

/// Similar iff equal real parts and equal moduli.
template <class S>
bool is_similar(const Quaternion<S>& a, const Quaternion<S>& b) {
    return scalar_eq(a.re, b.re) && scalar_eq(norm_sq(a), norm_sq(b));
}

template <class S>
struct SimilarityNormalForm {
    S re;
    S imag_norm_sq;
    /// Complex representative re + imag * i with imag >= 0. Only the float
    /// backend fills this in; exact moduli are generally irrational.
    std::optional<Quaternion<S>> representative;
};

template <class S>
SimilarityNormalForm<S> similarity_normal_form(const Quaternion<S>& a) {
    SimilarityNormalForm<S> nf{a.re, imag_norm_sq(a), std::nullopt};
    if constexpr (!ScalarTraits<S>::exact) {
        nf.representative = Quaternion<S>{a.re, std::sqrt(nf.imag_norm_sq), 0.0, 0.0};
    } else if (auto r = exact_sqrt(nf.imag_norm_sq)) {
        nf.representative = Quaternion<S>{a.re, *r, S(0), S(0)};
    }
    return nf;
}

/// A nonzero imaginary quaternion standing for the ray R+ q. Not normalised:
/// exact rationals rarely admit a unit representative on a given ray.
template <class S>
class ImaginaryDirection {
public:
    explicit ImaginaryDirection(Quaternion<S> q) : q_(std::move(q)) {
        if (!is_imaginary(q_)) throw DomainError("imaginary direction must have zero real part");
        if (is_zero(q_)) throw DomainError("imaginary direction must be nonzero");
        q_.re = S(0);
    }

    const Quaternion<S>& value() const { return q_; }
    S norm_sq() const { return qbisect::norm_sq(q_); }

    /// Same ray: positive multiples.
    bool equivalent(const ImaginaryDirection& o) const {
        const Quaternion<S>& a = q_;
        const Quaternion<S>& b = o.q_;
        const bool parallel = scalar_eq(S(a.x * b.y), S(a.y * b.x)) && scalar_eq(S(a.y * b.z), S(a.z * b.y)) &&
                              scalar_eq(S(a.x * b.z), S(a.z * b.x));
        return parallel && sign_of(imag_dot(a, b)) > 0;
    }

private:
    Quaternion<S> q_;
};

/// Deterministic orthogonal imaginary: (y, -x, 0) with the first nonzero
/// coordinate made positive, or i when the direction is along k.
template <class S>
ImaginaryDirection<S> orthogonal_imaginary(const ImaginaryDirection<S>& a) {
    const Quaternion<S>& q = a.value();
    if (is_zero(q.x) && is_zero(q.y)) return ImaginaryDirection<S>(Quaternion<S>::unit_i());
    Quaternion<S> b{S(0), q.y, S(-q.x), S(0)};
    const bool flip = !is_zero(b.x) ? sign_of(b.x) < 0 : sign_of(b.y) < 0;
    if (flip) b = -b;
    return ImaginaryDirection<S>(b);
}

template <class S>
bool commutes(const Quaternion<S>& a, const Quaternion<S>& b) {
    return equal(a * b, b * a);
}

/// b lies in the real span of 1 and a (a imaginary, nonzero).
template <class S>
bool in_subfield(const Quaternion<S>& b, const ImaginaryDirection<S>& a) {
    const Quaternion<S>& u = a.value();
    return is_zero(S(b.y * u.z - b.z * u.y)) && is_zero(S(b.z * u.x - b.x * u.z)) &&
           is_zero(S(b.x * u.y - b.y * u.x));
}

/// lambda != 0 with lambda * b * lambda^-1 == a.
template <class S>
Quaternion<S> similarity_witness(const Quaternion<S>& a, const Quaternion<S>& b) {
    if (!is_similar(a, b)) throw DomainError("quaternions are not similar");
    if (equal(a, b)) return Quaternion<S>(S(1));
    const Quaternion<S> u = a.imag();
    const Quaternion<S> v = b.imag();
    // |u| == |v|, so a half turn about u + v carries v onto u.
    const Quaternion<S> axis = u + v;
    if (!is_zero(axis)) return axis;
    return orthogonal_imaginary(ImaginaryDirection<S>(u)).value();
}

/// Cayley transform (1 + u)(1 - u)^-1 of an imaginary u: an exact unit quaternion.
template <class S>
Quaternion<S> cayley_unit(const Quaternion<S>& u) {
    const Quaternion<S> one(S(1));
    return (one + u.imag()) * inverse(one - u.imag());
}

template <class S>
std::string to_string(const Quaternion<S>& a) {
    using T = ScalarTraits<S>;
    std::string out = T::str(a.re);
    const std::array<std::pair<const S*, char>, 3> parts{{{&a.x, 'i'}, {&a.y, 'j'}, {&a.z, 'k'}}};
    for (const auto& [coef, unit] : parts) {
        if (*coef < S(0)) {
            out += " - " + T::str(S(-*coef));
        } else {
            out += " + " + T::str(*coef);
        }
        out += ' ';
        out += unit;
    }
    return out;
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Quaternion<S>& a) {
    return os << to_string(a);
}

/// Parses the text form "a0 + a1 i + a2 j + a3 k"; terms may appear in any
/// order, be omitted, or carry an implicit coefficient ("-j").
template <class S>
Quaternion<S> parse_quaternion(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw DomainError("empty quaternion");
    Quaternion<S> q;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = pos + 1;
        while (end < s.size()) {
            const char c = s[end];
            const char prev = s[end - 1];
            if ((c == '+' || c == '-') && prev != 'e' && prev != 'E' && prev != '/') break;
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        pos = end;
        char unit = 'r';
        if (!term.empty() && (term.back() == 'i' || term.back() == 'j' || term.back() == 'k')) {
            unit = term.back();
            term.pop_back();
        }
        if (!term.empty() && term.back() == '*') term.pop_back();
        S coef;
        if (term.empty() || term == "+") {
            coef = S(1);
        } else if (term == "-") {
            coef = S(-1);
        } else {
            if (term.front() == '+') term.erase(term.begin());
            coef = ScalarTraits<S>::parse(term);
        }
        switch (unit) {
            case 'i': q.x += coef; break;
            case 'j': q.y += coef; break;
            case 'k': q.z += coef; break;
            default:
                if (term.empty()) throw DomainError("malformed quaternion '" + std::string(text) + "'");
                q.re += coef;
        }
    }
    return q;
}

}  // namespace qbisect
