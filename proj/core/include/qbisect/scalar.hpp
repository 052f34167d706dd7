#pragma once

// Scalar backends. `Exact` is an arbitrary precision rational (GMP), `Float`
// is a binary64 double compared with the global relative tolerance.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "qbisect/errors.hpp"

namespace qbisect {

using Exact = mpq_class;
using Float = double;

/// Global relative tolerance used by every float comparison.
/// |x - y| <= tau * max(1, |x|, |y|).
double tolerance() noexcept;
void set_tolerance(double tau);

constexpr double kDefaultTolerance = 1e-9;

/// Parses "p/q", "-p", or a finite decimal ("0.125", "-3e-2") exactly.
Exact parse_exact(std::string_view text);
double parse_float(std::string_view text);

std::string format_exact(const Exact& value);
/// Round-trip decimal representation ("%.17g").
std::string format_float(double value);

bool is_perfect_square(const mpz_class& value);
std::optional<Exact> exact_sqrt(const Exact& value);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Exact> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";

    static bool is_zero(const Exact& a) { return sgn(a) == 0; }
    static bool eq(const Exact& a, const Exact& b) { return a == b; }
    static int sign(const Exact& a) { return sgn(a); }
    static Exact abs(const Exact& a) { return ::abs(a); }
    static double to_double(const Exact& a) { return a.get_d(); }
    static Exact from_double(double d) { return Exact(d); }
    static Exact parse(std::string_view s) { return parse_exact(s); }
    static std::string str(const Exact& a) { return format_exact(a); }
    static std::optional<Exact> sqrt(const Exact& a) { return exact_sqrt(a); }
    /// Magnitude used for pivot selection; exact elimination only needs nonzero.
    static double magnitude(const Exact& a) { return std::fabs(a.get_d()); }
};

template <>
struct ScalarTraits<Float> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";

    static bool is_zero(double a) { return std::fabs(a) <= tolerance(); }
    static bool eq(double a, double b) {
        const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return std::fabs(a - b) <= tolerance() * scale;
    }
    static int sign(double a) {
        if (is_zero(a)) return 0;
        return a > 0 ? 1 : -1;
    }
    static double abs(double a) { return std::fabs(a); }
    static double to_double(double a) { return a; }
    static double from_double(double d) { return d; }
    static double parse(std::string_view s) { return parse_float(s); }
    static std::string str(double a) { return format_float(a); }
    static std::optional<double> sqrt(double a) {
        if (a < 0) return std::nullopt;
        return std::sqrt(a);
    }
    static double magnitude(double a) { return std::fabs(a); }
};

template <class S>
bool is_zero(const S& a) {
    return ScalarTraits<S>::is_zero(a);
}

template <class S>
bool scalar_eq(const S& a, const S& b) {
    return ScalarTraits<S>::eq(a, b);
}

template <class S>
int sign_of(const S& a) {
    return ScalarTraits<S>::sign(a);
}

/// Approximate log2 |a| for a != 0, finite even where a double would overflow.
inline double log2_magnitude(const Exact& a) {
    return static_cast<double>(mpz_sizeinbase(a.get_num_mpz_t(), 2)) -
           static_cast<double>(mpz_sizeinbase(a.get_den_mpz_t(), 2));
}
inline double log2_magnitude(double a) { return std::log2(std::fabs(a)); }

/// Relative residual |a - b| / max(1, |a|, |b|), reported by float suites.
template <class S>
double relative_residual(const S& a, const S& b) {
    const double x = ScalarTraits<S>::to_double(a);
    const double y = ScalarTraits<S>::to_double(b);
    const double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    return std::fabs(x - y) / scale;
}

}  // namespace qbisect
