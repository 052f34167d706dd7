#pragma once

#include <array>

#include "qbisect/quaternion.hpp"

namespace qbisect {

/// a, b, c, d >= 0 with a^2 + b^2 + c^2 + d^2 == n (Lagrange). Uses a
/// randomised reduction to a prime p = 1 (mod 4) and Cornacchia's algorithm;
/// the internal generator is seeded from n, so the result is deterministic.
std::array<mpz_class, 4> four_squares(const mpz_class& n);

/// Two-square decomposition of a prime p = 1 (mod 4) or p = 2.
std::array<mpz_class, 2> two_squares_prime(const mpz_class& p);

/// A quaternion lambda with |lambda|^2 == r for a positive rational r.
/// Returns a real lambda whenever r is a rational square.
Quaternion<Exact> quaternion_with_norm(const Exact& r);

/// Float counterpart: the real square root.
inline Quaternion<Float> quaternion_with_norm(Float r) {
    if (!(r > 0)) throw DomainError("quaternion norm must be positive");
    return Quaternion<Float>(std::sqrt(r));
}

}  // namespace qbisect
