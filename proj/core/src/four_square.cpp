#include "qbisect/four_square.hpp"

#include "qbisect/rng.hpp"

namespace qbisect {

namespace {

mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::uint64_t seed_of(const mpz_class& n) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : n.get_str(16)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

mpz_class random_below(SplitMix64& rng, const mpz_class& bound) {
    if (bound <= 1) return 0;
    mpz_class r = 0;
    const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
    for (std::size_t w = 0; w < words; ++w) {
        r <<= 64;
        r += mpz_class(static_cast<unsigned long>(rng.next()));
    }
    return r % bound;
}

bool is_probable_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Sum of two squares for rem in {0, 1, 2}, a perfect square, or a prime = 1 (mod 4).
std::optional<std::array<mpz_class, 2>> easy_two_squares(const mpz_class& rem) {
    if (rem < 0) return std::nullopt;
    if (is_perfect_square(rem)) return std::array<mpz_class, 2>{isqrt(rem), mpz_class(0)};
    if (rem == 2) return std::array<mpz_class, 2>{mpz_class(1), mpz_class(1)};
    if (mpz_class(rem % 4) == 1 && is_probable_prime(rem)) return two_squares_prime(rem);
    return std::nullopt;
}

}  // namespace

std::array<mpz_class, 2> two_squares_prime(const mpz_class& p) {
    if (p == 2) return {mpz_class(1), mpz_class(1)};
    if (mpz_class(p % 4) != 1) throw DomainError("prime is not 1 mod 4");
    SplitMix64 rng(seed_of(p));
    const mpz_class e = (p - 1) / 4;
    mpz_class x;
    for (;;) {
        mpz_class c = random_below(rng, p - 2) + 2;
        mpz_powm(x.get_mpz_t(), c.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (mpz_class((x * x + 1) % p) == 0) break;
    }
    // Euclid on (p, x) until the remainder drops below sqrt(p).
    mpz_class r0 = p, r1 = x;
    while (r1 * r1 > p) {
        mpz_class t = r0 % r1;
        r0 = r1;
        r1 = t;
    }
    mpz_class b2 = p - r1 * r1;
    if (!is_perfect_square(b2)) throw DomainError("Cornacchia failed; input is not a prime");
    return {r1, isqrt(b2)};
}

std::array<mpz_class, 4> four_squares(const mpz_class& n) {
    if (n < 0) throw DomainError("four_squares of a negative integer");
    if (n == 0) return {mpz_class(0), mpz_class(0), mpz_class(0), mpz_class(0)};
    mpz_class m = n;
    mpz_class scale = 1;
    while (mpz_class(m % 4) == 0) {
        m /= 4;
        scale *= 2;
    }
    if (auto two = easy_two_squares(m)) {
        return {(*two)[0] * scale, (*two)[1] * scale, mpz_class(0), mpz_class(0)};
    }
    SplitMix64 rng(seed_of(m));
    const mpz_class root = isqrt(m);
    for (;;) {
        mpz_class a = random_below(rng, root + 1);
        mpz_class b = random_below(rng, root + 1);
        mpz_class rem = m - a * a - b * b;
        if (rem < 0) continue;
        if (auto two = easy_two_squares(rem)) {
            return {a * scale, b * scale, (*two)[0] * scale, (*two)[1] * scale};
        }
    }
}

Quaternion<Exact> quaternion_with_norm(const Exact& r) {
    if (sgn(r) <= 0) throw DomainError("quaternion norm must be positive");
    if (auto root = exact_sqrt(r)) return Quaternion<Exact>(*root);
    const mpz_class& den = r.get_den();
    const auto s = four_squares(mpz_class(r.get_num() * den));
    Quaternion<Exact> q{Exact(s[0]), Exact(s[1]), Exact(s[2]), Exact(s[3])};
    q /= Exact(den);
    return q;
}

}  // namespace qbisect
