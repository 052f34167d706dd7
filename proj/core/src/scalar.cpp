#include "qbisect/scalar.hpp"

#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace qbisect {

namespace {
std::atomic<double> g_tolerance{kDefaultTolerance};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class pow10(long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return r;
}

// Decimal with optional fraction and exponent, parsed without rounding.
Exact parse_decimal(std::string_view s, std::string_view original) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        bool exp_neg = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_neg = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw DomainError("malformed scalar '" + std::string(original) + "'");
        exponent = std::stol(std::string(exp_part));
        if (exp_neg) exponent = -exponent;
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
            (int_part.empty() && frac_part.empty()))
            throw DomainError("malformed scalar '" + std::string(original) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw DomainError("malformed scalar '" + std::string(original) + "'");
        digits = std::string(s);
    }
    mpz_class mantissa(digits, 10);
    Exact value;
    if (exponent >= 0) {
        value = Exact(mantissa * pow10(exponent));
    } else {
        value = Exact(mantissa, pow10(-exponent));
        value.canonicalize();
    }
    return negative ? Exact(-value) : value;
}
}  // namespace

double tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tolerance must be a positive finite number");
    g_tolerance.store(tau, std::memory_order_relaxed);
}

Exact parse_exact(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw DomainError("empty scalar");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = trim(s.substr(0, slash));
        std::string_view den = trim(s.substr(slash + 1));
        std::string_view num_digits = num;
        if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
            num_digits.remove_prefix(1);
        if (!all_digits(num_digits) || !all_digits(den))
            throw DomainError("malformed rational '" + std::string(text) + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
        mpz_class n(std::string(num_digits), 10);
        if (num.front() == '-') n = -n;
        Exact q(n, d);
        q.canonicalize();
        return q;
    }
    return parse_decimal(s, text);
}

double parse_float(std::string_view text) {
    std::string_view s = trim(text);
    if (s.find('/') != std::string_view::npos) return parse_exact(s).get_d();
    std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size())
        throw DomainError("malformed scalar '" + std::string(text) + "'");
    return v;
}

std::string format_exact(const Exact& value) { return value.get_str(10); }

std::string format_float(double value) {
    if (value == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

bool is_perfect_square(const mpz_class& value) {
    if (value < 0) return false;
    return mpz_perfect_square_p(value.get_mpz_t()) != 0;
}

std::optional<Exact> exact_sqrt(const Exact& value) {
    if (sgn(value) < 0) return std::nullopt;
    const mpz_class& num = value.get_num();
    const mpz_class& den = value.get_den();
    if (!is_perfect_square(num) || !is_perfect_square(den)) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Exact r(rn, rd);
    r.canonicalize();
    return r;
}

}  // namespace qbisect
