#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ppds {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's documented domain.
struct DomainError : Error {
    using Error::Error;
};

/// Exact integer arithmetic left the representable range.
struct OverflowError : Error {
    using Error::Error;
};

/// Malformed textual or JSON input.
struct ParseError : Error {
    using Error::Error;
};

/// power(D, m) with the full period dividing m: the result is isotopic to
/// the identity and has no data set of the same kind.
struct TrivialPowerError : Error {
    using Error::Error;
};

/// The operation is defined but the requested instance falls outside the
/// implemented fragment; the message names the obstruction.
struct NotSupportedError : Error {
    using Error::Error;
};

/// A construction family has no member for the requested parameters.
struct NotParameterizedError : Error {
    using Error::Error;
};

using i64 = std::int64_t;

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

/// Least non-negative residue of a mod n. Requires n > 0.
inline i64 mod_norm(i64 a, i64 n) {
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

/// Balanced residue of a mod n, taken in (-n/2, n/2]. Requires n > 0.
inline i64 mod_balanced(i64 a, i64 n) {
    i64 r = mod_norm(a, n);
    return 2 * r > n ? r - n : r;
}

inline i64 checked_lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / std::gcd(a, b), b);
}

/// Extended gcd: returns g = gcd(a,b) and sets x,y with a*x + b*y = g.
inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Inverse of a mod n, in [1, n). Requires n > 1 and gcd(a, n) = 1.
inline i64 mod_inv(i64 a, i64 n) {
    i64 x, y;
    i64 g = egcd(mod_norm(a, n), n, x, y);
    if (g != 1) throw DomainError("mod_inv: argument not a unit mod " + std::to_string(n));
    return mod_norm(x, n);
}

/// Exact rational with i64 numerator/denominator, always reduced, den > 0.
/// Small helper for rotation numbers and Riemann-Hurwitz budgets; all
/// operations are overflow-checked.
struct Rational {
    i64 num = 0;
    i64 den = 1;

    Rational() = default;
    Rational(i64 n) : num(n), den(1) {}
    Rational(i64 n, i64 d) : num(n), den(d) {
        if (den == 0) throw DomainError("Rational: zero denominator");
        reduce();
    }

    void reduce() {
        if (den < 0) { num = checked_mul(num, -1); den = checked_mul(den, -1); }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        i64 g = std::gcd(a.den, b.den);
        i64 bd = b.den / g;
        return {checked_add(checked_mul(a.num, bd), checked_mul(b.num, a.den / g)),
                checked_mul(a.den, bd)};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + Rational{checked_mul(-1, b.num), b.den};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational x{a.num, b.den};
        Rational y{b.num, a.den};
        return {checked_mul(x.num, y.num), checked_mul(x.den, y.den)};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw DomainError("Rational: division by zero");
        return a * Rational{b.den, b.num};
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    bool is_integer() const { return den == 1; }

    /// Fractional part in [0, 1).
    Rational frac() const { return {mod_norm(num, den), den}; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace ppds
