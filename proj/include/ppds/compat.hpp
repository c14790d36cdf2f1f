#pragma once

#include <numeric>
#include <optional>
#include <string>

#include "ppds/cyclic.hpp"

namespace ppds {

struct NoSolutionError : Error {
    using Error::Error;
};

/// Reference to one orbit of distinguished points: a cone-pair entry of a
/// data set, or its regular (free) part.
struct OrbitHandle {
    CyclicDataSet D;
    std::optional<std::size_t> pair;  // nullopt = regular orbit

    i64 size() const {
        if (!pair) return D.n;
        return D.n / D.pairs.at(*pair).ni;
    }

    /// First-return rotation number, as a fraction in [0, 1). The regular
    /// orbit carries the (0, 1) convention: rotation zero.
    Rational rotation() const {
        if (!pair) return Rational{0};
        const ConePair& cp = D.pairs.at(*pair);
        return Rational{mod_inv(cp.c, cp.ni), cp.ni};
    }
};

enum class TwistKind { TriviallyCompatible, Factor, None };

struct TwistFactor {
    TwistKind kind = TwistKind::None;
    i64 k = 0;  // meaningful only when kind == Factor; balanced in (-n/2, n/2]
    std::string note;
};

/// Twist factor of two point orbits glued along an annulus, at modulus n
/// (defaults to lcm of the two degrees). The orbits must have equal size.
/// Outcomes: trivially compatible (both regular of full common degree),
/// a nonzero balanced factor k with rot_1 + rot_2 = k/n (mod 1), or none
/// (the rotation sum vanishes, or admits no integral k at this modulus).
inline TwistFactor twist_factor(const OrbitHandle& o1, const OrbitHandle& o2,
                                std::optional<i64> modulus = std::nullopt) {
    if (o1.size() != o2.size())
        throw DomainError("twist_factor: orbit sizes " + std::to_string(o1.size()) + " and " +
                          std::to_string(o2.size()) + " differ");
    i64 n = modulus ? *modulus : checked_lcm(o1.D.n, o2.D.n);
    if (n < 1) throw DomainError("twist_factor: modulus must be positive");

    if (!o1.pair && !o2.pair && o1.D.n == n && o2.D.n == n)
        return {TwistKind::TriviallyCompatible, 0, "full-size regular orbits"};

    Rational sum = (o1.rotation() + o2.rotation()).frac();
    if (sum == Rational{0})
        return {TwistKind::None, 0, "rotation numbers cancel; no nonzero twist factor"};
    if (n % sum.den != 0)
        return {TwistKind::None, 0,
                "rotation sum " + sum.str() + " is not an integer multiple of 1/" +
                    std::to_string(n)};
    i64 k = mod_balanced(checked_mul(sum.num, n / sum.den), n);
    return {TwistKind::Factor, k, ""};
}

struct CrtCoeffs {
    i64 p1 = 0;
    i64 p2 = 0;
    i64 n = 0;  // lcm(n1, n2)
    std::string note;
};

/// Unit coefficients for a prescribed twist factor: find p1, p2 with
/// gcd(p1, n1) = gcd(p2, n2) = 1 and (n/n1) p1 + (n/n2) p2 = k (mod n),
/// n = lcm(n1, n2). Deterministic: smallest non-negative p1, then the
/// forced p2. Throws NoSolutionError with the failing hypothesis.
inline CrtCoeffs crt_twist_coeffs(i64 n1, i64 n2, i64 k) {
    if (n1 < 1 || n2 < 1) throw DomainError("crt_twist_coeffs: orders must be positive");
    i64 n = checked_lcm(n1, n2);
    i64 a1 = n / n1, a2 = n / n2;
    i64 kk = mod_norm(k, n);
    if (kk == 0)
        throw NoSolutionError("crt_twist_coeffs: k = 0 (mod " + std::to_string(n) +
                              ") is not a twist factor");
    i64 g = std::gcd(a1, a2);
    if (kk % g != 0)
        throw NoSolutionError("crt_twist_coeffs: gcd(n/n1, n/n2) = " + std::to_string(g) +
                              " does not divide k = " + std::to_string(kk));
    for (i64 p1 = 0; p1 < n1; ++p1) {
        if (std::gcd(p1, n1) != 1) continue;
        i64 rhs = mod_norm(kk - mod_norm(checked_mul(a1, p1), n), n);
        if (rhs % a2 != 0) continue;
        i64 p2 = mod_norm(rhs / a2, n2);
        if (std::gcd(p2, n2) != 1) continue;
        return {p1, p2, n,
                "hypothesis gcd(n/n1, n/n2) | k holds with gcd = " + std::to_string(g)};
    }
    throw NoSolutionError("crt_twist_coeffs: no unit pair exists for (" + std::to_string(n1) +
                          ", " + std::to_string(n2) + ", " + std::to_string(kk) + ")");
}

} // namespace ppds
