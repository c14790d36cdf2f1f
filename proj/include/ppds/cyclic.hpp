#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppds/arith.hpp"

namespace ppds {

/// One cone-point orbit of a cyclic action: residue c (a unit mod n_i) and
/// order n_i >= 2. The orbit has size n(D)/n_i and its first-return map
/// rotates the cone neighbourhood by 2*pi*c^{-1}/n_i.
struct ConePair {
    i64 c = 1;
    i64 ni = 2;

    friend auto operator<=>(const ConePair&, const ConePair&) = default;
};

/// Conjugacy class of a periodic mapping class, encoded as
/// (n, g0, r; (c_1,n_1), ..., (c_k,n_k)).
///
/// n = 1 is permitted only as the identity extension (1, g, 0; -), which
/// stands for the identity on a genus-g surface; validate_cyclic flags it
/// and enumerate_cyclic never emits it.
struct CyclicDataSet {
    i64 n = 1;
    i64 g0 = 0;
    i64 r = 0;
    std::vector<ConePair> pairs;

    bool is_identity() const { return n == 1; }
    bool is_free() const { return n >= 2 && pairs.empty(); }

    friend auto operator<=>(const CyclicDataSet&, const CyclicDataSet&) = default;
};

/// Pairs sorted by (n_i, c); residues are expected to already be reduced
/// representatives in [1, n_i).
inline CyclicDataSet canonical(CyclicDataSet d) {
    std::sort(d.pairs.begin(), d.pairs.end(),
              [](const ConePair& a, const ConePair& b) {
                  return a.ni != b.ni ? a.ni < b.ni : a.c < b.c;
              });
    return d;
}

struct Violation {
    std::string code;    // "structure", "i" .. "vi"
    std::string detail;
};

struct ValidationReport {
    bool valid = false;
    bool structural_ok = true;
    bool identity_extension = false;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    void fail(std::string code, std::string detail) {
        valid = false;
        violations.push_back({std::move(code), std::move(detail)});
    }
};

namespace detail {

inline i64 lcm_of_orders(const std::vector<ConePair>& pairs, std::size_t skip) {
    i64 l = 1;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        if (j == skip) continue;
        l = checked_lcm(l, pairs[j].ni);
    }
    return l;
}

/// 2g - 2 for the covering surface: n(2g0 - 2) + sum (n/n_i)(n_i - 1).
/// Throws only on overflow; integrality is the caller's concern since the
/// summands are integers by construction.
inline i64 euler_double(const CyclicDataSet& d) {
    i64 t = checked_mul(d.n, checked_sub(checked_mul(2, d.g0), 2));
    for (const auto& p : d.pairs)
        t = checked_add(t, checked_mul(d.n / p.ni, p.ni - 1));
    return t;
}

} // namespace detail

/// Checks the definition of a cyclic data set, reporting every violated
/// condition rather than the first. Structural defects (non-positive
/// orders, residues outside [1, n_i), r outside [0, n)) are reported with
/// code "structure" and preempt the numbered conditions they would break.
inline ValidationReport validate_cyclic(const CyclicDataSet& d) {
    ValidationReport rep;
    rep.valid = true;

    if (d.n < 1) {
        rep.structural_ok = false;
        rep.fail("structure", "degree must be >= 1, got " + std::to_string(d.n));
        return rep;
    }
    if (d.g0 < 0) {
        rep.structural_ok = false;
        rep.fail("structure", "orbit genus must be >= 0, got " + std::to_string(d.g0));
    }
    if (d.r < 0 || d.r >= d.n) {
        rep.structural_ok = false;
        rep.fail("structure", "rotation parameter " + std::to_string(d.r) +
                                  " outside [0, " + std::to_string(d.n) + ")");
    }
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        const auto& p = d.pairs[i];
        if (p.ni < 2) {
            rep.structural_ok = false;
            rep.fail("structure", "pair " + std::to_string(i + 1) + ": order " +
                                      std::to_string(p.ni) + " < 2");
        } else if (p.c < 1 || p.c >= p.ni) {
            rep.structural_ok = false;
            rep.fail("structure", "pair " + std::to_string(i + 1) + ": residue " +
                                      std::to_string(p.c) + " outside [1, " +
                                      std::to_string(p.ni) + ")");
        }
    }
    if (!rep.structural_ok) return rep;

    if (d.n == 1) {
        // Identity extension (1, g, 0; -): tolerated so multitwists can host
        // identity components, but it is not a degree >= 2 data set.
        rep.identity_extension = true;
        if (!d.pairs.empty())
            rep.fail("structure", "identity extension admits no cone pairs");
        if (d.r != 0)
            rep.fail("structure", "identity extension requires r = 0");
        rep.structural_ok = rep.valid;
        return rep;
    }

    // (i) r > 0 exactly when there are no cone pairs; a nonzero r is a unit.
    if (d.pairs.empty() && d.r == 0)
        rep.fail("i", "free data set requires r > 0");
    if (!d.pairs.empty() && d.r != 0)
        rep.fail("i", "r must be 0 in the presence of cone pairs");
    if (d.r > 0 && std::gcd(d.r, d.n) != 1)
        rep.fail("i", "gcd(r, n) = " + std::to_string(std::gcd(d.r, d.n)) + " != 1");

    // (ii) orders divide the degree and residues are units.
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        const auto& p = d.pairs[i];
        if (d.n % p.ni != 0)
            rep.fail("ii", "pair " + std::to_string(i + 1) + ": order " +
                               std::to_string(p.ni) + " does not divide " +
                               std::to_string(d.n));
        if (std::gcd(p.c, p.ni) != 1)
            rep.fail("ii", "pair " + std::to_string(i + 1) + ": residue " +
                               std::to_string(p.c) + " not a unit mod " +
                               std::to_string(p.ni));
    }
    // Conditions below assume divisibility; stop if (ii) already failed.
    if (!rep.valid) return rep;

    // (iii) dropping any one order leaves the lcm unchanged.
    i64 full = detail::lcm_of_orders(d.pairs, d.pairs.size());
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
        if (detail::lcm_of_orders(d.pairs, i) != full)
            rep.fail("iii", "lcm drops when omitting pair " + std::to_string(i + 1));
    }

    // (iv) genus-zero quotients force lcm = n.
    if (d.g0 == 0 && full != d.n)
        rep.fail("iv", "g0 = 0 requires lcm of orders " + std::to_string(full) +
                           " to equal " + std::to_string(d.n));

    // (v) sum of (n/n_i) c_i vanishes mod n.
    i64 s = 0;
    for (const auto& p : d.pairs) s = mod_norm(s + mod_norm(checked_mul(d.n / p.ni, p.c), d.n), d.n);
    if (s != 0)
        rep.fail("v", "sum of (n/n_i) c_i is " + std::to_string(s) + " mod " +
                          std::to_string(d.n));

    // (vi) Riemann-Hurwitz closes with an integer genus g >= 0.
    i64 t = detail::euler_double(d);
    if (t % 2 != 0 || t < -2)
        rep.fail("vi", "Riemann-Hurwitz gives 2g - 2 = " + std::to_string(t));

    return rep;
}

/// Genus of the surface the action lives on, from Riemann-Hurwitz.
inline i64 genus(const CyclicDataSet& d) {
    i64 t = detail::euler_double(d);
    if (t % 2 != 0 || t < -2)
        throw DomainError("genus: Riemann-Hurwitz does not close, 2g - 2 = " + std::to_string(t));
    return (t + 2) / 2;
}

enum class CyclicType { Rotational, Type1, Type2 };

inline const char* to_string(CyclicType t) {
    switch (t) {
        case CyclicType::Rotational: return "rotational";
        case CyclicType::Type1: return "type1";
        default: return "type2";
    }
}

/// Rotational: free, or the cone pairs split into matched pairs
/// (s, n), (n - s, n) with s a unit. Type 1: exactly three cone pairs, one
/// of full order. Type 2: everything else.
inline CyclicType classify(const CyclicDataSet& d) {
    if (d.n == 1) throw DomainError("classify: identity data set is not classifiable");
    if (d.r > 0) return CyclicType::Rotational;

    bool rotational = !d.pairs.empty();
    std::map<i64, i64> count;
    for (const auto& p : d.pairs) {
        if (p.ni != d.n) { rotational = false; break; }
        ++count[p.c];
    }
    if (rotational) {
        for (const auto& [c, cnt] : count) {
            i64 mate = mod_norm(d.n - c, d.n);
            if (mate == c) {
                if (cnt % 2 != 0) { rotational = false; break; }
            } else if (cnt != (count.count(mate) ? count.at(mate) : 0)) {
                rotational = false;
                break;
            }
        }
    }
    if (rotational) return CyclicType::Rotational;

    if (d.pairs.size() == 3 &&
        std::any_of(d.pairs.begin(), d.pairs.end(),
                    [&](const ConePair& p) { return p.ni == d.n; }))
        return CyclicType::Type1;
    return CyclicType::Type2;
}

/// First-return data of the m-th power, defined for every m >= 1; n | m
/// yields the identity extension. The public power() below rejects that
/// case instead, per its contract.
///
/// Splitting rule, from the stabilizer intersection <a^{n/n_i}> meet <a^m>
/// inside <a> = Z_n with d = gcd(n, m): a cone orbit of order n_i breaks
/// into gcd(n/n_i, d) orbits of order n_i * gcd(n/n_i, d) / d, and the
/// first-return rotation gets multiplied by m/d, so the new residue obeys
/// c'^{-1} = (m/d) c^{-1} (mod n_i').
inline CyclicDataSet power_any(const CyclicDataSet& d, i64 m) {
    if (m < 1) throw DomainError("power: exponent must be positive");
    if (d.n == 1) return d;

    i64 dd = std::gcd(d.n, m);
    i64 np = d.n / dd;
    i64 g = genus(d);

    if (np == 1) return CyclicDataSet{1, g, 0, {}};
    i64 step = mod_norm(m / dd, np);  // coprime to np by choice of dd

    if (d.pairs.empty()) {
        // Free rotation: the m-th power rotates by m*r/n = (m/d)*r / n'.
        i64 rp = mod_norm(checked_mul(d.r, step), np);
        return CyclicDataSet{np, d.g0, rp, {}};
    }

    std::vector<ConePair> out;
    for (const auto& p : d.pairs) {
        i64 size = d.n / p.ni;
        i64 t = std::gcd(size, dd);
        i64 nip = p.ni * t / dd;
        if (nip == 1) continue;  // orbit becomes regular
        i64 cinv = mod_inv(p.c, p.ni);
        i64 x = mod_norm(checked_mul(mod_norm(step, nip), mod_norm(cinv, nip)), nip);
        i64 cp = mod_inv(x, nip);
        for (i64 copy = 0; copy < t; ++copy) out.push_back({cp, nip});
    }

    if (out.empty()) {
        // Every cone orbit became regular; the power is a free rotation.
        // Its r parameter is not determined by the data set unless n' = 2.
        if (np == 2) {
            i64 num = 2 * g - 2;  // = 2(2 g0' - 2) for a free involution
            if (num % 4 != 0)
                throw DomainError("power: free involution quotient genus not integral");
            return CyclicDataSet{2, num / 4 + 1, 1, {}};
        }
        throw NotSupportedError(
            "power: all cone orbits become regular with degree " + std::to_string(np) +
            " > 2; the rotation parameter of the power is undetermined");
    }

    // Recover g0' by Riemann-Hurwitz: the covering genus is preserved.
    i64 branch = 0;
    for (const auto& p : out) branch = checked_add(branch, checked_mul(np / p.ni, p.ni - 1));
    i64 num = checked_sub(2 * g - 2, branch);
    if (num % (2 * np) != 0)
        throw DomainError("power: quotient genus not integral (internal)");
    i64 g0p = num / (2 * np) + 1;
    if (g0p < 0) throw DomainError("power: negative quotient genus (internal)");

    return canonical(CyclicDataSet{np, g0p, 0, std::move(out)});
}

/// Data set of the order n/gcd(n,m) action generated by the m-th power.
inline CyclicDataSet power(const CyclicDataSet& d, i64 m) {
    if (m < 1) throw DomainError("power: exponent must be positive");
    if (d.n >= 1 && m % d.n == 0)
        throw TrivialPowerError("power: degree " + std::to_string(d.n) +
                                " divides exponent " + std::to_string(m) +
                                "; the power is the identity");
    return power_any(d, m);
}

namespace detail {

/// Divisors of n that are >= lo, ascending.
inline std::vector<i64> divisors_from(i64 n, i64 lo) {
    std::vector<i64> out;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        if (d >= lo) out.push_back(d);
        if (n / d != d && n / d >= lo) out.push_back(n / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Enumerate residue tuples for a fixed multiset of orders, requiring the
/// residues within each equal-order block to be non-decreasing (canonical
/// form), and condition (v) to close. The final position is solved rather
/// than scanned.
inline void fill_residues(const CyclicDataSet& shell, std::size_t idx, i64 partial,
                          std::vector<ConePair>& acc, std::set<CyclicDataSet>& out) {
    const i64 n = shell.n;
    const auto& orders = shell.pairs;  // residues unset; orders meaningful
    if (idx + 1 == orders.size()) {
        i64 a = n / orders[idx].ni;
        i64 b = mod_norm(-partial, n);
        if (b % a != 0) return;
        i64 c = mod_norm(b / a, orders[idx].ni);
        if (c == 0 || std::gcd(c, orders[idx].ni) != 1) return;
        if (idx > 0 && orders[idx - 1].ni == orders[idx].ni && c < acc[idx - 1].c) return;
        acc.push_back({c, orders[idx].ni});
        CyclicDataSet d{n, shell.g0, 0, acc};
        if (validate_cyclic(d).valid) out.insert(canonical(d));
        acc.pop_back();
        return;
    }
    i64 ni = orders[idx].ni;
    i64 start = (idx > 0 && orders[idx - 1].ni == ni) ? acc[idx - 1].c : 1;
    for (i64 c = start; c < ni; ++c) {
        if (std::gcd(c, ni) != 1) continue;
        acc.push_back({c, ni});
        fill_residues(shell, idx + 1, mod_norm(partial + checked_mul(n / ni, c), n), acc, out);
        acc.pop_back();
    }
}

/// Enumerate order multisets n_1 <= ... <= n_k with total branch weight
/// sum (n/n_i)(n_i - 1) equal to budget, then hand off to residue search.
inline void fill_orders(i64 n, i64 g0, i64 budget, i64 lo, std::vector<ConePair>& orders,
                        std::set<CyclicDataSet>& out) {
    if (budget == 0) {
        if (orders.empty()) return;  // cone case only; free handled separately
        // (iii) and (iv) depend only on the orders; check before residues.
        CyclicDataSet shell{n, g0, 0, orders};
        i64 full = lcm_of_orders(shell.pairs, shell.pairs.size());
        if (g0 == 0 && full != n) return;
        for (std::size_t i = 0; i < shell.pairs.size(); ++i)
            if (lcm_of_orders(shell.pairs, i) != full) return;
        std::vector<ConePair> acc;
        fill_residues(shell, 0, 0, acc, out);
        return;
    }
    if (budget < 0) return;
    for (i64 ni : divisors_from(n, std::max<i64>(2, lo))) {
        i64 w = (n / ni) * (ni - 1);
        if (w > budget) continue;
        orders.push_back({0, ni});
        fill_orders(n, g0, budget - w, ni, orders, out);
        orders.pop_back();
    }
}

/// Core enumeration for any genus g >= 0 and degree n >= 1.
inline std::vector<CyclicDataSet> enumerate_cyclic_any(i64 g, i64 n) {
    if (g < 0 || n < 1) throw DomainError("enumerate: genus >= 0 and degree >= 1 required");
    if (n == 1) return {CyclicDataSet{1, g, 0, {}}};

    std::set<CyclicDataSet> out;

    // Free rotations: 2g - 2 = n(2g0 - 2) forces n | g - 1.
    if ((g - 1) % n == 0 && (g - 1) / n + 1 >= 0) {
        i64 g0 = (g - 1) / n + 1;
        for (i64 r = 1; r < n; ++r)
            if (std::gcd(r, n) == 1) out.insert(CyclicDataSet{n, g0, r, {}});
    }

    // Cone cases: iterate quotient genus while the branch budget can still
    // host at least one pair (every pair weighs at least n/2).
    for (i64 g0 = 0;; ++g0) {
        i64 budget = checked_sub(2 * g - 2, checked_mul(n, 2 * g0 - 2));
        if (budget < n / 2) break;
        std::vector<ConePair> orders;
        fill_orders(n, g0, budget, 2, orders, out);
    }

    return {out.begin(), out.end()};
}

} // namespace detail

/// All valid cyclic data sets of the given genus and degree, canonically
/// ordered. Complete by construction: quotient genus, order multisets and
/// residues are swept within the Riemann-Hurwitz budget.
inline std::vector<CyclicDataSet> enumerate_cyclic(i64 g, i64 n) {
    if (g < 2) throw DomainError("enumerate_cyclic: genus >= 2 required");
    if (n < 2) throw DomainError("enumerate_cyclic: degree >= 2 required");
    return detail::enumerate_cyclic_any(g, n);
}

/// Result of a root check that may have had to fall back to the signature
/// filter when power() cannot decide (see power_any on dead cone orbits).
struct RootCheck {
    bool ok = false;
    bool used_fallback = false;
    std::vector<std::string> warnings;

    explicit operator bool() const { return ok; }
};

namespace detail {

/// Order-membership filter for the quotient-signature conditions: every
/// cone order of the candidate root must be one of
///   n_j, mu, n_j * mu, or n * mu
/// with mu > 1 a divisor of m, and gcd(mu, n) = 1 in the first two starred
/// slots. Necessary but far from sufficient; used as a cross-check.
inline bool signature_filter(const CyclicDataSet& dg, const CyclicDataSet& df, i64 m) {
    std::set<i64> allowed;
    for (const auto& p : df.pairs) allowed.insert(p.ni);
    for (i64 mu : divisors_from(m, 2)) {
        if (std::gcd(mu, df.n) == 1) {
            allowed.insert(mu);
            for (const auto& p : df.pairs) allowed.insert(checked_mul(p.ni, mu));
        }
        allowed.insert(checked_mul(df.n, mu));
    }
    for (const auto& p : dg.pairs)
        if (!allowed.count(p.ni)) return false;
    return true;
}

} // namespace detail

/// Does D_G present a degree-m root of D_F? True when the degrees multiply
/// up exactly, n(D_G) = m n(D_F), and the m-th power data set of D_G is
/// D_F. The quotient-signature conditions are applied as a consistency
/// filter; disagreement is reported, not resolved.
inline RootCheck carries_root_periodic(const CyclicDataSet& dg, const CyclicDataSet& df, i64 m) {
    if (m <= 1) throw DomainError("carries_root_periodic: degree must exceed 1");
    if (genus(dg) != genus(df))
        throw DomainError("carries_root_periodic: genus mismatch " + std::to_string(genus(dg)) +
                          " vs " + std::to_string(genus(df)));

    RootCheck res;
    if (dg.n != checked_mul(m, df.n)) return res;

    bool filter_ok = detail::signature_filter(dg, df, m);
    try {
        res.ok = power_any(dg, m) == canonical(df);
    } catch (const NotSupportedError& e) {
        res.used_fallback = true;
        res.ok = filter_ok;
        res.warnings.push_back(std::string("power undetermined, signature filter only: ") +
                               e.what());
        return res;
    }
    if (res.ok && !filter_ok)
        res.warnings.push_back("signature filter disagrees with power computation");
    return res;
}

/// All canonical degree-(m n(D_F)) data sets whose m-th power is D_F.
/// With m omitted, every m with m n(D_F) within the order bound for the
/// genus is swept. Cone-bearing targets of genus >= 1 use the 4g + 2
/// bound; free or genus-0 targets admit arbitrarily large degrees, so an
/// explicit m is required there.
inline std::vector<CyclicDataSet> periodic_roots(const CyclicDataSet& df,
                                                 std::optional<i64> m = std::nullopt) {
    auto rep = validate_cyclic(df);
    if (!rep.valid) throw DomainError("periodic_roots: target invalid");
    i64 g = genus(df);

    std::vector<i64> degrees;
    if (m) {
        if (*m <= 1) throw DomainError("periodic_roots: degree must exceed 1");
        degrees.push_back(*m);
    } else {
        if (g < 1 || df.pairs.empty())
            throw DomainError("periodic_roots: unbounded degree for this target; pass m");
        i64 cap = 4 * g + 2;
        for (i64 mm = 2; checked_mul(mm, df.n) <= cap; ++mm) degrees.push_back(mm);
    }

    std::set<CyclicDataSet> out;
    for (i64 mm : degrees) {
        for (const auto& cand : detail::enumerate_cyclic_any(g, checked_mul(mm, df.n)))
            if (carries_root_periodic(cand, df, mm).ok) out.insert(cand);
    }
    return {out.begin(), out.end()};
}

} // namespace ppds
