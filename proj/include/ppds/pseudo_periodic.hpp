#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ppds/compat.hpp"
#include "ppds/cyclic.hpp"

namespace ppds {

/// The four annulus-orbit classes. First letter: does the orbit belong to
/// a minimal disconnecting union of orbits (D) or not (P/E bare forms).
/// Second: side-preserving vs side-exchanging.
///   DP = disconnecting, preserving   (bracket tuple)
///   DE = disconnecting, exchanging   (bracket tuple, starred)
///   P  = non-disconnecting, preserving
///   E  = non-disconnecting, exchanging (starred)
enum class AnnulusClass { DP, DE, P, E };

inline const char* to_string(AnnulusClass c) {
    switch (c) {
        case AnnulusClass::DP: return "DP";
        case AnnulusClass::DE: return "DE";
        case AnnulusClass::P: return "P";
        default: return "E";
    }
}

inline bool is_disconnecting(AnnulusClass c) {
    return c == AnnulusClass::DP || c == AnnulusClass::DE;
}
inline bool is_exchanging(AnnulusClass c) {
    return c == AnnulusClass::DE || c == AnnulusClass::E;
}

/// One orbit of annuli: size m, multitwist exponent q, twist factor k,
/// endpoint surface-orbit indices (0-based), class tag.
struct AnnulusOrbit {
    i64 m = 1;
    i64 q = 1;
    i64 k = 1;
    std::size_t i = 0;
    std::size_t j = 0;
    AnnulusClass cls = AnnulusClass::DP;

    friend auto operator<=>(const AnnulusOrbit&, const AnnulusOrbit&) = default;
};

struct SurfaceOrbit {
    CyclicDataSet D;
    i64 p = 1;

    friend auto operator<=>(const SurfaceOrbit&, const SurfaceOrbit&) = default;
};

/// One endpoint of an annulus orbit: a cone-pair entry of the component's
/// data set, or its regular (free) orbit.
using Endpoint = std::optional<std::size_t>;
inline constexpr std::nullopt_t Regular = std::nullopt;

/// Explicit endpoint assignment, one (side-i, side-j) pair per annulus
/// orbit. Exchanging classes use a single endpoint; the second slot then
/// repeats it (or is Regular-as-unused and gets normalized).
struct EndpointAssignment {
    std::vector<std::pair<Endpoint, Endpoint>> ends;

    friend auto operator<=>(const EndpointAssignment&, const EndpointAssignment&) = default;
};

struct PseudoPeriodicDataSet {
    i64 n = 1;
    std::vector<SurfaceOrbit> orbits;
    std::vector<AnnulusOrbit> annuli;
    std::optional<EndpointAssignment> assignment;

    friend auto operator<=>(const PseudoPeriodicDataSet&, const PseudoPeriodicDataSet&) = default;
};

struct PpValidationReport {
    bool valid = false;
    bool structural_ok = true;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    std::optional<EndpointAssignment> found_assignment;
    std::vector<i64> shift_witness;  // per annulus, the copy-shift used

    void fail(std::string code, std::string detail) {
        valid = false;
        violations.push_back({std::move(code), std::move(detail)});
    }
};

namespace detail {

/// n_r of condition (vii): p_i * lcm(n(D_i)/p_j, n(D_j)/p_i) with the lcm
/// of lowest-term fractions a/b, c/d taken as lcm(a, c)/gcd(b, d).
/// Returns nullopt when the result is not an integer.
inline std::optional<i64> annulus_modulus(i64 ni, i64 nj, i64 pi, i64 pj) {
    Rational x{ni, pj};
    Rational y{nj, pi};
    i64 num = checked_lcm(x.num, y.num);
    i64 den = std::gcd(x.den, y.den);
    Rational nr = Rational{pi, 1} * Rational{num, den};
    if (!nr.is_integer()) return std::nullopt;
    return nr.num;
}

/// Rotation number of an endpoint: c^{-1}/n_i for a cone entry, 0 for the
/// regular orbit (the (0, 1) convention).
inline Rational endpoint_rotation(const CyclicDataSet& d, Endpoint e) {
    if (!e) return Rational{0};
    const ConePair& p = d.pairs.at(*e);
    return Rational{mod_inv(p.c, p.ni), p.ni};
}

/// One admissible endpoint choice for an annulus orbit, with the entry
/// slots it would consume.
struct EndpointOption {
    Endpoint a;  // side i
    Endpoint b;  // side j (== a for exchanging classes)
    bool trivially_compatible = false;
    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (component, entry)
};

/// Endpoints on one side: cone entries of the required orbit size, plus
/// the regular orbit when its size matches.
///   size_needed: the orbit size the side must supply.
inline std::vector<Endpoint> side_options(const CyclicDataSet& d, i64 size_needed) {
    std::vector<Endpoint> out;
    for (std::size_t e = 0; e < d.pairs.size(); ++e)
        if (d.n / d.pairs[e].ni == size_needed) out.push_back(e);
    if (d.n == size_needed) out.push_back(Regular);
    return out;
}

} // namespace detail

/// Minimal |q_r| over the annulus orbits.
inline i64 q_of(const PseudoPeriodicDataSet& pp) {
    if (pp.annuli.empty()) throw DomainError("q_of: no annulus orbits");
    i64 q = 0;
    for (const auto& a : pp.annuli) {
        i64 aq = a.q < 0 ? -a.q : a.q;
        if (q == 0 || aq < q) q = aq;
    }
    return q;
}

/// Genus of the represented surface: 2 - 2g = sum p_i (2 - 2 g(D_i)) - 2
/// sum m_r. Boundary counts b_i = (sum of incident m_r) / p_i must be
/// integers; DomainError otherwise.
inline i64 total_genus(const PseudoPeriodicDataSet& pp) {
    std::vector<i64> incid(pp.orbits.size(), 0);
    for (const auto& a : pp.annuli) {
        incid.at(a.i) = checked_add(incid.at(a.i), a.m);
        incid.at(a.j) = checked_add(incid.at(a.j), a.m);
    }
    i64 chi = 0;
    for (std::size_t i = 0; i < pp.orbits.size(); ++i) {
        if (incid[i] % pp.orbits[i].p != 0)
            throw DomainError("total_genus: boundary count of component " +
                              std::to_string(i + 1) + " not divisible by multiplicity");
        chi = checked_add(chi, checked_mul(pp.orbits[i].p,
                                           checked_sub(2, 2 * genus(pp.orbits[i].D))));
    }
    for (const auto& a : pp.annuli) chi = checked_sub(chi, 2 * a.m);
    if (chi % 2 != 0) throw DomainError("total_genus: odd Euler characteristic");
    return (2 - chi) / 2;
}

namespace detail {

/// Copy graph: one vertex per (component, copy-index); the annulus orbits
/// contribute edges whose pattern depends on the class and, for the
/// matched case p_i = m_r = p_j > 1, on a free cyclic shift the data set
/// does not record. Edges are tagged by their annulus orbit.
struct CopyGraph {
    std::size_t nverts = 0;
    std::vector<std::size_t> vert_base;                      // per component
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // vertex pairs
    std::vector<std::size_t> edge_orbit;                     // annulus index

    bool connected_without(const std::vector<bool>& drop_orbit) const {
        if (nverts == 0) return false;
        std::vector<std::size_t> parent(nverts);
        for (std::size_t v = 0; v < nverts; ++v) parent[v] = v;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        std::size_t comps = nverts;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!drop_orbit.empty() && drop_orbit[edge_orbit[e]]) continue;
            auto a = find(edges[e].first), b = find(edges[e].second);
            if (a != b) { parent[a] = b; --comps; }
        }
        return comps == 1;
    }

    bool connected() const { return connected_without({}); }

    /// Is the single edge e a bridge of the full graph?
    bool is_bridge(std::size_t eidx) const {
        std::vector<std::size_t> parent(nverts);
        for (std::size_t v = 0; v < nverts; ++v) parent[v] = v;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        std::size_t comps = nverts;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (e == eidx) continue;
            auto a = find(edges[e].first), b = find(edges[e].second);
            if (a != b) { parent[a] = b; --comps; }
        }
        return comps > 1;
    }
};

/// Build the copy graph for a given shift vector (entries used only for
/// matched-case annuli; others ignored).
inline CopyGraph build_copy_graph(const PseudoPeriodicDataSet& pp,
                                  const std::vector<i64>& shifts) {
    CopyGraph g;
    g.vert_base.resize(pp.orbits.size());
    for (std::size_t i = 0; i < pp.orbits.size(); ++i) {
        g.vert_base[i] = g.nverts;
        g.nverts += static_cast<std::size_t>(pp.orbits[i].p);
    }
    auto vert = [&](std::size_t comp, i64 copy) {
        return g.vert_base[comp] + static_cast<std::size_t>(copy);
    };
    for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
        const auto& a = pp.annuli[r];
        i64 pi = pp.orbits[a.i].p, pj = pp.orbits[a.j].p;
        auto add = [&](std::size_t u, std::size_t v) {
            g.edges.push_back({u, v});
            g.edge_orbit.push_back(r);
        };
        if (a.cls == AnnulusClass::DE) {
            add(vert(a.i, 0), vert(a.i, 1));
        } else if (a.cls == AnnulusClass::E) {
            add(vert(a.i, 0), vert(a.i, 0));
        } else if (pi == 1 && pj == 1) {
            for (i64 t = 0; t < a.m; ++t) add(vert(a.i, 0), vert(a.j, 0));
        } else if (pi == 1) {
            for (i64 t = 0; t < pj; ++t) add(vert(a.i, 0), vert(a.j, t));
        } else {
            i64 s = shifts.at(r);
            for (i64 t = 0; t < pi; ++t) add(vert(a.i, t), vert(a.j, (t + s) % pj));
        }
    }
    return g;
}

/// Shift choices per annulus: only the matched case p_i = m_r = p_j > 1
/// has freedom; everything else is pinned to 0.
inline std::vector<i64> shift_range(const PseudoPeriodicDataSet& pp, std::size_t r) {
    const auto& a = pp.annuli[r];
    if (is_exchanging(a.cls)) return {0};
    i64 pi = pp.orbits[a.i].p, pj = pp.orbits[a.j].p;
    if (pi > 1 && pj > 1) {
        std::vector<i64> out;
        for (i64 s = 0; s < pj; ++s) out.push_back(s);
        return out;
    }
    return {0};
}

/// Which annulus orbits lie in some minimal disconnecting union of
/// orbits, for a fixed copy graph. Subset sweep; orbit counts are tiny.
inline std::vector<bool> disconnecting_orbits(const PseudoPeriodicDataSet& pp,
                                              const CopyGraph& g) {
    std::size_t l = pp.annuli.size();
    std::vector<bool> disc(1u << l, false);
    for (std::size_t mask = 1; mask < (1u << l); ++mask) {
        std::vector<bool> drop(l, false);
        for (std::size_t r = 0; r < l; ++r)
            if (mask & (1u << r)) drop[r] = true;
        disc[mask] = !g.connected_without(drop);
    }
    std::vector<bool> tagged(l, false);
    for (std::size_t mask = 1; mask < (1u << l); ++mask) {
        if (!disc[mask]) continue;
        bool minimal = true;
        for (std::size_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask)
            if (disc[sub]) { minimal = false; break; }
        if (!minimal) continue;
        for (std::size_t r = 0; r < l; ++r)
            if (mask & (1u << r)) tagged[r] = true;
    }
    return tagged;
}

/// Enumerate admissible endpoint options for one annulus orbit, assuming
/// endpoints already ordered with p_i <= p_j. Returns nullopt when the
/// branch preconditions of the class fail outright (the caller reports
/// the condition); otherwise the (possibly empty) option list.
inline std::optional<std::vector<EndpointOption>> annulus_options(
    const PseudoPeriodicDataSet& pp, std::size_t r, i64 nr, std::string* why) {
    const auto& a = pp.annuli[r];
    const CyclicDataSet& Di = pp.orbits[a.i].D;
    const CyclicDataSet& Dj = pp.orbits[a.j].D;
    i64 pi = pp.orbits[a.i].p, pj = pp.orbits[a.j].p;

    auto congruent = [&](const Rational& rotsum) {
        return (rotsum - Rational{a.k, nr}).frac() == Rational{0};
    };

    std::vector<EndpointOption> out;

    if (a.cls == AnnulusClass::E) {
        if (pi != 1 || a.m != 1 || a.i != a.j) {
            if (why) *why = "exchanging non-disconnecting orbit requires p = 1, m = 1, i = j";
            return std::nullopt;
        }
        if (Di.n % 2 != 0) {
            if (why) *why = "side exchange needs an even-degree component";
            return std::nullopt;
        }
        for (Endpoint e : side_options(Di, 2)) {
            // The two boundary circles form one size-2 orbit; its two
            // square-fixed points each rotate by c^{-1}/(n/2).
            Rational sum = Rational{2} * endpoint_rotation(Di, e);
            if (!congruent(sum)) continue;
            EndpointOption opt{e, e, false, {}};
            if (e) opt.slots.push_back({a.i, *e});
            out.push_back(std::move(opt));
        }
        return out;
    }

    if (a.cls == AnnulusClass::DE) {
        if (pi != 2 || a.m != 1 || a.i != a.j) {
            if (why) *why = "exchanging disconnecting orbit requires p = 2, m = 1, i = j";
            return std::nullopt;
        }
        if (Di.n < 2) {
            if (why) *why = "side exchange needs a nontrivial component";
            return std::nullopt;
        }
        for (Endpoint e : side_options(Di, 1)) {
            Rational sum = Rational{2} * endpoint_rotation(Di, e);
            if (!congruent(sum)) continue;
            EndpointOption opt{e, e, false, {}};
            if (e) opt.slots.push_back({a.i, *e});
            out.push_back(std::move(opt));
        }
        return out;
    }

    // Side-preserving classes: branch on the multiplicities.
    i64 size_i, size_j;
    if (pi == 1 && pj == 1) {
        size_i = size_j = a.m;
        if (a.m == Di.n && a.m == Dj.n) {
            // Trivially compatible: both sides ride regular orbits and no
            // congruence is imposed.
            out.push_back({Regular, Regular, true, {}});
            return out;
        }
    } else if (pi == 1) {
        if (a.m != pj) {
            if (why) *why = "orbit size " + std::to_string(a.m) +
                            " must equal the larger multiplicity " + std::to_string(pj);
            return std::nullopt;
        }
        size_i = a.m;
        size_j = 1;
    } else {
        if (pi != a.m || pj != a.m) {
            if (why) *why = "multiplicities " + std::to_string(pi) + ", " +
                            std::to_string(pj) + " must both equal the orbit size " +
                            std::to_string(a.m);
            return std::nullopt;
        }
        size_i = size_j = 1;
    }

    for (Endpoint ea : side_options(Di, size_i)) {
        for (Endpoint eb : side_options(Dj, size_j)) {
            if (a.i == a.j && ea && eb && *ea == *eb) continue;  // distinct entries
            Rational sum = endpoint_rotation(Di, ea) + endpoint_rotation(Dj, eb);
            if (!congruent(sum)) continue;
            EndpointOption opt{ea, eb, false, {}};
            if (ea) opt.slots.push_back({a.i, *ea});
            if (eb) opt.slots.push_back({a.j, *eb});
            out.push_back(std::move(opt));
        }
    }
    return out;
}

/// Backtracking injective selection: each cone-pair entry may serve at
/// most one annulus orbit; regular orbits are unconstrained.
inline bool assign_endpoints(const std::vector<std::vector<EndpointOption>>& options,
                             std::size_t r, std::set<std::pair<std::size_t, std::size_t>>& used,
                             std::vector<EndpointOption>& chosen) {
    if (r == options.size()) return true;
    for (const auto& opt : options[r]) {
        bool clash = false;
        for (const auto& s : opt.slots)
            if (used.count(s)) { clash = true; break; }
        if (clash) continue;
        for (const auto& s : opt.slots) used.insert(s);
        chosen.push_back(opt);
        if (assign_endpoints(options, r + 1, used, chosen)) return true;
        chosen.pop_back();
        for (const auto& s : opt.slots) used.erase(s);
    }
    return false;
}

inline const char* condition_code(AnnulusClass c) {
    switch (c) {
        case AnnulusClass::E: return "v";
        case AnnulusClass::DE: return "vi";
        default: return "iv";
    }
}

} // namespace detail

/// Endpoint order convention: p_{i_r} <= p_{j_r}, ties broken by index.
/// Side-preserving annuli are symmetric in their endpoints, so this is a
/// relabeling, not a semantic change.
inline PseudoPeriodicDataSet normalize_endpoint_order(PseudoPeriodicDataSet pp) {
    for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
        auto& a = pp.annuli[r];
        if (a.i >= pp.orbits.size() || a.j >= pp.orbits.size()) continue;
        i64 pi = pp.orbits[a.i].p, pj = pp.orbits[a.j].p;
        if (pi > pj || (pi == pj && a.i > a.j)) {
            std::swap(a.i, a.j);
            if (pp.assignment && r < pp.assignment->ends.size())
                std::swap(pp.assignment->ends[r].first, pp.assignment->ends[r].second);
        }
    }
    return pp;
}

/// Full validation of a pseudo-periodic data set: component validity,
/// the exponent and twist-factor conditions, the per-class compatibility
/// demands with an injective endpoint assignment (searched when absent,
/// checked when given), the class tags against the copy graph, copy-graph
/// connectedness, and genus bookkeeping.
inline PpValidationReport validate_pp(const PseudoPeriodicDataSet& input) {
    PpValidationReport rep;
    rep.valid = true;

    // Structural layer.
    if (input.n < 1) {
        rep.structural_ok = false;
        rep.fail("structure", "degree must be positive");
    }
    if (input.orbits.empty()) {
        rep.structural_ok = false;
        rep.fail("structure", "at least one surface orbit required");
    }
    if (input.annuli.empty()) {
        rep.structural_ok = false;
        rep.fail("structure", "at least one annulus orbit required");
    }
    for (std::size_t i = 0; i < input.orbits.size(); ++i)
        if (input.orbits[i].p < 1) {
            rep.structural_ok = false;
            rep.fail("structure", "multiplicity of component " + std::to_string(i + 1) +
                                      " must be positive");
        }
    for (std::size_t r = 0; r < input.annuli.size(); ++r) {
        const auto& a = input.annuli[r];
        if (a.i >= input.orbits.size() || a.j >= input.orbits.size()) {
            rep.structural_ok = false;
            rep.fail("structure", "annulus " + std::to_string(r + 1) +
                                      ": endpoint index out of range");
        }
        if (a.m < 1) {
            rep.structural_ok = false;
            rep.fail("structure", "annulus " + std::to_string(r + 1) + ": size must be positive");
        }
        if (a.q == 0 || a.k == 0) {
            rep.structural_ok = false;
            rep.fail("structure", "annulus " + std::to_string(r + 1) +
                                      ": exponent and twist factor must be nonzero");
        }
    }
    if (input.assignment && input.assignment->ends.size() != input.annuli.size()) {
        rep.structural_ok = false;
        rep.fail("structure", "assignment length differs from the annulus count");
    }
    {
        // Every invariant piece is bounded by annuli, so b_i >= 1.
        std::vector<bool> touched(input.orbits.size(), false);
        for (const auto& a : input.annuli) {
            if (a.i < touched.size()) touched[a.i] = true;
            if (a.j < touched.size()) touched[a.j] = true;
        }
        for (std::size_t i = 0; i < touched.size(); ++i)
            if (!touched[i]) {
                rep.structural_ok = false;
                rep.fail("structure", "component " + std::to_string(i + 1) +
                                          " meets no annulus orbit");
            }
    }
    if (!rep.structural_ok) return rep;

    PseudoPeriodicDataSet pp = normalize_endpoint_order(input);

    // (i) components are cyclic data sets (identity extension allowed).
    for (std::size_t i = 0; i < pp.orbits.size(); ++i) {
        auto crep = validate_cyclic(pp.orbits[i].D);
        if (!crep.valid)
            rep.fail("i", "component " + std::to_string(i + 1) + " invalid: " +
                              (crep.violations.empty() ? std::string("unknown")
                                                       : crep.violations.front().detail));
    }
    if (!rep.valid) return rep;

    // (ii) sign matching, divisibility, exponent bound.
    for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
        const auto& a = pp.annuli[r];
        if ((a.k > 0) != (a.q > 0))
            rep.fail("ii", "annulus " + std::to_string(r + 1) + ": sign of k differs from q");
        if (a.q % a.k != 0)
            rep.fail("ii", "annulus " + std::to_string(r + 1) + ": k does not divide q");
        i64 aq = a.q < 0 ? -a.q : a.q;
        if (pp.n >= 2 && 2 * aq > pp.n)
            rep.fail("ii", "annulus " + std::to_string(r + 1) + ": |q| = " + std::to_string(aq) +
                               " exceeds n/2");
    }
    if (pp.n == 1)
        rep.warnings.push_back("degree 1: the |q| <= n/2 and |k| <= n_r/2 bounds are vacuous "
                               "and not enforced");

    // (iii) non-disconnecting side-preserving orbits stay on one component.
    for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
        const auto& a = pp.annuli[r];
        if (a.cls == AnnulusClass::P && a.i != a.j)
            rep.fail("iii", "annulus " + std::to_string(r + 1) +
                                ": non-disconnecting orbit must have i = j");
    }

    // (vii) the modulus equation p_j n_r q_r = n k_r, with |k| <= n_r/2.
    std::vector<i64> moduli(pp.annuli.size(), 0);
    for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
        const auto& a = pp.annuli[r];
        auto nr = detail::annulus_modulus(pp.orbits[a.i].D.n, pp.orbits[a.j].D.n,
                                          pp.orbits[a.i].p, pp.orbits[a.j].p);
        if (!nr) {
            rep.fail("vii", "annulus " + std::to_string(r + 1) + ": n_r is not an integer");
            continue;
        }
        moduli[r] = *nr;
        if (checked_mul(checked_mul(pp.orbits[a.j].p, *nr), a.q) != checked_mul(pp.n, a.k))
            rep.fail("vii", "annulus " + std::to_string(r + 1) + ": p_j n_r = " +
                                std::to_string(pp.orbits[a.j].p * *nr) + " but n k/q = " +
                                Rational{checked_mul(pp.n, a.k), a.q}.str());
        i64 ak = a.k < 0 ? -a.k : a.k;
        if (pp.n >= 2 && 2 * ak > *nr)
            rep.fail("vii", "annulus " + std::to_string(r + 1) + ": |k| = " + std::to_string(ak) +
                                " exceeds n_r/2 = " + Rational{*nr, 2}.str());
    }
    if (!rep.valid) return rep;

    // (iv)-(vi) per-class demands, then an injective endpoint assignment.
    bool has_c_case = false;
    std::vector<std::vector<detail::EndpointOption>> options(pp.annuli.size());
    for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
        const auto& a = pp.annuli[r];
        if (!is_exchanging(a.cls) && pp.orbits[a.i].p > 1) has_c_case = true;
        std::string why;
        auto opts = detail::annulus_options(pp, r, moduli[r], &why);
        if (!opts) {
            rep.fail(detail::condition_code(a.cls),
                     "annulus " + std::to_string(r + 1) + ": " + why);
            continue;
        }
        if (opts->empty()) {
            rep.fail(detail::condition_code(a.cls),
                     "annulus " + std::to_string(r + 1) +
                         ": no compatible endpoint pair for twist factor " + std::to_string(a.k));
            continue;
        }
        options[r] = std::move(*opts);
    }
    if (has_c_case)
        rep.warnings.push_back("matched-multiplicity branch read as p_i = m_r = p_j");
    if (!rep.valid) return rep;

    if (pp.assignment) {
        // Check the given assignment rather than searching.
        std::set<std::pair<std::size_t, std::size_t>> used;
        for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
            auto given = pp.assignment->ends[r];
            if (is_exchanging(pp.annuli[r].cls) && !given.second) given.second = given.first;
            bool found = false;
            for (const auto& opt : options[r]) {
                if (opt.a != given.first || opt.b != given.second) continue;
                bool clash = false;
                for (const auto& s : opt.slots)
                    if (used.count(s)) { clash = true; break; }
                if (clash) continue;
                for (const auto& s : opt.slots) used.insert(s);
                found = true;
                break;
            }
            if (!found)
                rep.fail(detail::condition_code(pp.annuli[r].cls),
                         "annulus " + std::to_string(r + 1) +
                             ": supplied endpoints are not admissible or reuse an entry");
        }
        if (rep.valid) rep.found_assignment = pp.assignment;
    } else {
        std::set<std::pair<std::size_t, std::size_t>> used;
        std::vector<detail::EndpointOption> chosen;
        if (detail::assign_endpoints(options, 0, used, chosen)) {
            EndpointAssignment found;
            for (const auto& opt : chosen) found.ends.push_back({opt.a, opt.b});
            rep.found_assignment = std::move(found);
        } else {
            rep.fail("iv", "no injective endpoint assignment exists");
        }
    }
    if (!rep.valid) return rep;

    // Class tags and connectedness, over the unrecorded copy shifts.
    std::vector<std::vector<i64>> ranges;
    for (std::size_t r = 0; r < pp.annuli.size(); ++r)
        ranges.push_back(detail::shift_range(pp, r));
    std::vector<i64> shifts(pp.annuli.size(), 0);
    bool any_connected = false;
    bool tags_ok = false;
    std::string tag_detail;
    std::function<void(std::size_t)> sweep = [&](std::size_t r) {
        if (tags_ok) return;
        if (r == shifts.size()) {
            auto graph = detail::build_copy_graph(pp, shifts);
            if (!graph.connected()) return;
            any_connected = true;
            auto disc = detail::disconnecting_orbits(pp, graph);
            for (std::size_t t = 0; t < pp.annuli.size(); ++t) {
                if (disc[t] != is_disconnecting(pp.annuli[t].cls)) {
                    tag_detail = "annulus " + std::to_string(t + 1) + " is " +
                                 (disc[t] ? "" : "not ") +
                                 "part of a minimal disconnecting union, contradicting class " +
                                 to_string(pp.annuli[t].cls);
                    return;
                }
            }
            tags_ok = true;
            rep.shift_witness = shifts;
            return;
        }
        for (i64 s : ranges[r]) {
            shifts[r] = s;
            sweep(r + 1);
            if (tags_ok) return;
        }
    };
    sweep(0);
    if (!any_connected)
        rep.fail("connectivity", "no copy-shift choice makes the configuration graph connected");
    else if (!tags_ok)
        rep.fail("class", tag_detail);
    if (!rep.valid) return rep;

    // Genus bookkeeping: integral boundary counts and genus at least 2.
    try {
        i64 g = total_genus(pp);
        if (g < 2) rep.fail("genus", "total genus " + std::to_string(g) + " below 2");
    } catch (const DomainError& e) {
        rep.fail("genus", e.what());
    }

    return rep;
}

/// Canonical form. Components are sorted by (canonical data set, p);
/// among duplicate components every relabeling is tried and the one
/// minimizing the sorted annulus list wins. The assignment witness is
/// dropped: it is not part of the class identity.
inline PseudoPeriodicDataSet canonical_pp(const PseudoPeriodicDataSet& input) {
    PseudoPeriodicDataSet pp = input;
    pp.assignment.reset();
    for (auto& o : pp.orbits) o.D = canonical(o.D);

    std::size_t s = pp.orbits.size();
    std::vector<std::size_t> order(s);
    for (std::size_t i = 0; i < s; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pp.orbits[a] < pp.orbits[b];
    });

    // Duplicate groups: contiguous runs of equal (D, p) after sorting.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < s;) {
        std::size_t j = i + 1;
        while (j < s && pp.orbits[order[j]] == pp.orbits[order[i]]) ++j;
        groups.push_back({i, j});
        i = j;
    }

    std::vector<SurfaceOrbit> sorted_orbits(s);
    for (std::size_t i = 0; i < s; ++i) sorted_orbits[i] = pp.orbits[order[i]];

    std::optional<std::vector<AnnulusOrbit>> best;
    std::vector<std::size_t> position(s);  // old index -> slot
    std::function<void(std::size_t)> try_groups = [&](std::size_t gi) {
        if (gi == groups.size()) {
            std::vector<AnnulusOrbit> ann = pp.annuli;
            for (auto& a : ann) {
                a.i = position[a.i];
                a.j = position[a.j];
                i64 pi = sorted_orbits[a.i].p, pj = sorted_orbits[a.j].p;
                if (pi > pj || (pi == pj && a.i > a.j)) std::swap(a.i, a.j);
            }
            std::sort(ann.begin(), ann.end());
            if (!best || ann < *best) best = std::move(ann);
            return;
        }
        auto [lo, hi] = groups[gi];
        std::vector<std::size_t> members(order.begin() + lo, order.begin() + hi);
        std::sort(members.begin(), members.end());
        do {
            for (std::size_t t = 0; t < members.size(); ++t) position[members[t]] = lo + t;
            try_groups(gi + 1);
        } while (std::next_permutation(members.begin(), members.end()));
    };
    try_groups(0);

    PseudoPeriodicDataSet out;
    out.n = pp.n;
    out.orbits = std::move(sorted_orbits);
    out.annuli = std::move(*best);
    return out;
}

/// Equivalence of conjugacy-class encodings: equality of canonical forms.
inline bool equivalent(const PseudoPeriodicDataSet& a, const PseudoPeriodicDataSet& b) {
    auto ca = canonical_pp(a);
    auto cb = canonical_pp(b);
    return ca.n == cb.n && ca.orbits == cb.orbits && ca.annuli == cb.annuli;
}

/// Orbit-level description of the multitwist any representative's n-th
/// power equals.
struct MultitwistOrbitShape {
    i64 m = 1;        // number of curves in the orbit
    i64 q = 1;        // common twist exponent
    bool separating = false;  // is each curve of the orbit separating
    i64 genus_i = 0, genus_j = 0;  // genera of the flanking components

    friend auto operator<=>(const MultitwistOrbitShape&, const MultitwistOrbitShape&) = default;
};

struct MultitwistShape {
    i64 degree = 1;
    std::vector<MultitwistOrbitShape> orbits;
};

/// The multitwist G^n = prod T_{C_r}^{q_r} read off the data set. The
/// separating flag of an orbit is bridge-ness of one of its edges in the
/// copy graph (all edges of an orbit are alike under the action).
inline MultitwistShape multitwist_of(const PseudoPeriodicDataSet& input,
                                     const std::vector<i64>* shift_hint = nullptr) {
    PseudoPeriodicDataSet pp = normalize_endpoint_order(input);
    std::vector<i64> shifts;
    if (shift_hint) {
        shifts = *shift_hint;
    } else {
        auto rep = validate_pp(pp);
        if (!rep.valid) throw DomainError("multitwist_of: data set invalid");
        shifts = rep.shift_witness;
    }
    auto graph = detail::build_copy_graph(pp, shifts);

    MultitwistShape out;
    out.degree = pp.n;
    for (std::size_t r = 0; r < pp.annuli.size(); ++r) {
        const auto& a = pp.annuli[r];
        std::size_t first_edge = 0;
        while (first_edge < graph.edges.size() && graph.edge_orbit[first_edge] != r) ++first_edge;
        bool sep = graph.is_bridge(first_edge);
        out.orbits.push_back({a.m, a.q, sep, genus(pp.orbits[a.i].D), genus(pp.orbits[a.j].D)});
    }
    std::sort(out.orbits.begin(), out.orbits.end());
    return out;
}

/// Exponent normalization against the degree: q = n s + r with |r| <= n/2.
struct NormalizedShape {
    MultitwistShape reduced;
    std::vector<i64> absorbed;  // the s_i, in orbit order
};

inline NormalizedShape normalize_exponents(const MultitwistShape& shape, i64 n) {
    if (n < 1) throw DomainError("normalize_exponents: degree must be positive");
    NormalizedShape out;
    out.reduced = shape;
    for (auto& o : out.reduced.orbits) {
        i64 r = mod_balanced(o.q, n);
        out.absorbed.push_back((o.q - r) / n);
        o.q = r;
    }
    return out;
}

/// Multitwist about one nonseparating curve, T_c^q on S_g, as a degree-1
/// data set: one identity component of genus g - 1 with a self annulus.
inline PseudoPeriodicDataSet multitwist_nonseparating(i64 g, i64 q) {
    if (g < 2 || q == 0) throw DomainError("multitwist_nonseparating: need g >= 2, q != 0");
    PseudoPeriodicDataSet pp;
    pp.n = 1;
    pp.orbits.push_back({CyclicDataSet{1, g - 1, 0, {}}, 1});
    pp.annuli.push_back({1, q, q, 0, 0, AnnulusClass::P});
    return pp;
}

/// Multitwist about one separating curve splitting S_{g1+g2} into genus
/// g1 and g2 pieces.
inline PseudoPeriodicDataSet multitwist_separating(i64 g1, i64 g2, i64 q) {
    if (g1 < 1 || g2 < 1 || q == 0)
        throw DomainError("multitwist_separating: need positive side genera and q != 0");
    PseudoPeriodicDataSet pp;
    pp.n = 1;
    pp.orbits.push_back({CyclicDataSet{1, g1, 0, {}}, 1});
    pp.orbits.push_back({CyclicDataSet{1, g2, 0, {}}, 1});
    pp.annuli.push_back({1, q, q, 0, 1, AnnulusClass::DP});
    return pp;
}

/// Bounding-pair multitwist T_{c1}^{q1} T_{c2}^{q2} on S_{g1+g2+1}.
inline PseudoPeriodicDataSet multitwist_bounding_pair(i64 g1, i64 g2, i64 q1, i64 q2) {
    if (g1 < 1 || g2 < 1 || q1 == 0 || q2 == 0)
        throw DomainError("multitwist_bounding_pair: need positive side genera, nonzero q");
    PseudoPeriodicDataSet pp;
    pp.n = 1;
    pp.orbits.push_back({CyclicDataSet{1, g1, 0, {}}, 1});
    pp.orbits.push_back({CyclicDataSet{1, g2, 0, {}}, 1});
    pp.annuli.push_back({1, q1, q1, 0, 1, AnnulusClass::DP});
    pp.annuli.push_back({1, q2, q2, 0, 1, AnnulusClass::DP});
    return pp;
}

} // namespace ppds
