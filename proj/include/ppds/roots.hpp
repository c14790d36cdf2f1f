#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ppds/pseudo_periodic.hpp"

namespace ppds {

/// Component-level witness: orbit `component` of the root powers onto
/// orbit `target` of the base, via a periodic root of degree u.
struct RootWitness {
    std::size_t component = 0;
    std::size_t target = 0;
    i64 u = 1;

    friend auto operator<=>(const RootWitness&, const RootWitness&) = default;
};

struct RootCertificate {
    i64 m = 1;
    PseudoPeriodicDataSet root;
    std::vector<RootWitness> witnesses;
};

struct PpRootCheck {
    bool ok = false;
    std::vector<std::string> warnings;
    std::vector<RootWitness> witnesses;

    explicit operator bool() const { return ok; }
};

namespace detail {

inline std::vector<CyclicDataSet> const& enum_any_memo(i64 g, i64 n) {
    static std::map<std::pair<i64, i64>, std::vector<CyclicDataSet>> cache;
    auto key = std::make_pair(g, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_cyclic_any(g, n)).first;
    return it->second;
}

/// Does D power onto the (canonical) target at component degree u? For
/// u = 1 this is canonical equality; otherwise the degree-product rule
/// n(D) = u * n(target) together with the u-th power matching.
inline bool component_powers_onto(const CyclicDataSet& d, const CyclicDataSet& target_canonical,
                                  i64 u, std::vector<std::string>* warnings) {
    if (u == 1) return canonical(d) == target_canonical;
    if (genus(d) != genus(target_canonical)) return false;
    if (d.n != checked_mul(u, target_canonical.n)) return false;
    auto rc = carries_root_periodic(d, target_canonical, u);
    if (rc.ok && warnings)
        for (const auto& w : rc.warnings) warnings->push_back(w);
    return rc.ok;
}

} // namespace detail

/// Decide whether `root` is a degree-m root of `base`: equal genus
/// (precondition), n = m n', equal exponent sets, matching component and
/// curve counts, and a component-wise witness map u_i | m with
/// p_i = p'_{i'} gcd(p_i, u_i), gcd(p_i, u_i) = gcd(p_i, m), the
/// degree-product power relation on each component, and an exact cover
/// of the base's orbit multiset by the spawned orbits.
inline PpRootCheck check_pp_root(const PseudoPeriodicDataSet& root_in,
                                 const PseudoPeriodicDataSet& base_in, i64 m) {
    if (m <= 1) throw DomainError("check_pp_root: degree must be at least 2");
    auto vg = validate_pp(root_in);
    if (!vg.valid) throw DomainError("check_pp_root: root data set invalid");
    auto vf = validate_pp(base_in);
    if (!vf.valid) throw DomainError("check_pp_root: base data set invalid");
    PseudoPeriodicDataSet G = normalize_endpoint_order(root_in);
    PseudoPeriodicDataSet F = normalize_endpoint_order(base_in);
    if (total_genus(G) != total_genus(F))
        throw DomainError("check_pp_root: genus mismatch between root and base");

    PpRootCheck out;
    if (G.n != checked_mul(m, F.n)) return out;

    std::set<i64> qg, qf;
    std::map<i64, i64> wg, wf;
    i64 sum_p_g = 0, sum_p_f = 0, sum_m_g = 0, sum_m_f = 0;
    for (const auto& a : G.annuli) { qg.insert(a.q); wg[a.q] += a.m; sum_m_g += a.m; }
    for (const auto& a : F.annuli) { qf.insert(a.q); wf[a.q] += a.m; sum_m_f += a.m; }
    for (const auto& o : G.orbits) sum_p_g += o.p;
    for (const auto& o : F.orbits) sum_p_f += o.p;
    if (qg != qf) return out;
    if (sum_p_g != sum_p_f || sum_m_g != sum_m_f) return out;
    if (wg != wf)
        out.warnings.push_back("curve-weighted exponent multisets differ");

    // Base orbit types with multiplicities.
    struct FType {
        CyclicDataSet D;
        i64 p = 1;
        i64 count = 0;
        std::size_t sample = 0;
    };
    std::vector<FType> types;
    for (std::size_t idx = 0; idx < F.orbits.size(); ++idx) {
        CyclicDataSet cd = canonical(F.orbits[idx].D);
        bool found = false;
        for (auto& t : types)
            if (t.D == cd && t.p == F.orbits[idx].p) { ++t.count; found = true; break; }
        if (!found) types.push_back({cd, F.orbits[idx].p, 1, idx});
    }

    // Candidate witnesses per root orbit.
    std::vector<i64> divisors = detail::divisors_from(m, 1);
    struct Cand { std::size_t type; i64 u; };
    std::vector<std::vector<Cand>> cands(G.orbits.size());
    std::vector<i64> spawn(G.orbits.size());
    for (std::size_t i = 0; i < G.orbits.size(); ++i) {
        i64 pi = G.orbits[i].p;
        i64 d = std::gcd(pi, m);
        spawn[i] = d;
        if (pi % d != 0) continue;
        for (std::size_t t = 0; t < types.size(); ++t) {
            if (types[t].p != pi / d) continue;
            for (i64 u : divisors) {
                if (std::gcd(pi, u) != d) continue;
                if (detail::component_powers_onto(G.orbits[i].D, types[t].D, u, &out.warnings)) {
                    cands[i].push_back({t, u});
                    break;  // one admissible u per type suffices for the cover
                }
            }
        }
        if (cands[i].empty()) return out;
    }

    // Exact multiset cover: orbit i consumes spawn[i] instances of its
    // chosen type.
    std::vector<i64> remaining(types.size());
    for (std::size_t t = 0; t < types.size(); ++t) remaining[t] = types[t].count;
    std::vector<RootWitness> chosen;
    std::function<bool(std::size_t)> cover = [&](std::size_t i) -> bool {
        if (i == G.orbits.size()) {
            for (i64 r : remaining)
                if (r != 0) return false;
            return true;
        }
        for (const auto& c : cands[i]) {
            if (remaining[c.type] < spawn[i]) continue;
            remaining[c.type] -= spawn[i];
            chosen.push_back({i, types[c.type].sample, c.u});
            if (cover(i + 1)) return true;
            chosen.pop_back();
            remaining[c.type] += spawn[i];
        }
        return false;
    };
    if (!cover(0)) return out;

    out.ok = true;
    out.witnesses = chosen;
    return out;
}

namespace detail {

/// Partitions of `count` into parts drawn from `allowed` (non-increasing).
inline void partitions_rec(i64 count, const std::vector<i64>& allowed, std::size_t max_idx,
                           std::vector<i64>& cur, std::vector<std::vector<i64>>& out) {
    if (count == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t ai = max_idx; ai < allowed.size(); ++ai) {
        if (allowed[ai] > count) continue;
        cur.push_back(allowed[ai]);
        partitions_rec(count - allowed[ai], allowed, ai, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<i64>> partitions_into(i64 count, std::vector<i64> allowed) {
    std::sort(allowed.begin(), allowed.end(), std::greater<>());
    std::vector<std::vector<i64>> out;
    std::vector<i64> cur;
    partitions_rec(count, allowed, 0, cur, out);
    return out;
}

} // namespace detail

/// All degree-m roots of the target, as canonical data sets with
/// component witnesses. Complete for the root semantics of
/// check_pp_root; every returned certificate re-verifies.
inline std::vector<RootCertificate> pp_roots(const PseudoPeriodicDataSet& target, i64 m) {
    if (m <= 1) throw DomainError("pp_roots: degree must be at least 2");
    auto vf = validate_pp(target);
    if (!vf.valid) throw DomainError("pp_roots: target data set invalid");
    PseudoPeriodicDataSet F = normalize_endpoint_order(target);
    i64 n = checked_mul(m, F.n);

    // --- component types of the target ---
    struct FType {
        CyclicDataSet D;
        i64 p = 1;
        i64 count = 0;
        i64 g = 0;
    };
    std::vector<FType> types;
    std::vector<std::size_t> type_of(F.orbits.size());
    for (std::size_t idx = 0; idx < F.orbits.size(); ++idx) {
        CyclicDataSet cd = canonical(F.orbits[idx].D);
        bool found = false;
        for (std::size_t t = 0; t < types.size(); ++t)
            if (types[t].D == cd && types[t].p == F.orbits[idx].p) {
                ++types[t].count;
                type_of[idx] = t;
                found = true;
                break;
            }
        if (!found) {
            types.push_back({cd, F.orbits[idx].p, 1, genus(cd)});
            type_of[idx] = types.size() - 1;
        }
    }

    std::vector<i64> divisors = detail::divisors_from(m, 1);

    // Candidate root components for one spawned group: gamma copies of a
    // type-t orbit demand p = gamma p', u | m with gcd(p, u) = gamma, and
    // a periodic component powering onto the type at degree u.
    struct PartCand { CyclicDataSet D; i64 u; };
    std::map<std::pair<std::size_t, i64>, std::vector<PartCand>> part_cands;
    auto cands_for = [&](std::size_t t, i64 gamma) -> const std::vector<PartCand>& {
        auto key = std::make_pair(t, gamma);
        auto it = part_cands.find(key);
        if (it != part_cands.end()) return it->second;
        std::vector<PartCand> list;
        i64 p = checked_mul(gamma, types[t].p);
        for (i64 u : divisors) {
            if (std::gcd(p, u) != gamma) continue;
            i64 nd = checked_mul(u, types[t].D.n);
            for (const auto& d : detail::enum_any_memo(types[t].g, nd)) {
                bool ok = false;
                try {
                    ok = detail::component_powers_onto(d, types[t].D, u, nullptr);
                } catch (const NotSupportedError&) {
                    ok = false;  // unverifiable power; excluded from assembly
                }
                if (ok) list.push_back({d, u});
            }
        }
        return part_cands.emplace(key, std::move(list)).first->second;
    };

    // Per type: partitions of its count into admissible spawn sizes.
    std::vector<std::vector<std::vector<i64>>> type_partitions(types.size());
    for (std::size_t t = 0; t < types.size(); ++t) {
        std::vector<i64> allowed;
        for (i64 gamma : divisors)
            if (gamma <= types[t].count && std::gcd(checked_mul(gamma, types[t].p), m) == gamma)
                allowed.push_back(gamma);
        type_partitions[t] = detail::partitions_into(types[t].count, allowed);
        if (type_partitions[t].empty()) return {};
    }

    // --- annulus groups of the target ---
    struct AGroup {
        AnnulusClass cls;
        i64 mp, qp, kp;
        std::size_t ti, tj;
        i64 count = 0;
    };
    std::vector<AGroup> groups;
    for (const auto& a : F.annuli) {
        std::size_t ti = type_of[a.i], tj = type_of[a.j];
        if (ti > tj) std::swap(ti, tj);
        bool found = false;
        for (auto& g : groups)
            if (g.cls == a.cls && g.mp == a.m && g.qp == a.q && g.kp == a.k && g.ti == ti &&
                g.tj == tj) {
                ++g.count;
                found = true;
                break;
            }
        if (!found) groups.push_back({a.cls, a.m, a.q, a.k, ti, tj, 1});
    }
    std::vector<std::vector<std::vector<i64>>> group_partitions(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::vector<i64> allowed;
        for (i64 gamma : divisors)
            if (gamma <= groups[gi].count &&
                std::gcd(checked_mul(gamma, groups[gi].mp), m) == gamma)
                allowed.push_back(gamma);
        group_partitions[gi] = detail::partitions_into(groups[gi].count, allowed);
        if (group_partitions[gi].empty()) return {};
    }

    std::set<PseudoPeriodicDataSet> seen;
    std::vector<RootCertificate> out;

    // Assemble: choose a partition and candidates per component type,
    // then annuli per group, then validate and verify.
    std::vector<SurfaceOrbit> orbit_acc;
    std::vector<std::size_t> orbit_type_acc;

    std::function<void()> assemble_annuli = [&]() {
        // For the current component list, expand each annulus group
        // partition into concrete annulus orbits.
        std::function<void(std::size_t, std::vector<AnnulusOrbit>&)> expand =
            [&](std::size_t gi, std::vector<AnnulusOrbit>& ann_acc) {
                if (gi == groups.size()) {
                    PseudoPeriodicDataSet G;
                    G.n = n;
                    G.orbits = orbit_acc;
                    G.annuli = ann_acc;
                    auto v = validate_pp(G);
                    if (!v.valid) return;
                    auto Gc = canonical_pp(G);
                    if (seen.count(Gc)) return;
                    auto chk = check_pp_root(Gc, F, m);
                    if (!chk.ok) return;
                    seen.insert(Gc);
                    out.push_back({m, Gc, chk.witnesses});
                    return;
                }
                const AGroup& grp = groups[gi];
                for (const auto& partition : group_partitions[gi]) {
                    // Candidates for each part of this partition.
                    std::vector<std::vector<AnnulusOrbit>> opts(partition.size());
                    bool dead = false;
                    for (std::size_t pi_ = 0; pi_ < partition.size() && !dead; ++pi_) {
                        i64 gamma = partition[pi_];
                        i64 mr = checked_mul(gamma, grp.mp);
                        std::vector<AnnulusClass> classes;
                        bool extra_star = (m % 2 == 0) && grp.ti == grp.tj && grp.mp == 1 &&
                                          gamma == 1;
                        switch (grp.cls) {
                            case AnnulusClass::P:
                                classes.push_back(AnnulusClass::P);
                                if (extra_star) classes.push_back(AnnulusClass::E);
                                break;
                            case AnnulusClass::DP:
                                classes.push_back(AnnulusClass::DP);
                                if (extra_star) classes.push_back(AnnulusClass::DE);
                                break;
                            case AnnulusClass::E:
                                if (m % 2 == 1) classes.push_back(AnnulusClass::E);
                                break;
                            case AnnulusClass::DE:
                                if (m % 2 == 1) classes.push_back(AnnulusClass::DE);
                                break;
                        }
                        for (AnnulusClass cg : classes) {
                            for (std::size_t i = 0; i < orbit_acc.size(); ++i) {
                                if (orbit_type_acc[i] != grp.ti && orbit_type_acc[i] != grp.tj)
                                    continue;
                                for (std::size_t j = i; j < orbit_acc.size(); ++j) {
                                    // Endpoint types must match the group,
                                    // in either order.
                                    std::size_t ta = orbit_type_acc[i], tb = orbit_type_acc[j];
                                    if (!((ta == grp.ti && tb == grp.tj) ||
                                          (ta == grp.tj && tb == grp.ti)))
                                        continue;
                                    if (is_exchanging(cg)) {
                                        if (i != j) continue;
                                        if (cg == AnnulusClass::E && orbit_acc[i].p != 1) continue;
                                        if (cg == AnnulusClass::DE && orbit_acc[i].p != 2)
                                            continue;
                                        if (mr != 1) continue;
                                    }
                                    if (cg == AnnulusClass::P && i != j) continue;
                                    // p_i <= p_j endpoint order.
                                    std::size_t ei = i, ej = j;
                                    if (orbit_acc[ei].p > orbit_acc[ej].p) std::swap(ei, ej);
                                    auto nr = detail::annulus_modulus(
                                        orbit_acc[ei].D.n, orbit_acc[ej].D.n, orbit_acc[ei].p,
                                        orbit_acc[ej].p);
                                    if (!nr) continue;
                                    i64 num = checked_mul(checked_mul(grp.qp, orbit_acc[ej].p),
                                                          *nr);
                                    if (num % n != 0) continue;
                                    i64 k = num / n;
                                    if (k == 0 || grp.qp % k != 0) continue;
                                    i64 ak = k < 0 ? -k : k;
                                    if (2 * ak > *nr) continue;
                                    opts[pi_].push_back({mr, grp.qp, k, ei, ej, cg});
                                }
                            }
                        }
                        if (opts[pi_].empty()) dead = true;
                    }
                    if (dead) continue;
                    // Odometer over the parts.
                    std::vector<std::size_t> pick(partition.size(), 0);
                    while (true) {
                        std::size_t before = ann_acc.size();
                        for (std::size_t pi_ = 0; pi_ < partition.size(); ++pi_)
                            ann_acc.push_back(opts[pi_][pick[pi_]]);
                        expand(gi + 1, ann_acc);
                        ann_acc.resize(before);
                        std::size_t carry = 0;
                        while (carry < pick.size()) {
                            if (++pick[carry] < opts[carry].size()) break;
                            pick[carry] = 0;
                            ++carry;
                        }
                        if (carry == pick.size()) break;
                    }
                }
            };
        std::vector<AnnulusOrbit> ann_acc;
        expand(0, ann_acc);
    };

    std::function<void(std::size_t)> assemble_components = [&](std::size_t t) {
        if (t == types.size()) {
            assemble_annuli();
            return;
        }
        for (const auto& partition : type_partitions[t]) {
            std::vector<const std::vector<PartCand>*> opts;
            bool dead = false;
            for (i64 gamma : partition) {
                const auto& c = cands_for(t, gamma);
                if (c.empty()) { dead = true; break; }
                opts.push_back(&c);
            }
            if (dead) continue;
            std::vector<std::size_t> pick(partition.size(), 0);
            while (true) {
                std::size_t before = orbit_acc.size();
                for (std::size_t pi_ = 0; pi_ < partition.size(); ++pi_) {
                    orbit_acc.push_back(
                        {(*opts[pi_])[pick[pi_]].D, checked_mul(partition[pi_], types[t].p)});
                    orbit_type_acc.push_back(t);
                }
                assemble_components(t + 1);
                orbit_acc.resize(before);
                orbit_type_acc.resize(before);
                std::size_t carry = 0;
                while (carry < pick.size()) {
                    if (++pick[carry] < opts[carry]->size()) break;
                    pick[carry] = 0;
                    ++carry;
                }
                if (carry == pick.size()) break;
            }
        }
    };
    assemble_components(0);

    return out;
}

/// All roots over a degree range (2..max_degree inclusive).
inline std::vector<RootCertificate> pp_roots_up_to(const PseudoPeriodicDataSet& target,
                                                   i64 max_degree) {
    std::vector<RootCertificate> out;
    for (i64 m = 2; m <= max_degree; ++m) {
        auto certs = pp_roots(target, m);
        out.insert(out.end(), certs.begin(), certs.end());
    }
    return out;
}

struct PrimitivityReport {
    bool primitive = false;
    std::optional<RootCertificate> witness;
    std::vector<std::string> notes;

    explicit operator bool() const { return primitive; }
};

/// Degree bound for the primitivity sweep, from the curve types present:
/// q(2g - 1) for nonseparating orbits, 3q(g + 1)(g + 2) for separating
/// ones, the maximum when both occur.
inline i64 primitivity_search_bound(const PseudoPeriodicDataSet& pp) {
    auto shape = multitwist_of(pp);
    i64 g = total_genus(pp);
    i64 q = q_of(pp);
    bool sep = false, nonsep = false;
    for (const auto& o : shape.orbits) (o.separating ? sep : nonsep) = true;
    i64 b = 0;
    if (nonsep) b = std::max(b, checked_mul(q, 2 * g - 1));
    if (sep) b = std::max(b, checked_mul(checked_mul(3 * q, g + 1), g + 2));
    return b;
}

/// Primitivity: no root of any degree. Degree-1 multitwists with a
/// common exponent divisor t admit the obvious root with exponents
/// q_r / t; otherwise the bounded root sweep decides.
inline PrimitivityReport is_primitive(const PseudoPeriodicDataSet& pp) {
    auto v = validate_pp(pp);
    if (!v.valid) throw DomainError("is_primitive: data set invalid");
    PrimitivityReport rep;
    if (pp.n == 1) {
        i64 t = 0;
        for (const auto& a : pp.annuli) t = std::gcd(t, a.q < 0 ? -a.q : a.q);
        if (t >= 2) {
            i64 p = 2;
            while (t % p != 0) ++p;
            RootCertificate cert;
            cert.m = p;
            cert.root = pp;
            cert.root.assignment.reset();
            for (auto& a : cert.root.annuli) {
                a.q /= p;
                a.k /= p;
            }
            cert.root = canonical_pp(cert.root);
            rep.primitive = false;
            rep.witness = std::move(cert);
            rep.notes.push_back("multitwist exponents share the factor " + std::to_string(t));
            return rep;
        }
    }
    i64 bound = primitivity_search_bound(pp);
    for (i64 m = 2; m <= bound; ++m) {
        auto certs = pp_roots(pp, m);
        if (!certs.empty()) {
            rep.primitive = false;
            rep.witness = certs.front();
            rep.notes.push_back("root of degree " + std::to_string(m) + " exists");
            return rep;
        }
    }
    rep.primitive = true;
    rep.notes.push_back("no root up to the degree bound " + std::to_string(bound));
    return rep;
}

enum class IvanovStatus { Primitive, PowerOfMultitwist, Neither };

inline const char* to_string(IvanovStatus s) {
    switch (s) {
        case IvanovStatus::Primitive: return "primitive";
        case IvanovStatus::PowerOfMultitwist: return "power-of-multitwist";
        default: return "neither";
    }
}

struct IvanovReport {
    IvanovStatus status = IvanovStatus::Neither;
    std::vector<std::string> warnings;
};

/// Dichotomy check for high-degree roots of multitwists without
/// separating curves: the data set must be primitive or a proper power
/// of a multitwist. Hypotheses are enforced as preconditions; a data set
/// landing outside both branches is reported with a discrepancy warning.
inline IvanovReport ivanov_multitwist_check(const PseudoPeriodicDataSet& pp, i64 m) {
    auto v = validate_pp(pp);
    if (!v.valid) throw DomainError("ivanov_multitwist_check: data set invalid");
    i64 g = total_genus(pp);
    if (g < 3) throw DomainError("ivanov_multitwist_check: genus must be at least 3");
    if (m < 3) throw DomainError("ivanov_multitwist_check: degree must be at least 3");
    if (m <= checked_mul(checked_mul(3, g), g - 2))
        throw DomainError("ivanov_multitwist_check: degree must exceed 3g(g-2)");
    auto shape = multitwist_of(pp);
    for (const auto& o : shape.orbits)
        if (o.separating)
            throw DomainError("ivanov_multitwist_check: separating curves excluded");
    auto prim = is_primitive(pp);
    if (prim.primitive) return {IvanovStatus::Primitive, {}};
    if (pp.n == 1) {
        i64 t = 0;
        for (const auto& a : pp.annuli) t = std::gcd(t, a.q < 0 ? -a.q : a.q);
        if (t >= 2) return {IvanovStatus::PowerOfMultitwist, {}};
    }
    return {IvanovStatus::Neither,
            {"dichotomy violated: neither primitive nor a proper multitwist power"}};
}

} // namespace ppds
