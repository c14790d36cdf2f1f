#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ppds/compat.hpp"
#include "ppds/pseudo_periodic.hpp"

namespace ppds {

enum class Shape {
    Nonseparating,
    Separating,
    BoundingPair,
    TorelliBP,
    LevelM,
    Mod2Commutator,
};

inline const char* to_string(Shape s) {
    switch (s) {
        case Shape::Nonseparating: return "nonseparating";
        case Shape::Separating: return "separating";
        case Shape::BoundingPair: return "bounding-pair";
        case Shape::TorelliBP: return "torelli-bp";
        case Shape::LevelM: return "level-m";
        default: return "mod2-commutator";
    }
}

struct BoundQuery {
    Shape shape = Shape::Nonseparating;
    i64 g = 2;
    i64 q = 1;
    i64 level = 0;                  // LevelM only
    bool middle_separating = false; // Mod2Commutator only
};

struct DegreeBound {
    i64 min_degree = 2;
    i64 max_degree = 2;
};

/// Sharp degree window for roots of the given twist shape.
inline DegreeBound degree_bound(const BoundQuery& bq) {
    if (bq.q < 1) throw DomainError("degree_bound: exponent must be positive");
    switch (bq.shape) {
        case Shape::Nonseparating:
            if (bq.g < 2) throw DomainError("degree_bound: genus must be at least 2");
            return {3, checked_mul(bq.q, 2 * bq.g - 1)};
        case Shape::Separating:
            if (bq.g < 2) throw DomainError("degree_bound: genus must be at least 2");
            return {2, checked_mul(checked_mul(3 * bq.q, bq.g + 1), bq.g + 2)};
        case Shape::BoundingPair:
        case Shape::TorelliBP:
            if (bq.g < 3) throw DomainError("degree_bound: bounding pairs need genus at least 3");
            return {2, checked_mul(checked_mul(bq.q, bq.g), bq.g - 2)};
        case Shape::LevelM:
            if (bq.g < 3) throw DomainError("degree_bound: bounding pairs need genus at least 3");
            if (bq.level < 2) throw DomainError("degree_bound: level must be at least 2");
            return {bq.level, checked_mul(checked_mul(3 * bq.q, bq.g), bq.g - 2)};
        case Shape::Mod2Commutator:
            if (bq.g != 2) throw DomainError("degree_bound: commutator family lives on genus 2");
            return bq.middle_separating ? DegreeBound{2 * bq.q, 12 * bq.q}
                                        : DegreeBound{2 * bq.q, 3 * bq.q};
    }
    throw DomainError("degree_bound: unknown shape");
}

/// Subgroup membership of the multitwist with the given exponent tuple.
/// Nonseparating, separating and bounding-pair shapes carry no subgroup
/// constraint; the Torelli bounding-pair, level-m and mod-2 commutator
/// shapes do.
inline bool membership(Shape shape, const std::vector<i64>& exps, i64 level = 0,
                       bool middle_separating = false) {
    auto need = [&](std::size_t k) {
        if (exps.size() != k)
            throw DomainError("membership: shape expects " + std::to_string(k) +
                              " exponents, got " + std::to_string(exps.size()));
    };
    switch (shape) {
        case Shape::Nonseparating:
        case Shape::Separating:
            need(1);
            return true;
        case Shape::BoundingPair:
            need(2);
            return true;
        case Shape::TorelliBP:
            need(2);
            return exps[0] + exps[1] == 0;
        case Shape::LevelM:
            need(2);
            if (level < 2) throw DomainError("membership: level must be at least 2");
            return mod_norm(exps[0] + exps[1], level) == 0;
        case Shape::Mod2Commutator:
            need(3);
            return middle_separating ? mod_norm(exps[0] + 2 * exps[1] + exps[2], 10) == 0
                                     : mod_norm(exps[0] + exps[1] + exps[2], 10) == 0;
    }
    throw DomainError("membership: unknown shape");
}

struct Realizer {
    i64 degree = 0;
    PseudoPeriodicDataSet root;
    PseudoPeriodicDataSet target;
    std::vector<std::string> notes;
};

namespace detail {

inline EndpointAssignment ends(std::initializer_list<std::pair<Endpoint, Endpoint>> list) {
    EndpointAssignment a;
    a.ends.assign(list.begin(), list.end());
    return a;
}

} // namespace detail

/// Bound-attaining root of the shape's multitwist, where the family is
/// parameterized. Families exist for every g >= 2 (nonseparating), for
/// g = 12s (separating), even g >= 4 (Torelli bounding pairs, and
/// bounding pairs generally), g = 24r + 20 (level-m bounding pairs), and
/// g = 2 with 5 | q (mod-2 commutator). NotParameterizedError otherwise.
inline Realizer construct_realizer(Shape shape, i64 g, i64 q, i64 level = 0) {
    if (q < 1) throw DomainError("construct_realizer: exponent must be positive");
    Realizer out;

    switch (shape) {
        case Shape::Nonseparating: {
            if (g < 2) throw DomainError("construct_realizer: genus must be at least 2");
            i64 n1 = 2 * g - 1;
            CyclicDataSet d1{n1, 0, 0,
                             {{mod_norm(-4, n1), n1}, {2, n1}, {2, n1}}};
            PseudoPeriodicDataSet root;
            root.n = checked_mul(q, n1);
            root.orbits.push_back({d1, 1});
            root.annuli.push_back({1, q, 1, 0, 0, AnnulusClass::P});
            root.assignment = detail::ends({{1, 2}});
            out.degree = root.n;
            out.root = std::move(root);
            out.target = multitwist_nonseparating(g, q);
            out.notes.push_back("degree q(2g-1); fixed points pair with residue sum 1");
            return out;
        }

        case Shape::Separating: {
            if (g < 12 || g % 12 != 0)
                throw NotParameterizedError(
                    "construct_realizer: separating family needs g divisible by 12");
            i64 g1 = g / 2, g2 = g / 2;
            i64 n1 = 4 * g1 + 2, n2 = 3 * g2 + 3;
            auto coeffs = crt_twist_coeffs(n1, n2, 1);
            i64 a1 = mod_inv(coeffs.p1, n1);
            i64 a2 = mod_inv(coeffs.p2, n2);
            CyclicDataSet d1{n1, 0, 0,
                             {{mod_norm(a1, 2), 2},
                              {mod_norm(checked_mul(a1, g1), 2 * g1 + 1), 2 * g1 + 1},
                              {a1, n1}}};
            CyclicDataSet d2{n2, 0, 0,
                             {{mod_norm(2 * a2, 3), 3},
                              {mod_norm(checked_mul(a2, g2 / 3), g2 + 1), g2 + 1},
                              {a2, n2}}};
            PseudoPeriodicDataSet root;
            root.n = checked_mul(q, checked_mul(n1, n2));
            root.orbits.push_back({d1, 1});
            root.orbits.push_back({d2, 1});
            root.annuli.push_back({1, q, 1, 0, 1, AnnulusClass::DP});
            root.assignment = detail::ends({{2, 2}});
            out.degree = root.n;
            out.root = std::move(root);
            out.target = multitwist_separating(g1, g2, q);
            out.notes.push_back("degree 3q(g+1)(g+2) with unit coefficients from the residue "
                                "system");
            return out;
        }

        case Shape::BoundingPair:
        case Shape::TorelliBP: {
            if (g < 4 || g % 2 != 0)
                throw NotParameterizedError(
                    "construct_realizer: bounding-pair family needs even g >= 4");
            i64 s = g / 2;
            i64 n1 = 4 * s, n2 = 4 * s - 4;
            CyclicDataSet d1{n1, 0, 0, {{1, 2}, {n1 - 1, n1}, {2 * s + 1, n1}}};
            CyclicDataSet d2{n2, 0, 0, {{1, 2}, {1, n2}, {mod_norm(2 * s - 3, n2), n2}}};
            PseudoPeriodicDataSet root;
            root.n = checked_mul(q, checked_mul(g, g - 2));
            root.orbits.push_back({d1, 1});
            root.orbits.push_back({d2, 1});
            root.annuli.push_back({1, q, 1, 0, 1, AnnulusClass::DP});
            root.annuli.push_back({1, -q, -1, 0, 1, AnnulusClass::DP});
            root.assignment = detail::ends({{1, 1}, {2, 2}});
            out.degree = root.n;
            out.root = std::move(root);
            out.target = multitwist_bounding_pair(s, s - 1, q, -q);
            out.notes.push_back("degree q g(g-2); twist factors +1 and -1 by the residue "
                                "congruences");
            return out;
        }

        case Shape::LevelM: {
            if (g < 20 || (g - 20) % 24 != 0)
                throw NotParameterizedError(
                    "construct_realizer: level family needs g = 24r + 20");
            i64 r = (g - 20) / 24;
            i64 s = g / 2;  // s = 12r + 10
            i64 n1 = 4 * s, n2 = 3 * (s - 1);
            i64 a1 = mod_inv(4 * r + 3, n1);
            i64 a2 = mod_inv(mod_norm(-(3 * r + 2), n2), n2);
            i64 k2 = -(2 * s * s - 2 * s + 1);
            CyclicDataSet d1{n1, 0, 0,
                             {{mod_norm(a1, 2), 2},
                              {a1, n1},
                              {mod_norm(checked_mul(a1, 2 * s - 1), n1), n1}}};
            CyclicDataSet d2{n2, 0, 0,
                             {{mod_norm(a2, 3), 3},
                              {a2, n2},
                              {mod_norm(checked_mul(a2, 2 * s - 3), n2), n2}}};
            PseudoPeriodicDataSet root;
            root.n = checked_mul(checked_mul(3 * q, g), g - 2);
            root.orbits.push_back({d1, 1});
            root.orbits.push_back({d2, 1});
            root.annuli.push_back({1, q, 1, 0, 1, AnnulusClass::DP});
            root.annuli.push_back({1, checked_mul(q, k2), k2, 0, 1, AnnulusClass::DP});
            root.assignment = detail::ends({{1, 1}, {2, 2}});
            if (level >= 2 && mod_norm(checked_mul(q, 1 + k2), level) != 0)
                throw NotParameterizedError(
                    "construct_realizer: exponent sum not divisible by the requested level");
            out.degree = root.n;
            out.root = std::move(root);
            out.target = multitwist_bounding_pair(s, s - 1, q, checked_mul(q, k2));
            out.notes.push_back("degree 3q g(g-2); second twist factor balanced to " +
                                std::to_string(k2));
            return out;
        }

        case Shape::Mod2Commutator: {
            if (g != 2)
                throw NotParameterizedError(
                    "construct_realizer: commutator family lives on genus 2");
            if (q % 5 != 0)
                throw NotParameterizedError(
                    "construct_realizer: commutator family needs 5 | q");
            CyclicDataSet e1{4, 0, 0, {{1, 2}, {1, 4}, {1, 4}}};
            CyclicDataSet e2{6, 0, 0, {{1, 2}, {2, 3}, {5, 6}}};
            PseudoPeriodicDataSet root;
            root.n = 12 * q;
            root.orbits.push_back({e1, 1});
            root.orbits.push_back({e2, 1});
            root.annuli.push_back({1, q, 1, 0, 1, AnnulusClass::DP});
            root.assignment = detail::ends({{1, 2}});
            out.degree = root.n;
            out.root = std::move(root);
            out.target = multitwist_separating(1, 1, q);
            out.notes.push_back("degree 12q; the separating membership congruence 2q = 0 "
                                "(mod 10) holds exactly when 5 | q");
            return out;
        }
    }
    throw DomainError("construct_realizer: unknown shape");
}

struct BpRoot {
    i64 degree = 0;
    i64 realized_genus = 0;
    PseudoPeriodicDataSet root;
    std::vector<std::string> warnings;
};

/// Degree-maximal roots of the bounding-pair map T_{c1} T_{c2}^{-1} on
/// odd genus. Four parameterized branches; g = 5 degenerates and is not
/// parameterized. The g = 3 instance is reproduced as given, but its
/// component genus bookkeeping lands on total genus 6 rather than 3; the
/// discrepancy is reported as a warning.
inline BpRoot construct_bp_root(i64 g) {
    if (g < 3 || g % 2 == 0)
        throw DomainError("construct_bp_root: genus must be odd and at least 3");
    BpRoot out;

    if (g == 3) {
        CyclicDataSet d1{4, 1, 0, {{1, 4}, {3, 4}}};
        CyclicDataSet d2{2, 0, 0, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}};
        PseudoPeriodicDataSet root;
        root.n = 4;
        root.orbits.push_back({d1, 1});
        root.orbits.push_back({d2, 1});
        root.annuli.push_back({1, 1, 1, 0, 1, AnnulusClass::DP});
        root.annuli.push_back({1, -1, -1, 0, 1, AnnulusClass::DP});
        root.assignment = detail::ends({{1, 0}, {0, 1}});
        out.degree = 4;
        out.root = std::move(root);
        out.realized_genus = total_genus(out.root);
        out.warnings.push_back(
            "component bookkeeping realizes total genus " +
            std::to_string(out.realized_genus) + ", not the requested 3: the first "
            "component's branch data forces genus 4");
        return out;
    }

    if (g % 4 == 3) {  // g = 4s + 3, s >= 1
        i64 s = (g - 3) / 4;
        i64 g1 = 2 * s + 2, g2 = 2 * s;
        i64 n1 = 4 * g1, n2 = 4 * g2;
        CyclicDataSet d1{n1, 0, 0, {{1, 2}, {1, n1}, {2 * g1 - 1, n1}}};
        CyclicDataSet d2{n2, 0, 0, {{1, 2}, {n2 - 1, n2}, {2 * g2 + 1, n2}}};
        PseudoPeriodicDataSet root;
        root.n = checked_lcm(n1, n2);
        root.orbits.push_back({d1, 1});
        root.orbits.push_back({d2, 1});
        root.annuli.push_back({1, 1, 1, 0, 1, AnnulusClass::DP});
        root.annuli.push_back({1, -1, -1, 0, 1, AnnulusClass::DP});
        root.assignment = detail::ends({{2, 2}, {1, 1}});
        out.degree = root.n;
        out.root = std::move(root);
        out.realized_genus = total_genus(out.root);
        return out;
    }

    i64 s = (g - 1) / 4;
    if (s % 2 == 0) {  // g = 4s + 1, s even >= 2
        if (s < 2) throw NotParameterizedError("construct_bp_root: no family at this genus");
        i64 n1 = 2 * s;
        CyclicDataSet d1{n1, 1, 0, {{mod_norm(-(s - 1), n1), n1}, {s - 1, n1}}};
        std::vector<ConePair> pairs2(static_cast<std::size_t>(4 * s + 2), ConePair{1, 2});
        CyclicDataSet d2{2, 0, 0, pairs2};
        PseudoPeriodicDataSet root;
        root.n = n1;
        root.orbits.push_back({d1, 1});
        root.orbits.push_back({d2, 1});
        root.annuli.push_back({1, 1, 1, 0, 1, AnnulusClass::DP});
        root.annuli.push_back({1, -1, -1, 0, 1, AnnulusClass::DP});
        root.assignment = detail::ends({{0, 0}, {1, 1}});
        out.degree = root.n;
        out.root = std::move(root);
        out.realized_genus = total_genus(out.root);
        return out;
    }

    // g = 4s + 1, s odd; s = 1 (g = 5) degenerates.
    if (s < 3)
        throw NotParameterizedError(
            "construct_bp_root: the genus-5 branch degenerates (empty second component)");
    i64 n1 = 2 * s + 2, n2 = 2 * s - 2;
    CyclicDataSet d1{n1, 1, 0, {{1, n1}, {n1 - 1, n1}}};
    CyclicDataSet d2{n2, 1, 0, {{n2 - 1, n2}, {1, n2}}};
    PseudoPeriodicDataSet root;
    root.n = checked_lcm(n1, n2);
    root.orbits.push_back({d1, 1});
    root.orbits.push_back({d2, 1});
    root.annuli.push_back({1, 1, 1, 0, 1, AnnulusClass::DP});
    root.annuli.push_back({1, -1, -1, 0, 1, AnnulusClass::DP});
    root.assignment = detail::ends({{1, 1}, {0, 0}});
    out.degree = root.n;
    out.root = std::move(root);
    out.realized_genus = total_genus(out.root);
    return out;
}

/// Upper bound for root degrees of a pseudo-Anosov class with stretch
/// factor lambda: floor(12 (g - 1) log lambda / log 2), with values
/// within relative 1e-9 of an integer snapped so the bound is never
/// under-reported by rounding error.
inline i64 pa_root_degree_bound(i64 g, double lambda) {
    if (g < 2) throw DomainError("pa_root_degree_bound: genus must be at least 2");
    if (!(lambda > 1.0))
        throw DomainError("pa_root_degree_bound: stretch factor must exceed 1");
    double x = 12.0 * static_cast<double>(g - 1) * std::log(lambda) / std::log(2.0);
    double r = std::round(x);
    if (std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x))) return static_cast<i64>(r);
    return static_cast<i64>(std::floor(x));
}

} // namespace ppds
