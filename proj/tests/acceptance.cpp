// Acceptance gate: each criterion prints one PASS/FAIL line; the process
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ppds/bounds.hpp"
#include "ppds/io.hpp"
#include "ppds/roots.hpp"

using namespace ppds;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

struct Gate {
    int failures = 0;

    void criterion(int idx, const std::string& label, double budget_s,
                   const std::function<void()>& body) {
        auto t0 = Clock::now();
        std::string error;
        try {
            body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (error.empty() && secs > budget_s) {
            std::ostringstream os;
            os << "exceeded the " << budget_s << " s budget";
            error = os.str();
        }
        std::ostringstream line;
        line << (error.empty() ? "PASS" : "FAIL") << "  " << idx << "  " << label << "  ("
             << static_cast<long>(secs * 1000) << " ms)";
        if (!error.empty()) line << "  -- " << error;
        std::cout << line.str() << "\n";
        if (!error.empty()) ++failures;
    }
};

std::string show(i64 v) { return std::to_string(v); }

// Component permutation plus cone-pair and annulus reordering: a relabeling
// of the same class.
PseudoPeriodicDataSet relabel(const PseudoPeriodicDataSet& in) {
    PseudoPeriodicDataSet out;
    out.n = in.n;
    std::size_t k = in.orbits.size();
    for (std::size_t i = 0; i < k; ++i) {
        SurfaceOrbit o = in.orbits[k - 1 - i];
        std::reverse(o.D.pairs.begin(), o.D.pairs.end());
        out.orbits.push_back(std::move(o));
    }
    for (std::size_t r = in.annuli.size(); r-- > 0;) {
        AnnulusOrbit a = in.annuli[r];
        a.i = k - 1 - a.i;
        a.j = k - 1 - a.j;
        if (a.i != a.j) std::swap(a.i, a.j);
        out.annuli.push_back(a);
    }
    return out;
}

} // namespace

int main() {
    Gate gate;

    gate.criterion(1, "three-component chain: validation, genus, multitwist", 1.0, [] {
        auto s = fixtures::chain60();
        auto rep = validate_pp(s);
        require(rep.valid, "chain must validate");
        require(total_genus(s) == 6, "total genus must be 6");
        require(q_of(s) == 3, "q must be 3");
        auto tw = multitwist_of(s);
        require(tw.degree == 60, "multitwist degree must be 60");
        require(tw.orbits.size() == 2, "two curve orbits expected");
        require(tw.orbits[0].m == 1 && tw.orbits[0].q == -4 && tw.orbits[0].separating,
                "orbit (1, -4) must be separating");
        require(tw.orbits[1].m == 1 && tw.orbits[1].q == 3 && tw.orbits[1].separating,
                "orbit (1, 3) must be separating");
        auto perturbed = s;
        perturbed.annuli[0].q = 2;
        require(!validate_pp(perturbed).valid, "exponent perturbation must invalidate");
    });

    gate.criterion(2, "degree-6 target: square root recovered and primitive", 10.0, [] {
        auto target = fixtures::square6();
        auto root = fixtures::root12();
        require(validate_pp(target).valid, "target must validate");
        require(validate_pp(root).valid, "root must validate");
        for (std::size_t i = 0; i < 2; ++i) {
            auto sq = power(root.orbits[i].D, 2);
            require(canonical(sq) == canonical(target.orbits[i].D),
                    "component square " + show(i + 1) + " must match the target component");
        }
        auto certs = pp_roots(target, 2);
        require(certs.size() == 1, "exactly one square-root class expected, got " +
                                       show(static_cast<i64>(certs.size())));
        require(canonical_pp(certs[0].root) == canonical_pp(root),
                "the recovered class must be the known root");
        require(is_primitive(root).primitive, "the degree-12 root must be primitive");
    });

    gate.criterion(3, "nonseparating sweeps attain exactly q(2g-1)", 300.0, [] {
        for (i64 g = 2; g <= 6; ++g) {
            auto target = multitwist_nonseparating(g, 1);
            i64 bound = 2 * g - 1;
            i64 maxm = 0;
            bool realizer_hit = false;
            auto realizer = canonical_pp(construct_realizer(Shape::Nonseparating, g, 1).root);
            for (i64 m = 2; m <= 2 * bound; ++m) {
                auto certs = pp_roots(target, m);
                if (!certs.empty()) maxm = m;
                if (m == bound)
                    for (const auto& c : certs)
                        if (canonical_pp(c.root) == realizer) realizer_hit = true;
            }
            require(maxm == bound,
                    "g=" + show(g) + ": max degree " + show(maxm) + ", expected " + show(bound));
            require(realizer_hit, "g=" + show(g) + ": realizer missing at the bound");
        }
    });

    gate.criterion(4, "separating realizer at g=12 and bounded sweeps", 300.0, [] {
        auto rz = construct_realizer(Shape::Separating, 12, 1);
        require(rz.degree == 546, "realizer degree must be 546");
        require(validate_pp(rz.root).valid, "realizer root must validate");
        require(check_pp_root(rz.root, rz.target, 546).ok, "546th power must match the target");

        i64 maxm2 = 0;
        for (i64 m = 2; m <= 36; ++m)
            if (!pp_roots(multitwist_separating(1, 1, 1), m).empty()) maxm2 = m;
        require(maxm2 == 12, "genus-2 separating max is " + show(maxm2) + ", expected 12");

        i64 maxm3 = 0;
        for (i64 m = 2; m <= 60; ++m)
            if (!pp_roots(multitwist_separating(1, 2, 1), m).empty()) maxm3 = m;
        require(maxm3 <= 60, "genus-3 separating sweep exceeded its bound");
    });

    gate.criterion(5, "Torelli bounding-pair realizer is maximal at g=4", 300.0, [] {
        auto rz = construct_realizer(Shape::TorelliBP, 4, 1);
        require(rz.degree == 8, "realizer degree must be 8");
        require(validate_pp(rz.root).valid, "realizer root must validate");
        require(rz.root.annuli.size() == 2 && rz.root.annuli[0].k == 1 &&
                    rz.root.annuli[1].k == -1,
                "twist factors must be +1 and -1");
        auto target = multitwist_bounding_pair(2, 1, 1, -1);
        i64 maxm = 0;
        bool realizer_hit = false;
        for (i64 m = 2; m <= 16; ++m) {
            auto certs = pp_roots(target, m);
            if (!certs.empty()) maxm = m;
            if (m == 8)
                for (const auto& c : certs)
                    if (canonical_pp(c.root) == canonical_pp(rz.root)) realizer_hit = true;
        }
        require(maxm == 8, "max degree " + show(maxm) + ", expected 8");
        require(realizer_hit, "realizer missing from the degree-8 classes");
    });

    gate.criterion(6, "commutator membership and the T_c^5 root window", 300.0, [] {
        std::mt19937 rng(20260819u);
        std::uniform_int_distribution<i64> pick(-20, 20);
        for (int t = 0; t < 100; ++t) {
            i64 q1 = pick(rng), q2 = pick(rng), q3 = pick(rng);
            if (q1 == 0 || q2 == 0 || q3 == 0) { --t; continue; }
            bool mid = t % 2 == 0;
            bool expect = mid ? mod_norm(q1 + 2 * q2 + q3, 10) == 0
                              : mod_norm(q1 + q2 + q3, 10) == 0;
            require(membership(Shape::Mod2Commutator, {q1, q2, q3}, 0, mid) == expect,
                    "membership mismatch on a random triple");
        }

        auto tc5 = multitwist_separating(1, 1, 5);
        bool top = false;
        for (i64 m = 2; m <= 180; ++m) {
            auto certs = pp_roots(tc5, m);
            if (certs.empty()) continue;
            require(m >= 10 && m <= 60, "root degree " + show(m) + " outside [10, 60]");
            if (m == 60) top = true;
            for (const auto& c : certs)
                require(check_pp_root(c.root, tc5, m).ok, "certificate failed re-verification");
        }
        require(top, "degree 60 must be attained");
    });

    gate.criterion(7, "property suites: enumeration, powers, equivalence", 600.0, [] {
        // Enumeration against the orbit-splitting brute force.
        for (i64 g = 2; g <= 3; ++g) {
            for (i64 n = 2; n <= 8; ++n) {
                auto lib = enumerate_cyclic(g, n);
                std::set<CyclicDataSet> seen;
                for (const auto& d : lib) {
                    auto rep = validate_cyclic(d);
                    require(rep.valid && !rep.identity_extension, "enumerated set must be valid");
                    require(genus(d) == g, "enumerated set must have the requested genus");
                    require(canonical(d) == d, "enumerated set must be canonical");
                    require(seen.insert(d).second, "enumeration must not repeat classes");
                }
                auto brute_list = oracle::enumerate_brute(g, n);
                std::set<CyclicDataSet> brute(brute_list.begin(), brute_list.end());
                require(seen == brute, "g=" + show(g) + ", n=" + show(n) +
                                           ": enumeration disagrees with brute force");
            }
            for (i64 n = 11; n <= 20; ++n)
                require(enumerate_cyclic(2, n).empty(),
                        "no genus-2 class of order " + show(n) + " exists");
        }

        // Power composition and genus invariance.
        for (i64 g = 2; g <= 3; ++g) {
            for (i64 n = 2; n <= 8; ++n) {
                for (const auto& d : enumerate_cyclic(g, n)) {
                    for (i64 a = 2; a <= 4; ++a) {
                        for (i64 b = 2; b <= 4; ++b) {
                            try {
                                auto one = power_any(d, a * b);
                                auto two = power_any(power_any(d, a), b);
                                require(canonical(one) == canonical(two),
                                        "power composition must commute");
                                require(genus(one) == g, "powers must preserve genus");
                            } catch (const NotSupportedError&) {
                            }
                        }
                    }
                }
            }
        }

        // Equivalence across a relabeled corpus.
        std::vector<PseudoPeriodicDataSet> corpus;
        corpus.push_back(fixtures::chain60());
        corpus.push_back(fixtures::chain60_relabeled());
        corpus.push_back(fixtures::square6());
        corpus.push_back(fixtures::root12());
        for (i64 g = 2; g <= 10; ++g)
            for (i64 q = 1; q <= 4; ++q)
                corpus.push_back(construct_realizer(Shape::Nonseparating, g, q).root);
        for (i64 g = 4; g <= 10; g += 2)
            for (i64 q = 1; q <= 4; ++q)
                corpus.push_back(construct_realizer(Shape::TorelliBP, g, q).root);
        for (i64 q = 1; q <= 2; ++q)
            corpus.push_back(construct_realizer(Shape::Separating, 12, q).root);
        for (i64 q = 5; q <= 20; q += 5)
            corpus.push_back(construct_realizer(Shape::Mod2Commutator, 2, q).root);
        for (i64 q = 1; q <= 2; ++q)
            corpus.push_back(construct_realizer(Shape::LevelM, 20, q, 3).root);
        for (i64 g : {3, 7, 9, 11, 13}) corpus.push_back(construct_bp_root(g).root);
        for (i64 g = 2; g <= 12; ++g)
            for (i64 q = 1; q <= 4; ++q) corpus.push_back(multitwist_nonseparating(g, q));
        for (i64 g1 = 1; g1 <= 5; ++g1)
            for (i64 g2 = g1; g2 <= 5; ++g2)
                for (i64 q = 1; q <= 3; ++q) {
                    corpus.push_back(multitwist_separating(g1, g2, q));
                    corpus.push_back(multitwist_bounding_pair(g1, g2, q, -q));
                }
        require(corpus.size() >= 200,
                "corpus too small: " + show(static_cast<i64>(corpus.size())));
        for (const auto& s : corpus) {
            require(equivalent(s, s), "equivalence must be reflexive");
            auto moved = relabel(s);
            require(equivalent(s, moved) && equivalent(moved, s),
                    "relabeling must preserve the class");
            auto bumped = s;
            bumped.annuli[0].q += bumped.n;
            require(!equivalent(s, bumped), "an exponent bump must change the class");
        }
        require(equivalent(fixtures::chain60(), fixtures::chain60_relabeled()),
                "the relabeled chain must stay equivalent");
    });

    gate.criterion(8, "bounding-pair roots at odd genus", 1.0, [] {
        auto b7 = construct_bp_root(7);
        require(b7.degree == 16, "g=7 degree must be 16");
        require(b7.realized_genus == 7 && b7.warnings.empty(), "g=7 must realize its genus");
        require(validate_pp(b7.root).valid, "g=7 root must validate");
        require(check_pp_root(b7.root, multitwist_bounding_pair(4, 2, 1, -1), 16).ok,
                "g=7 power must match the bounding-pair map");
        auto b3 = construct_bp_root(3);
        require(validate_pp(b3.root).valid, "g=3 root must validate");
        require(b3.realized_genus == 6, "g=3 bookkeeping lands on genus 6");
        require(!b3.warnings.empty(), "g=3 must report the genus discrepancy");
    });

    gate.criterion(9, "stretch-factor degree bounds", 1.0, [] {
        require(pa_root_degree_bound(2, 2.0) == 12, "g=2, lambda=2 must give 12");
        i64 prev = 0;
        for (int i = 1; i <= 20; ++i) {
            i64 b = pa_root_degree_bound(2, 1.0 + 0.2 * i);
            require(b >= prev, "bound must be monotone in the stretch factor");
            prev = b;
        }
        prev = 0;
        for (i64 g = 2; g <= 21; ++g) {
            i64 b = pa_root_degree_bound(g, 2.0);
            require(b >= prev, "bound must be monotone in the genus");
            prev = b;
        }
    });

    if (gate.failures == 0) {
        std::cout << "all 9 criteria passed\n";
        return 0;
    }
    std::cout << gate.failures << " criterion(s) failed\n";
    return 1;
}
