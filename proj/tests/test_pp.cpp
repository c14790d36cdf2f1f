#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "ppds/pseudo_periodic.hpp"

using namespace ppds;
using fixtures::chain60;
using fixtures::chain60_relabeled;
using fixtures::root12;
using fixtures::square6;

namespace {

bool has_code(const PpValidationReport& rep, const std::string& code) {
    for (const auto& v : rep.violations)
        if (v.code == code) return true;
    return false;
}

} // namespace

TEST_CASE("the degree-60 chain validates with the expected invariants") {
    auto s = chain60();
    auto rep = validate_pp(s);
    INFO((rep.violations.empty() ? "" : rep.violations.front().detail));
    REQUIRE(rep.valid);
    REQUIRE(rep.found_assignment.has_value());
    CHECK(total_genus(s) == 6);
    CHECK(q_of(s) == 3);

    auto tw = multitwist_of(s);
    CHECK(tw.degree == 60);
    REQUIRE(tw.orbits.size() == 2);
    CHECK(tw.orbits[0].q == -4);
    CHECK(tw.orbits[1].q == 3);
    CHECK(tw.orbits[0].separating);
    CHECK(tw.orbits[1].separating);
}

TEST_CASE("the degree-6 target and its degree-12 root validate") {
    auto rep6 = validate_pp(square6());
    REQUIRE(rep6.valid);
    CHECK(total_genus(square6()) == 2);
    CHECK(q_of(square6()) == 1);

    auto rep12 = validate_pp(root12());
    REQUIRE(rep12.valid);
    CHECK(total_genus(root12()) == 2);
}

TEST_CASE("single-condition perturbations fail with the matching code") {
    SECTION("twist factor mismatch") {
        auto s = chain60();
        s.annuli[0].q = 2;
        s.annuli[0].k = 2;
        auto rep = validate_pp(s);
        CHECK_FALSE(rep.valid);
        CHECK(has_code(rep, "vii"));
    }
    SECTION("side-preserving class across two components") {
        auto s = chain60();
        s.annuli[0].cls = AnnulusClass::P;
        auto rep = validate_pp(s);
        CHECK_FALSE(rep.valid);
        CHECK(has_code(rep, "iii"));
    }
    SECTION("component meeting no annulus") {
        auto s = chain60();
        s.annuli.pop_back();
        auto rep = validate_pp(s);
        CHECK_FALSE(rep.valid);
        CHECK_FALSE(rep.structural_ok);
        CHECK(has_code(rep, "structure"));
    }
    SECTION("k must divide q with matching sign") {
        auto s = chain60();
        s.annuli[1].k = 4;
        auto rep = validate_pp(s);
        CHECK_FALSE(rep.valid);
        CHECK(has_code(rep, "ii"));
    }
    SECTION("invalid component data set") {
        auto s = chain60();
        s.orbits[0].D.pairs[0].c = 2;  // not a unit mod 4
        auto rep = validate_pp(s);
        CHECK_FALSE(rep.valid);
        CHECK(has_code(rep, "i"));
    }
}

TEST_CASE("explicit endpoint assignments are checked, not re-derived") {
    auto s = chain60();
    s.assignment = EndpointAssignment{{{0, 0}, {1, 0}}};
    auto rep = validate_pp(s);
    REQUIRE(rep.valid);
    CHECK(rep.found_assignment == s.assignment);

    // Entry 1 of the first component rotates by 3/4, breaking the 1/20 sum.
    s.assignment = EndpointAssignment{{{1, 0}, {1, 0}}};
    auto bad = validate_pp(s);
    CHECK_FALSE(bad.valid);
    CHECK(has_code(bad, "iv"));

    s.assignment = EndpointAssignment{{{0, 0}}};
    auto len = validate_pp(s);
    CHECK_FALSE(len.valid);
    CHECK(has_code(len, "structure"));
}

TEST_CASE("endpoint consumption is injective") {
    // A second copy of the first annulus orbit also needs entry 0 of the
    // first component: the only rotation available there is 1/4.
    auto s = chain60();
    s.annuli.push_back(s.annuli[0]);
    auto rep = validate_pp(s);
    CHECK_FALSE(rep.valid);
    CHECK(has_code(rep, "iv"));
}

TEST_CASE("exchanging annulus on one component") {
    PseudoPeriodicDataSet s;
    s.n = 8;
    s.orbits = {{CyclicDataSet{8, 0, 0, {{1, 4}, {1, 8}, {5, 8}}}, 1}};
    s.annuli = {{1, 4, 4, 0, 0, AnnulusClass::E}};
    auto rep = validate_pp(s);
    INFO((rep.violations.empty() ? "" : rep.violations.front().detail));
    REQUIRE(rep.valid);
    CHECK(total_genus(s) == 4);
    REQUIRE(rep.found_assignment.has_value());
    CHECK(rep.found_assignment->ends[0].first == Endpoint{0});

    auto tw = multitwist_of(s);
    REQUIRE(tw.orbits.size() == 1);
    CHECK_FALSE(tw.orbits[0].separating);

    // The same annulus tagged side-preserving must consume a full-size
    // orbit pair instead; none exists here.
    s.annuli[0].cls = AnnulusClass::P;
    CHECK_FALSE(validate_pp(s).valid);
}

TEST_CASE("exchanging annulus swapping two copies") {
    PseudoPeriodicDataSet s;
    s.n = 30;
    s.orbits = {{CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {2, 3}}}, 2}};
    s.annuli = {{1, 5, 1, 0, 0, AnnulusClass::DE}};
    auto rep = validate_pp(s);
    INFO((rep.violations.empty() ? "" : rep.violations.front().detail));
    REQUIRE(rep.valid);
    CHECK(total_genus(s) == 2);

    auto tw = multitwist_of(s);
    REQUIRE(tw.orbits.size() == 1);
    CHECK(tw.orbits[0].separating);
}

TEST_CASE("matched multiplicities need a workable copy shift") {
    PseudoPeriodicDataSet s;
    s.n = 30;
    s.orbits = {
        {CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {2, 3}}}, 2},
        {CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {2, 3}}}, 2},
    };
    s.annuli = {{2, 5, 1, 0, 1, AnnulusClass::DP}};

    // One orbit of two parallel annuli splits the four copies into pairs
    // under either shift.
    auto rep = validate_pp(s);
    CHECK_FALSE(rep.valid);
    CHECK(has_code(rep, "connectivity"));

    // A second orbit closes the cycle when the shifts differ.
    s.annuli.push_back(s.annuli[0]);
    auto rep2 = validate_pp(s);
    INFO((rep2.violations.empty() ? "" : rep2.violations.front().detail));
    REQUIRE(rep2.valid);
    CHECK(rep2.shift_witness == std::vector<i64>{0, 1});
    CHECK(total_genus(s) == 5);

    // Each orbit alone still disconnects, so both stay class DP; the
    // individual annuli are nonseparating.
    auto tw = multitwist_of(s);
    REQUIRE(tw.orbits.size() == 2);
    CHECK_FALSE(tw.orbits[0].separating);
    CHECK_FALSE(tw.orbits[1].separating);
}

TEST_CASE("multitwist data sets validate with the degree-1 waiver") {
    auto nsep = multitwist_nonseparating(2, 1);
    auto rep = validate_pp(nsep);
    REQUIRE(rep.valid);
    CHECK_FALSE(rep.warnings.empty());
    CHECK(total_genus(nsep) == 2);
    auto tw = multitwist_of(nsep);
    REQUIRE(tw.orbits.size() == 1);
    CHECK_FALSE(tw.orbits[0].separating);

    auto sep = multitwist_separating(1, 1, 5);
    REQUIRE(validate_pp(sep).valid);
    CHECK(total_genus(sep) == 2);
    CHECK(multitwist_of(sep).orbits[0].separating);

    auto bp = multitwist_bounding_pair(2, 1, 3, -3);
    REQUIRE(validate_pp(bp).valid);
    CHECK(total_genus(bp) == 4);
    auto btw = multitwist_of(bp);
    REQUIRE(btw.orbits.size() == 2);
    CHECK_FALSE(btw.orbits[0].separating);
    CHECK_FALSE(btw.orbits[1].separating);

    // Doubling a component multiplicity breaks the return-twist balance.
    auto broken = multitwist_nonseparating(2, 1);
    broken.orbits[0].p = 2;
    auto brep = validate_pp(broken);
    CHECK_FALSE(brep.valid);
    CHECK(has_code(brep, "vii"));
}

TEST_CASE("genus bookkeeping failures") {
    PseudoPeriodicDataSet s;
    s.n = 30;
    s.orbits = {
        {CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {2, 3}}}, 2},
        {CyclicDataSet{15, 1, 0, {{1, 15}, {14, 15}}}, 1},
    };
    s.annuli = {{1, 5, 1, 0, 1, AnnulusClass::DP}};
    CHECK_THROWS_AS(total_genus(s), DomainError);

    CHECK_THROWS_AS(q_of(PseudoPeriodicDataSet{}), DomainError);
}

TEST_CASE("exponent normalization against the degree") {
    MultitwistShape shape;
    shape.degree = 60;
    shape.orbits = {{1, 65, false, 0, 0}, {1, -4, true, 0, 0},
                    {1, 30, false, 0, 0}, {1, 31, false, 0, 0}};
    auto norm = normalize_exponents(shape, 60);
    REQUIRE(norm.reduced.orbits.size() == 4);
    CHECK(norm.reduced.orbits[0].q == 5);
    CHECK(norm.reduced.orbits[1].q == -4);
    CHECK(norm.reduced.orbits[2].q == 30);
    CHECK(norm.reduced.orbits[3].q == -29);
    CHECK(norm.absorbed == std::vector<i64>{1, 0, 0, 1});
    CHECK_THROWS_AS(normalize_exponents(shape, 0), DomainError);
}

TEST_CASE("canonical form is idempotent and drops the assignment") {
    auto s = chain60();
    s.assignment = EndpointAssignment{{{0, 0}, {1, 0}}};
    auto c = canonical_pp(s);
    CHECK_FALSE(c.assignment.has_value());
    CHECK(canonical_pp(c) == c);
}

TEST_CASE("equivalence is invariant under relabeling") {
    CHECK(equivalent(chain60(), chain60_relabeled()));
    CHECK(equivalent(chain60_relabeled(), chain60()));

    auto other = chain60();
    other.annuli[0].q = 63;  // same residue class mod 60 but a new exponent
    other.annuli[0].k = 63;
    CHECK_FALSE(equivalent(chain60(), other));

    CHECK_FALSE(equivalent(square6(), root12()));
}
