#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "oracles.hpp"
#include "ppds/cyclic.hpp"

using namespace ppds;

namespace {

const CyclicDataSet kD1{4, 0, 0, {{1, 4}, {3, 4}, {1, 2}, {1, 2}}};
const CyclicDataSet kD2{5, 0, 0, {{4, 5}, {2, 5}, {4, 5}}};
const CyclicDataSet kD3{3, 0, 0, {{1, 3}, {1, 3}, {2, 3}, {2, 3}}};

std::string key(const CyclicDataSet& d) {
    auto c = canonical(d);
    std::string s = std::to_string(c.n) + "|" + std::to_string(c.g0) + "|" + std::to_string(c.r);
    for (const auto& p : c.pairs)
        s += "|" + std::to_string(p.c) + "," + std::to_string(p.ni);
    return s;
}

} // namespace

TEST_CASE("arithmetic helpers") {
    CHECK(mod_norm(-4, 7) == 3);
    CHECK(mod_norm(7, 7) == 0);
    CHECK(mod_balanced(31, 60) == -29);
    CHECK(mod_balanced(30, 60) == 30);
    CHECK(mod_balanced(31, 61) == -30);
    CHECK(mod_balanced(59, 60) == -1);
    CHECK(mod_inv(5, 26) == 21);
    CHECK(mod_inv(1, 1) == 0);
    CHECK_THROWS_AS(mod_inv(2, 4), DomainError);

    Rational a{1, 4};
    Rational b{5, 6};
    CHECK((a + b).frac() == Rational{1, 12});
    CHECK((Rational{21, 20}).frac() == Rational{1, 20});
    CHECK(Rational{-3, 6} == Rational{-1, 2});
    CHECK(Rational{4, 2}.is_integer());
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
    CHECK_THROWS_AS(checked_mul(i64{1} << 40, i64{1} << 40), OverflowError);
}

TEST_CASE("validation accepts the worked components") {
    for (const auto& d : {kD1, kD2, kD3}) {
        auto rep = validate_cyclic(d);
        CHECK(rep.valid);
        CHECK(rep.violations.empty());
    }
    CHECK(genus(kD1) == 2);
    CHECK(genus(kD2) == 2);
    CHECK(genus(kD3) == 2);
}

TEST_CASE("identity extension is legal but flagged") {
    auto rep = validate_cyclic(CyclicDataSet{1, 5, 0, {}});
    CHECK(rep.valid);
    CHECK(rep.identity_extension);
    CHECK(genus(CyclicDataSet{1, 5, 0, {}}) == 5);
}

TEST_CASE("each defining condition can fail") {
    auto code_of = [](const CyclicDataSet& d) {
        auto rep = validate_cyclic(d);
        REQUIRE_FALSE(rep.valid);
        REQUIRE_FALSE(rep.violations.empty());
        return rep.violations.front().code;
    };

    // (i) free rotation must be a unit, and present exactly when k = 0.
    CHECK(code_of(CyclicDataSet{4, 1, 2, {}}) == "i");
    CHECK(code_of(CyclicDataSet{4, 2, 0, {}}) == "i");
    CHECK(code_of(CyclicDataSet{4, 0, 1, {{1, 4}, {3, 4}}}) == "i");

    // (ii) orders divide n, residues are units.
    CHECK(code_of(CyclicDataSet{4, 1, 0, {{1, 3}, {2, 3}}}) == "ii");
    CHECK(code_of(CyclicDataSet{4, 1, 0, {{2, 4}, {2, 4}}}) == "ii");

    // (iii) dropping one order must not change the lcm; forces k != 1.
    CHECK(code_of(CyclicDataSet{4, 1, 0, {{1, 4}}}) == "iii");
    CHECK(code_of(CyclicDataSet{12, 1, 0, {{1, 4}, {1, 6}}}) == "iii");

    // (iv) when the quotient is a sphere, the orders generate: lcm = n.
    CHECK(code_of(CyclicDataSet{4, 0, 0, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}}) == "iv");

    // (v) the weighted residue sum vanishes mod n.
    CHECK(code_of(CyclicDataSet{5, 0, 0, {{1, 5}, {1, 5}, {4, 5}}}) == "v");

    // (vi) the branch identity must close with integral genus >= 0. The
    // conditions are consistent, so (vi) never fails alone; check that it
    // is reported alongside the others.
    auto has_code = [](const CyclicDataSet& d, const std::string& code) {
        for (const auto& v : validate_cyclic(d).violations)
            if (v.code == code) return true;
        return false;
    };
    CHECK(has_code(CyclicDataSet{6, 1, 0, {{1, 2}}}, "vi"));   // odd branch weight
    CHECK(has_code(CyclicDataSet{5, 0, 3, {}}, "vi"));         // 2g - 2 = -10

    // Structure: n must be positive.
    auto rep = validate_cyclic(CyclicDataSet{0, 1, 0, {}});
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.structural_ok);
}

TEST_CASE("classification of the worked components") {
    CHECK(classify(kD1) == CyclicType::Type2);
    CHECK(classify(kD2) == CyclicType::Type1);
    CHECK(classify(kD3) == CyclicType::Rotational);
    CHECK(classify(CyclicDataSet{5, 2, 3, {}}) == CyclicType::Rotational);
    CHECK_THROWS_AS(classify(CyclicDataSet{1, 2, 0, {}}), DomainError);
}

TEST_CASE("canonical form sorts pairs and is idempotent") {
    CyclicDataSet scrambled{4, 0, 0, {{1, 2}, {3, 4}, {1, 2}, {1, 4}}};
    auto c = canonical(scrambled);
    CHECK(c.pairs == std::vector<ConePair>{{1, 2}, {1, 2}, {1, 4}, {3, 4}});
    CHECK(canonical(c) == c);
}

TEST_CASE("powers of the worked square roots") {
    CyclicDataSet e1{4, 0, 0, {{1, 2}, {1, 4}, {1, 4}}};
    CyclicDataSet e2{6, 0, 0, {{1, 2}, {2, 3}, {5, 6}}};
    CHECK(canonical(power(e1, 2)) ==
          canonical(CyclicDataSet{2, 0, 0, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}}));
    CHECK(canonical(power(e2, 2)) == canonical(CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {2, 3}}}));
}

TEST_CASE("power error contracts") {
    CyclicDataSet d{6, 0, 0, {{1, 6}, {1, 3}, {1, 2}}};
    REQUIRE(validate_cyclic(d).valid);
    CHECK_THROWS_AS(power(d, 6), TrivialPowerError);
    CHECK_THROWS_AS(power(d, 12), TrivialPowerError);
    CHECK(power_any(d, 6).n == 1);
    CHECK(power_any(d, 6).g0 == genus(d));
    CHECK_THROWS_AS(power(d, 0), DomainError);
    CHECK_THROWS_AS(power(CyclicDataSet{4, 0, 1, {{1, 4}}}, 2), DomainError);

    // All cone orbits dying with quotient order > 2 is unsupported.
    CyclicDataSet dies{12, 1, 0, {{1, 2}, {1, 2}}};
    REQUIRE(validate_cyclic(dies).valid);
    CHECK_THROWS_AS(power(dies, 4), NotSupportedError);

    // Half-turn cone points survive squaring: each size-2 orbit splits
    // into two fixed points that are still cone points of the involution.
    CyclicDataSet half{4, 1, 0, {{1, 2}, {1, 2}}};
    REQUIRE(validate_cyclic(half).valid);
    auto p = power(half, 2);
    CHECK(p.n == 2);
    CHECK(p.pairs == std::vector<ConePair>{{1, 2}, {1, 2}, {1, 2}, {1, 2}});
    CHECK(genus(p) == genus(half));

    // ... whereas order-3 cones under a sixth power die together, and the
    // quotient order 2 lands in the free case.
    CyclicDataSet dying{12, 1, 0, {{1, 3}, {2, 3}}};
    REQUIRE(validate_cyclic(dying).valid);
    REQUIRE(genus(dying) == 9);
    auto f = power(dying, 6);
    CHECK(f.n == 2);
    CHECK(f.pairs.empty());
    CHECK(f.g0 == 5);
    CHECK(f.r == 1);
    CHECK(genus(f) == 9);
}

TEST_CASE("power agrees with the rotation-number oracle") {
    for (i64 g : {2, 3}) {
        for (i64 n = 2; n <= 8; ++n) {
            for (const auto& d : enumerate_cyclic(g, n)) {
                for (i64 m = 1; m <= n + 2; ++m) {
                    auto expect = oracle::power_by_rotation(d, m);
                    if (!expect) {
                        CHECK_THROWS_AS(power_any(d, m), NotSupportedError);
                        continue;
                    }
                    auto got = power_any(d, m);
                    INFO("d = " << key(d) << ", m = " << m);
                    CHECK(canonical(got) == canonical(*expect));
                    CHECK(genus(got) == g);
                }
            }
        }
    }
}

TEST_CASE("power composition law") {
    for (i64 g : {2, 3}) {
        for (i64 n = 2; n <= 8; ++n) {
            for (const auto& d : enumerate_cyclic(g, n)) {
                for (i64 a = 1; a <= 6; ++a) {
                    for (i64 b = 1; b <= 6; ++b) {
                        CyclicDataSet lhs, rhs;
                        try {
                            lhs = power_any(power_any(d, a), b);
                            rhs = power_any(d, a * b);
                        } catch (const NotSupportedError&) {
                            continue;
                        }
                        INFO("d = " << key(d) << ", a = " << a << ", b = " << b);
                        CHECK(canonical(lhs) == canonical(rhs));
                    }
                }
            }
        }
    }
}

TEST_CASE("enumeration matches brute force") {
    for (i64 g : {2, 3}) {
        for (i64 n = 2; n <= 8; ++n) {
            auto fast = enumerate_cyclic(g, n);
            auto brute = oracle::enumerate_brute(g, n);
            std::set<std::string> fk, bk;
            for (const auto& d : fast) {
                CHECK(validate_cyclic(d).valid);
                CHECK(genus(d) == g);
                fk.insert(key(d));
            }
            for (const auto& d : brute) bk.insert(key(d));
            CHECK(fk.size() == fast.size());  // no duplicates
            INFO("g = " << g << ", n = " << n);
            CHECK(fk == bk);
        }
    }
}

TEST_CASE("enumeration preconditions and gaps") {
    CHECK_THROWS_AS(enumerate_cyclic(1, 5), DomainError);
    CHECK_THROWS_AS(enumerate_cyclic(2, 1), DomainError);
    CHECK(enumerate_cyclic(2, 11).empty());
    CHECK(enumerate_cyclic(2, 13).empty());
    // Classical genus-2 orders: 2, 3, 4, 5, 6, 8, 10 and nothing else.
    for (i64 n : {2, 3, 4, 5, 6, 8, 10}) CHECK_FALSE(enumerate_cyclic(2, n).empty());
    for (i64 n : {7, 9, 12}) CHECK(enumerate_cyclic(2, n).empty());
}

TEST_CASE("free data sets exist in every order at genus one") {
    for (i64 n = 2; n <= 10; ++n) {
        auto all = detail::enumerate_cyclic_any(1, n);
        bool has_free = false;
        for (const auto& d : all)
            if (d.pairs.empty() && d.n == n) has_free = true;
        CHECK(has_free);
    }
}

TEST_CASE("periodic root checks") {
    CyclicDataSet e1{4, 0, 0, {{1, 2}, {1, 4}, {1, 4}}};
    CyclicDataSet d1p{2, 0, 0, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}};
    CHECK(carries_root_periodic(e1, d1p, 2).ok);
    CHECK_FALSE(carries_root_periodic(e1, d1p, 2).used_fallback);

    auto roots = periodic_roots(d1p);
    bool found = false;
    for (const auto& r : roots)
        if (canonical(r) == canonical(e1)) found = true;
    CHECK(found);

    CHECK_THROWS_AS(carries_root_periodic(e1, d1p, 1), DomainError);
    CyclicDataSet genus3{2, 0, 0, std::vector<ConePair>(8, ConePair{1, 2})};
    REQUIRE(genus(genus3) == 3);
    CHECK_THROWS_AS(carries_root_periodic(e1, genus3, 2), DomainError);
    // A genus-matched target that is not the square: negative verdict, not an error.
    CyclicDataSet freet{2, 1, 1, {}};
    REQUIRE(genus(freet) == 1);
    CHECK_FALSE(carries_root_periodic(e1, freet, 2).ok);

    // Free targets need an explicit degree; with one they are searchable.
    CHECK_THROWS_AS(periodic_roots(CyclicDataSet{2, 2, 1, {}}), DomainError);
    CHECK_NOTHROW(periodic_roots(CyclicDataSet{2, 2, 1, {}}, 2));
}

TEST_CASE("unsupported root checks fall back to the signature filter") {
    CyclicDataSet dies{12, 1, 0, {{1, 2}, {1, 2}}};
    REQUIRE(validate_cyclic(dies).valid);
    REQUIRE(genus(dies) == 7);
    CyclicDataSet target{3, 3, 1, {}};
    REQUIRE(validate_cyclic(target).valid);
    REQUIRE(genus(target) == 7);
    auto chk = carries_root_periodic(dies, target, 4);
    CHECK(chk.used_fallback);
    CHECK_FALSE(chk.warnings.empty());
}
