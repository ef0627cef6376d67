#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "sigfix/gsignature.hpp"

using namespace sigfix;

namespace {

ActionData c25_candidate() {
    ActionData d;
    d.m = 25;
    d.perm.cycles = {5, 5};
    d.isolated = {{1, 1, 1}, {1, 1, 24}, {5, 1, 4}, {5, 2, 3}};
    return d;
}

}  // namespace

TEST_CASE("defect term values") {
    // m=3, a=b=1 -> -1/3
    CHECK(defect_term(3, 1, 1) == Cyclotomic::from_rational(3, Rat(-1, 3)));

    // the order-5 pair sum equals 2
    Cyclotomic s = defect_term(5, 1, 4) + defect_term(5, 2, 3);
    CHECK(s == Cyclotomic::from_int(5, 2));

    CHECK_THROWS_AS(defect_term(9, 0, 1), std::domain_error);
    CHECK_THROWS_AS(defect_term(9, 9, 1), std::domain_error);
}

TEST_CASE("defect antisymmetry and symmetry over all odd m <= 27") {
    for (int m = 3; m <= 27; m += 2) {
        detail::DefectCache cache;
        for (int a = 1; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                Cyclotomic t = cache.term(m, a, b);
                CHECK(cache.term(m, m - a, b) == -t);
                CHECK(cache.term(m, b, a) == t);
            }
        }
    }
}

TEST_CASE("defect term is Galois equivariant") {
    for (int m : {9, 15, 25}) {
        for (long long k = 2; k < m; ++k) {
            if (std::gcd(k, static_cast<long long>(m)) != 1) continue;
            CHECK(defect_term(m, 1, 3).galois(k) == defect_term(m, k, 3 * k));
            CHECK(defect_term(m, 2, m - 1).galois(k) == defect_term(m, 2 * k, (m - 1) * k));
        }
    }
}

TEST_CASE("surface term") {
    // zero euler number kills the term
    CHECK(surface_term(9, 0, 2).is_zero());
    CHECK(surface_term(25, 0, 7).is_zero());

    // m=3, euler=1, e=1 -> 4/3
    CHECK(surface_term(3, 1, 1) == Cyclotomic::from_rational(3, Rat(4, 3)));

    CHECK_THROWS_AS(surface_term(9, 1, 0), std::domain_error);
}

TEST_CASE("sphere identity: defect(a,a) + surface(1,a) = 1") {
    for (int m = 3; m <= 27; m += 2)
        for (int a = 1; a < m; ++a)
            CHECK(defect_term(m, a, a) + surface_term(m, 1, a) == Cyclotomic::from_int(m, 1));
}

TEST_CASE("projective-plane triple identity over all odd m <= 27") {
    for (int m = 3; m <= 27; m += 2) {
        detail::DefectCache cache;
        for (int a = 1; a < m; ++a) {
            for (int b = 1; b < m; ++b) {
                if (a == b) continue;
                if (std::gcd(std::gcd(a, b), m) != 1) continue;
                Cyclotomic sum = cache.term(m, a, b) + cache.term(m, mod_norm(a - b, m), m - b) +
                                 cache.term(m, mod_norm(b - a, m), m - a);
                CHECK(sum == Cyclotomic::from_int(m, 1));
            }
        }
    }
}

TEST_CASE("perm_trace") {
    PermutationType p55{{5, 5}};
    CHECK(perm_trace(p55, 1) == 0);
    CHECK(perm_trace(p55, 5) == 10);

    PermutationType p39{{3, 9}};
    CHECK(perm_trace(p39, 1) == 0);
    CHECK(perm_trace(p39, 3) == 3);
    CHECK(perm_trace(p39, 9) == 12);

    // k = m restores everything
    CHECK(perm_trace(p39, 27) == p39.n());
    CHECK(p39.order() == 9);
}

TEST_CASE("g_signature on the order-25 candidate") {
    ActionData d = c25_candidate();
    CHECK(g_signature(d, 1) == Cyclotomic(25));  // zero in Q(zeta_25)
    CHECK(g_signature(d, 5) == Cyclotomic::from_int(5, 10));

    // zero-euler sphere contributes nothing at any power
    ActionData s;
    s.m = 9;
    s.perm.cycles = {1};
    s.spheres = {{1, 0, 1}};
    for (long long k = 1; k < 9; ++k) CHECK(g_signature(s, k).is_zero());

    CHECK_THROWS_AS(g_signature(d, 0), std::domain_error);
    CHECK_THROWS_AS(g_signature(d, 25), std::domain_error);
}

TEST_CASE("g_signature at k and m-k are Galois conjugates") {
    ActionData d = c25_candidate();
    for (long long k = 1; k < 25; ++k) {
        Cyclotomic a = g_signature(d, k);
        Cyclotomic b = g_signature(d, 25 - k);
        long long mp = a.conductor();
        REQUIRE(b.conductor() == mp);
        CHECK(b == a.galois(mp - 1));
        // integer values agree on conjugate powers
        auto na = a.as_rational_integer();
        auto nb = b.as_rational_integer();
        REQUIRE(na.has_value());
        REQUIRE(nb.has_value());
        CHECK(*na == *nb);
    }
}

TEST_CASE("degenerate rotation is reported with the orbit") {
    ActionData d;
    d.m = 25;
    d.perm.cycles = {5, 5};
    // gcd(5, 1, 25) = 1 so the orbit is valid data, but T^5 fixes a surface
    // through it: rotated first entry vanishes mod 5.
    d.isolated = {{1, 5, 1}, {1, 1, 24}};
    CHECK_THROWS_AS(g_signature(d, 5), degenerate_orbit_error);
    try {
        g_signature(d, 5);
        FAIL("expected degenerate_orbit_error");
    } catch (const degenerate_orbit_error& e) {
        CHECK(e.orbit_kind == 'i');
        CHECK(e.orbit_index == 0);
        CHECK(e.power == 5);
    }
}

TEST_CASE("lefschetz_check") {
    ActionData d = c25_candidate();
    LefschetzCheck l1 = lefschetz_check(d, 1);
    CHECK(l1.chi_fixed == 2);
    CHECK(l1.lefschetz == 2);
    CHECK(l1.pass);

    LefschetzCheck l5 = lefschetz_check(d, 5);
    CHECK(l5.chi_fixed == 12);
    CHECK(l5.lefschetz == 12);
    CHECK(l5.pass);

    // An empty fixed set can never satisfy the count: the Lefschetz number of
    // a permutation-type action is 2 + trace >= 2.
    ActionData e;
    e.m = 9;
    e.perm.cycles = {};
    LefschetzCheck le = lefschetz_check(e, 1);
    CHECK(le.chi_fixed == 0);
    CHECK(le.lefschetz == 2);
    CHECK_FALSE(le.pass);
}

TEST_CASE("verify_action_data accepts the order-25 candidate at all 24 powers") {
    ActionData d = c25_candidate();
    VerifyActionReport rep = verify_action_data(d);
    CHECK(rep.pass);
    REQUIRE(rep.powers.size() == 24);
    for (const auto& pc : rep.powers) {
        CHECK(pc.pass);
        CHECK(pc.sigma_integral);
    }
    CHECK(rep.powers[0].trace == 0);
    CHECK(rep.powers[4].k == 5);
    CHECK(rep.powers[4].trace == 10);
    CHECK(rep.powers[4].euler.chi_fixed == 12);
}

TEST_CASE("verify_action_data: linear projective-plane data passes at all powers") {
    // triple for (a, b) = (1, 24) mod 25, homology a single fixed class
    ActionData d;
    d.m = 25;
    d.perm.cycles = {1};
    d.isolated = {{1, 1, 24}, {1, 2, 1}, {1, 23, 24}};
    VerifyActionReport rep = verify_action_data(d);
    CHECK(rep.pass);
    for (const auto& pc : rep.powers) CHECK(pc.trace == 1);
}

TEST_CASE("verify_action_data: deleting an orbit breaks the fifth power") {
    ActionData d = c25_candidate();
    d.isolated.pop_back();  // drop the (2,3) orbit
    VerifyActionReport rep = verify_action_data(d);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.powers[4].pass);  // k = 5
    CHECK(rep.powers[0].pass);        // k = 1 is still consistent
}

TEST_CASE("ActionData validation") {
    ActionData d = c25_candidate();
    CHECK_NOTHROW(d.validate());

    ActionData bad = d;
    bad.isolated.push_back({7, 1, 1});  // 7 does not divide 25
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = d;
    bad.isolated.push_back({5, 5, 5});  // gcd(5,5,5) != 1: not effective
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = d;
    bad.perm.cycles = {4};  // 4 does not divide 25
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
