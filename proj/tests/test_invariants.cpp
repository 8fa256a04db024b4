#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace kho;
using kho::test::braid;
using kho::test::table_of;

TEST_CASE("jones polynomial by skein recursion", "[invariants]") {
    JonesOracle oracle;
    CHECK(oracle.jones(braid("1:")).str() == "q^-1 + q");
    CHECK(oracle.jones(braid("2: 1 1 1")).str() == "q + q^3 + q^5 - q^9");
    CHECK(oracle.jones(braid("2: -1 -1 -1")).str() == "-q^-9 + q^-5 + q^-3 + q^-1");
    CHECK(oracle.jones(braid("3: 1 -2 1 -2")).str() == "q^-5 + q^5");
    CHECK(oracle.jones(braid("2: 1 1")).str() == "1 + q^2 + q^4 + q^6");
    CHECK(oracle.jones(braid("2: 1 -1")).str() == "q^-2 + 2 + q^2");
    CHECK(oracle.jones(pretzel({3, 3, -3})).str() ==
          "q^-13 - q^-7 - q^-5 + q^-1 + 2q");
}

TEST_CASE("graded euler characteristic recovers the jones polynomial", "[invariants]") {
    JonesOracle oracle;
    for (const char* w : {"2: 1 1 1", "3: 1 -2 1 -2", "2: 1 -1", "2: 1 1"}) {
        PlanarDiagram D = braid(w);
        Laurent j = oracle.jones(D);
        INFO("braid " << w);
        CHECK(build_even_complex(D).euler_characteristic() == j);
        ArrowChoice arrows = default_arrows(D);
        OddSigns signs = solve_odd_signs(D, arrows);
        CHECK(build_odd(D, false, signs, arrows).euler_characteristic() == j);
    }
}

TEST_CASE("determinants", "[invariants]") {
    JonesOracle oracle;
    auto det = [&](const PlanarDiagram& D) { return determinant_from_jones(oracle.jones(D)); };
    CHECK(det(braid("1:")) == 1);
    CHECK(det(braid("2: 1 1")) == 2);
    CHECK(det(braid("2: 1 1 1")) == 3);
    CHECK(det(braid("3: 1 -2 1 -2")) == 5);
    CHECK(det(pretzel({3, 3, -3})) == 9);
    CHECK(det(braid("2: 1 -1")) == 0);  // split links have determinant zero

    SECTION("rejects polynomials that are not unreduced jones values") {
        CHECK_THROWS_AS(determinant_from_jones(Laurent::monomial(1, 1)), std::domain_error);
        // divisible by q + 1/q, but the quotient at q = i is 1 + i
        Laurent bad = Laurent::q_plus_qinv() * (Laurent::monomial(1, 0) + Laurent::monomial(1, 1));
        CHECK_THROWS_AS(determinant_from_jones(bad), std::logic_error);
    }
}

TEST_CASE("homological width", "[invariants]") {
    CHECK(homological_width(khovanov_homology(braid("2: 1 1 1"), Variant::Even, RingSpec::Z())) == 2);
    CHECK(homological_width(khovanov_homology(braid("3: 1 -2 1 -2"), Variant::Even, RingSpec::Z())) == 2);
    PlanarDiagram P = pretzel({3, 3, -3});
    CHECK(homological_width(khovanov_homology(P, Variant::EvenReduced, RingSpec::Z())) == 1);
    CHECK(homological_width(khovanov_homology(P, Variant::Odd, RingSpec::Z())) == 3);
    CHECK(homological_width(HomologyTable{}) == 0);
}

TEST_CASE("thurston-bennequin bounds", "[invariants]") {
    auto tb = [](const PlanarDiagram& D, Variant v) {
        return tb_bound(khovanov_homology(D, v, RingSpec::Z()), v != Variant::Even && v != Variant::Odd);
    };
    CHECK(tb(braid("1:"), Variant::Even) == -1);
    CHECK(tb(braid("2: 1 1 1"), Variant::Even) == 1);
    CHECK(tb(braid("2: 1 1 1"), Variant::EvenReduced) == 1);
    PlanarDiagram P = pretzel({3, 3, -3});
    CHECK(tb(P, Variant::Even) == -7);
    CHECK(tb(P, Variant::EvenReduced) == -7);
    CHECK(tb(P, Variant::OddReduced) == -7);
    CHECK_THROWS_AS(tb_bound(HomologyTable{}, false), std::invalid_argument);
}

TEST_CASE("lee homology ranks", "[invariants]") {
    CHECK(lee_homology_ranks(braid("2: 1 1 1")) == std::map<int, int64_t>{{0, 2}});
    CHECK(lee_homology_ranks(braid("3: 1 -2 1 -2")) == std::map<int, int64_t>{{0, 2}});
    CHECK(lee_homology_ranks(braid("2: 1 1")) == std::map<int, int64_t>{{0, 2}, {2, 2}});
    // a k-component link carries 2^k Lee generators in total
    auto ranks = lee_homology_ranks(braid("2: 1 -1"));
    int64_t total = 0;
    for (const auto& [i, r] : ranks) total += r;
    CHECK(total == 4);
}

TEST_CASE("rasmussen s invariant", "[invariants]") {
    CHECK(rasmussen_s(braid("1:")) == 0);
    CHECK(rasmussen_s(braid("2: 1 1 -1")) == 0);
    CHECK(rasmussen_s(braid("2: 1 1 1")) == 2);
    CHECK(rasmussen_s(braid("2: -1 -1 -1")) == -2);
    CHECK(rasmussen_s(braid("2: 1 1 1 1 1")) == 4);
    CHECK(rasmussen_s(braid("3: 1 -2 1 -2")) == 0);
    CHECK(rasmussen_s(pretzel({3, 3, -3})) == 0);  // slice, so s vanishes
    CHECK_THROWS_WITH(rasmussen_s(braid("2: 1 1")),
                      Catch::Matchers::ContainsSubstring("defined for knots"));
}

TEST_CASE("knight-move decomposition of rational homology", "[invariants]") {
    SECTION("right trefoil") {
        auto t = khovanov_homology(braid("2: 1 1 1"), Variant::Even, RingSpec::Q());
        KnightMovePairing p = knight_move_decomposition(t);
        REQUIRE(p.ok);
        CHECK(p.pawn == std::pair<int, int>{1, 3});
        CHECK(p.s() == 2);
        CHECK(p.knights.size() == 1);
    }
    SECTION("figure eight") {
        auto t = khovanov_homology(braid("3: 1 -2 1 -2"), Variant::Even, RingSpec::Q());
        KnightMovePairing p = knight_move_decomposition(t);
        REQUIRE(p.ok);
        CHECK(p.s() == 0);
        CHECK(p.knights.size() == 2);
    }
    SECTION("tables with torsion are rejected") {
        auto t = khovanov_homology(braid("2: 1 1 1"), Variant::Even, RingSpec::Z());
        CHECK_THROWS_WITH(knight_move_decomposition(t),
                          Catch::Matchers::ContainsSubstring("table of ranks"));
    }
    SECTION("an unpairable table is reported, not mispaired") {
        CHECK_FALSE(knight_move_decomposition(table_of({{0, 1, 1, {}}})).ok);
    }
}

TEST_CASE("unknot recognition", "[invariants]") {
    CHECK(is_unknot(braid("1:")));
    CHECK(is_unknot(braid("2: 1")));
    CHECK(is_unknot(braid("2: 1 1 -1")));
    CHECK_FALSE(is_unknot(braid("2: 1 1 1")));
    CHECK_FALSE(is_unknot(braid("3: 1 -2 1 -2")));
    CHECK_FALSE(is_unknot(braid("2: 1 1")));  // links are never the unknot
}

TEST_CASE("quasi-alternating certificate search", "[invariants]") {
    QaSearcher qa;
    CHECK(qa.run(braid("1:")).status == Tri::Yes);
    CHECK(qa.run(braid("2: 1 1")).status == Tri::Yes);

    QaResult tref = qa.run(braid("2: 1 1 1"));
    CHECK(tref.status == Tri::Yes);
    CHECK(tref.reason == "resolution-tree certificate");

    CHECK(qa.run(braid("3: 1 -2 1 -2")).status == Tri::Yes);

    QaResult pz = qa.run(pretzel({3, 3, -3}));
    CHECK(pz.status == Tri::No);
    CHECK_THAT(pz.reason, Catch::Matchers::ContainsSubstring("3 diagonals"));

    QaResult split = qa.run(braid("2: 1 -1"));
    CHECK(split.status == Tri::No);
    CHECK(split.reason == "determinant is zero");

    QaSearcher broke(QaOptions{0});
    QaResult out = broke.run(braid("2: 1 1 1"));
    CHECK(out.status == Tri::Unknown);
    CHECK(out.reason == "search budget exhausted");
}

TEST_CASE("chain-level skein exactness at every crossing", "[invariants]") {
    for (const char* w : {"2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1", "2: -1 -1"}) {
        PlanarDiagram D = braid(w);
        for (int c = 0; c < D.size(); ++c) {
            SkeinCheckReport rep = check_skein_exactness(D, c);
            INFO("braid " << w << " crossing " << c
                          << (rep.errors.empty() ? "" : ": " + rep.errors.front()));
            CHECK(rep.ok);
        }
    }
    CHECK_THROWS_AS(check_skein_exactness(braid("2: 1 1"), 7), std::invalid_argument);
}

TEST_CASE("structural identity checklist", "[invariants]") {
    CheckList cl = verify_structural_identities(braid("3: 1 -2 1 -2"));
    INFO(cl.summary());
    CHECK(cl.all_ok());
    CHECK_THAT(cl.summary(), Catch::Matchers::ContainsSubstring("pass"));
}
