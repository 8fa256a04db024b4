#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace kho;
using kho::test::braid;
using kho::test::table_of;

TEST_CASE("odd homology of the right trefoil is torsion-free", "[cube_odd]") {
    PlanarDiagram D = braid("2: 1 1 1");
    HomologyTable t = khovanov_homology(D, Variant::Odd, RingSpec::Z());
    CHECK(t == table_of({{0, 1, 1, {}},
                         {0, 3, 1, {}},
                         {2, 5, 1, {}},
                         {2, 7, 1, {}},
                         {3, 7, 1, {}},
                         {3, 9, 1, {}}}));
}

TEST_CASE("reduced odd homology of the trefoil", "[cube_odd]") {
    PlanarDiagram D = braid("2: 1 1 1");
    HomologyTable t = khovanov_homology(D, Variant::OddReduced, RingSpec::Z());
    CHECK(t == table_of({{0, 2, 1, {}}, {2, 6, 1, {}}, {3, 8, 1, {}}}));
}

TEST_CASE("odd complexes are genuine complexes", "[cube_odd]") {
    for (const char* w : {"2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1", "3: 1 2 1 2"}) {
        PlanarDiagram D = braid(w);
        ArrowChoice arrows = default_arrows(D);
        OddSigns signs = solve_odd_signs(D, arrows);
        for (bool reduced : {false, true}) {
            ChainComplex C = build_odd(D, reduced, signs, arrows);
            INFO("braid " << w << " reduced " << reduced);
            C.validate_shapes();
            CHECK(C.d_squared_is_zero());
            CHECK(C.preserves_qdeg());
        }
    }
}

TEST_CASE("odd and even theories agree over F2", "[cube_odd]") {
    for (const char* w : {"2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1"}) {
        PlanarDiagram D = braid(w);
        INFO("braid " << w);
        CHECK(khovanov_homology(D, Variant::Odd, RingSpec::F(2)) ==
              khovanov_homology(D, Variant::Even, RingSpec::F(2)));
        CHECK(khovanov_homology(D, Variant::OddReduced, RingSpec::F(2)) ==
              khovanov_homology(D, Variant::EvenReduced, RingSpec::F(2)));
    }
}

TEST_CASE("odd homology splits into two shifted reduced copies", "[cube_odd]") {
    for (const char* w : {"2: 1 1 1", "3: 1 -2 1 -2"}) {
        PlanarDiagram D = braid(w);
        HomologyTable odd = khovanov_homology(D, Variant::Odd, RingSpec::Z());
        HomologyTable oddr = khovanov_homology(D, Variant::OddReduced, RingSpec::Z());
        INFO("braid " << w);
        CHECK(primary_form(odd) ==
              merged(primary_form(oddr, 0, 1), primary_form(oddr, 0, -1)));
    }
}

TEST_CASE("reduced odd homology of a slice pretzel knot", "[cube_odd]") {
    PlanarDiagram D = pretzel({3, 3, -3});
    HomologyTable t = khovanov_homology(D, Variant::OddReduced, RingSpec::Z());
    CHECK(t == table_of({{-6, -12, 1, {}},
                         {-5, -10, 1, {}},
                         {-4, -8, 1, {}},
                         {-3, -6, 2, {}},
                         {-2, -4, 1, {}},
                         {-1, -2, 1, {}},
                         {0, -2, 0, {3}},
                         {0, 0, 2, {}}}));
}

TEST_CASE("presentation choices do not change odd homology", "[cube_odd]") {
    PlanarDiagram D = braid("3: 1 -2 1 -2");
    HomologyTable base = khovanov_homology(D, Variant::Odd, RingSpec::Z());

    SECTION("flipping every arrow") {
        ArrowChoice arrows = default_arrows(D);
        for (auto& b : arrows) b ^= 1;
        HomologyOptions opt;
        opt.arrows = arrows;
        CHECK(khovanov_homology(D, Variant::Odd, RingSpec::Z(), opt) == base);
    }
    SECTION("regauging the sign assignment") {
        ArrowChoice arrows = default_arrows(D);
        OddSigns signs = solve_odd_signs(D, arrows);
        signs.flip_vertex(0b0101);
        HomologyOptions opt;
        opt.signs = &signs;
        CHECK(khovanov_homology(D, Variant::Odd, RingSpec::Z(), opt) == base);
    }
    SECTION("permuting the crossing order") {
        PlanarDiagram P = permute_crossings(D, {3, 1, 0, 2});
        CHECK(khovanov_homology(P, Variant::Odd, RingSpec::Z()) == base);
    }
}

TEST_CASE("odd homology of the unknot and hopf link", "[cube_odd]") {
    CHECK(khovanov_homology(braid("2: 1"), Variant::Odd, RingSpec::Z()) ==
          table_of({{0, -1, 1, {}}, {0, 1, 1, {}}}));
    CHECK(khovanov_homology(braid("2: 1"), Variant::OddReduced, RingSpec::Z()) ==
          table_of({{0, 0, 1, {}}}));
    // for the hopf link the odd theory matches the even one degreewise
    CHECK(khovanov_homology(braid("2: 1 1"), Variant::Odd, RingSpec::Z()).poincare() ==
          khovanov_homology(braid("2: 1 1"), Variant::Even, RingSpec::Z()).poincare());
}
