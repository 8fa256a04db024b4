#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace kho;
using kho::test::braid;
using kho::test::table_of;

TEST_CASE("even homology of the right trefoil over Z", "[cube_even]") {
    PlanarDiagram D = braid("2: 1 1 1");
    HomologyTable t = khovanov_homology(D, Variant::Even, RingSpec::Z());
    CHECK(t == table_of({{0, 1, 1, {}},
                         {0, 3, 1, {}},
                         {2, 5, 1, {}},
                         {3, 7, 0, {2}},
                         {3, 9, 1, {}}}));
    CHECK(t.poincare() == Laurent2::monomial(1, 0, 1) + Laurent2::monomial(1, 0, 3) +
                              Laurent2::monomial(1, 2, 5) + Laurent2::monomial(1, 3, 9));

    SECTION("over Q the torsion disappears") {
        HomologyTable q = khovanov_homology(D, Variant::Even, RingSpec::Q());
        CHECK(q == table_of({{0, 1, 1, {}}, {0, 3, 1, {}}, {2, 5, 1, {}}, {3, 9, 1, {}}}));
    }
    SECTION("over F2 every torsion class doubles") {
        HomologyTable f = khovanov_homology(D, Variant::Even, RingSpec::F(2));
        CHECK(f == table_of({{0, 1, 1, {}},
                             {0, 3, 1, {}},
                             {2, 5, 1, {}},
                             {2, 7, 1, {}},
                             {3, 7, 1, {}},
                             {3, 9, 1, {}}}));
    }
    SECTION("over F3 nothing doubles") {
        HomologyTable f = khovanov_homology(D, Variant::Even, RingSpec::F(3));
        CHECK(f.total_rank() == 4);
    }
}

TEST_CASE("reduced even homology of the trefoil", "[cube_even]") {
    PlanarDiagram D = braid("2: 1 1 1");
    HomologyTable t = khovanov_homology(D, Variant::EvenReduced, RingSpec::Z());
    CHECK(t == table_of({{0, 2, 1, {}}, {2, 6, 1, {}}, {3, 8, 1, {}}}));
    CHECK(t.total_rank() == 3);
}

TEST_CASE("even homology of unknot diagrams", "[cube_even]") {
    for (const char* w : {"1:", "2: 1", "2: 1 1 -1"}) {
        PlanarDiagram D = braid(w);
        HomologyTable t = khovanov_homology(D, Variant::Even, RingSpec::Z());
        INFO("braid word " << w);
        CHECK(t == table_of({{0, -1, 1, {}}, {0, 1, 1, {}}}));
        HomologyTable r = khovanov_homology(D, Variant::EvenReduced, RingSpec::Z());
        CHECK(r == table_of({{0, 0, 1, {}}}));
    }
}

TEST_CASE("hopf link chain level data", "[cube_even]") {
    PlanarDiagram D = braid("2: 1 1");
    ChainComplex C = build_even_complex(D);
    REQUIRE(C.levels() == 3);
    REQUIRE(C.i_min == 0);

    auto level_poly = [&](int k) {
        Laurent p;
        for (int q : C.qdeg[static_cast<size_t>(k)]) p.add_term(q, 1);
        return p;
    };
    // graded dimensions level by level
    CHECK(level_poly(0) == Laurent::monomial(1, 0) + Laurent::monomial(2, 2) +
                               Laurent::monomial(1, 4));
    CHECK(level_poly(1) == Laurent::monomial(2, 2) + Laurent::monomial(2, 4));
    CHECK(level_poly(2) == Laurent::monomial(1, 2) + Laurent::monomial(2, 4) +
                               Laurent::monomial(1, 6));

    SECTION("exactly one cube edge carries a negative sign") {
        int negatives = 0;
        for (uint64_t v = 0; v < 4; ++v)
            for (int c = 0; c < 2; ++c)
                if (!(v >> c & 1) && even_edge_sign(v, c) < 0) ++negatives;
        CHECK(negatives == 1);
        CHECK(even_edge_sign(0b10, 0) == -1);
    }
    SECTION("homology of the positive hopf link") {
        HomologyTable t = khovanov_homology(D, Variant::Even, RingSpec::Z());
        CHECK(t == table_of({{0, 0, 1, {}}, {0, 2, 1, {}}, {2, 4, 1, {}}, {2, 6, 1, {}}}));
    }
}

TEST_CASE("complex invariants hold for the even construction", "[cube_even]") {
    for (const char* w : {"2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1"}) {
        PlanarDiagram D = braid(w);
        for (bool reduced : {false, true}) {
            ChainComplex C = build_even_complex(D, reduced);
            INFO("braid " << w << " reduced " << reduced);
            C.validate_shapes();
            CHECK(C.d_squared_is_zero());
            CHECK(C.preserves_qdeg());
        }
    }
}

TEST_CASE("single-degree blocks match the full complex", "[cube_even]") {
    PlanarDiagram D = braid("3: 1 -2 1 -2");
    ChainComplex full = build_even_complex(D);
    std::set<int> qs;
    for (const auto& lvl : full.qdeg) qs.insert(lvl.begin(), lvl.end());
    for (int q : qs) {
        ChainComplex blk = build_even_block(D, q);
        ChainComplex ref = full.block(q);
        REQUIRE(blk.levels() == ref.levels());
        for (int k = 0; k < blk.levels(); ++k) REQUIRE(blk.dim(k) == ref.dim(k));
        CHECK(homology_of_complex(blk, RingSpec::Z()) == homology_of_complex(ref, RingSpec::Z()));
    }
}

TEST_CASE("lee deformation", "[cube_even]") {
    SECTION("total differential still squares to zero") {
        FilteredComplex fc = build_lee_complex(braid("3: 1 -2 1 -2"));
        ChainComplex tot = fc.base;
        tot.d = fc.total();
        CHECK(tot.d_squared_is_zero());
    }
    SECTION("a knot has two lee classes in degree zero") {
        auto ranks = lee_homology_ranks(braid("2: 1 1 1"));
        CHECK(ranks == std::map<int, int64_t>{{0, 2}});
    }
    SECTION("the hopf link has four classes split across degrees") {
        auto ranks = lee_homology_ranks(braid("2: 1 1"));
        CHECK(ranks == std::map<int, int64_t>{{0, 2}, {2, 2}});
    }
}

TEST_CASE("field and integer answers are consistent", "[cube_even]") {
    // universal coefficients: rank over F_p = rank over Q + torsion classes
    // counted twice at adjacent homological degrees
    PlanarDiagram D = braid("3: 1 -2 1 -2");
    HomologyTable z = khovanov_homology(D, Variant::Even, RingSpec::Z());
    HomologyTable q = khovanov_homology(D, Variant::Even, RingSpec::Q());
    HomologyTable f2 = khovanov_homology(D, Variant::Even, RingSpec::F(2));
    int64_t torsion_classes = z.total_dim_with_torsion() - z.total_rank();
    CHECK(q.total_rank() == z.total_rank());
    CHECK(f2.total_rank() == z.total_rank() + 2 * torsion_classes);
}
