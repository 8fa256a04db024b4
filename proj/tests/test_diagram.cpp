#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace kho;
using kho::test::braid;

TEST_CASE("planar diagram parsing round-trips", "[diagram]") {
    std::string code = "X[1,2,3,4] X[2,5,6,3] X[5,1,4,6]";
    PlanarDiagram D = parse_pd(code);
    CHECK(D.size() == 3);
    CHECK(D.component_count == 1);
    CHECK(D.writhe() == 3);
    CHECK(D.to_pd_string() == code);
    CHECK(parse_pd(D.to_pd_string()).to_pd_string() == code);

    SECTION("edge labels are canonicalized, so shifted labels hash alike") {
        PlanarDiagram E = parse_pd("X[11,12,13,14] X[12,15,16,13] X[15,11,14,16]");
        CHECK(E.to_pd_string() == code);
        CHECK(E.hash() == D.hash());
    }
}

TEST_CASE("orientation and sign conventions", "[diagram]") {
    // left-handed trefoil: three negative crossings
    PlanarDiagram left = parse_pd("X[1,4,2,5] X[5,2,6,3] X[3,6,4,1]");
    CHECK(left.size() == 3);
    CHECK(left.writhe() == -3);
    CHECK(left.negative_crossings() == 3);

    SECTION("reversing one tuple breaks orientability") {
        CHECK_THROWS_WITH(parse_pd("X[1,2,3,4] X[2,5,6,3] X[1,5,4,6]"),
                          Catch::Matchers::ContainsSubstring("inconsistent orientation"));
    }
    SECTION("an edge may only appear twice") {
        CHECK_THROWS_WITH(parse_pd("X[1,1,1,2] X[2,3,3,4]"),
                          Catch::Matchers::ContainsSubstring("appears 3 times"));
    }
    SECTION("malformed tuples are rejected") {
        CHECK_THROWS_AS(parse_pd("X[1,2,3]"), DiagramError);
        CHECK_THROWS_AS(parse_pd("Y[1,2,3,4]"), DiagramError);
        CHECK_THROWS_AS(parse_pd(""), DiagramError);
    }
}

TEST_CASE("braid closures", "[diagram]") {
    PlanarDiagram trefoil = braid("2: 1 1 1");
    CHECK(trefoil.size() == 3);
    CHECK(trefoil.writhe() == 3);
    CHECK(trefoil.component_count == 1);

    PlanarDiagram hopf = braid("2: 1 1");
    CHECK(hopf.component_count == 2);
    CHECK(hopf.writhe() == 2);

    PlanarDiagram fig8 = braid("3: 1 -2 1 -2");
    CHECK(fig8.size() == 4);
    CHECK(fig8.writhe() == 0);
    CHECK(fig8.component_count == 1);

    SECTION("the empty word closes to the unknot") {
        PlanarDiagram u = braid("1:");
        CHECK(u.size() == 0);
        CHECK(u.component_count == 1);
    }
    SECTION("a component that only ever passes over keeps its orientation") {
        PlanarDiagram D = braid("2: 1 -1");
        CHECK(D.component_count == 2);
        CHECK(D.writhe() == 0);
        PlanarDiagram E = braid("3: 1 -1 2 -2");
        CHECK(E.component_count == 3);
        CHECK(E.writhe() == 0);
    }
    SECTION("letters out of range are rejected") {
        CHECK_THROWS_WITH(from_braid(parse_braid("2: 5")),
                          Catch::Matchers::ContainsSubstring("out of range"));
        CHECK_THROWS_WITH(from_braid(parse_braid("0:")),
                          Catch::Matchers::ContainsSubstring("at least one strand"));
    }
}

TEST_CASE("pretzel diagrams", "[diagram]") {
    PlanarDiagram hopf = pretzel({1, 1});
    CHECK(hopf.size() == 2);
    CHECK(hopf.writhe() == 2);
    CHECK(hopf.component_count == 2);

    PlanarDiagram p = pretzel({3, 3, -3});
    CHECK(p.size() == 9);
    CHECK(p.writhe() == -3);
    CHECK(p.component_count == 1);

    CHECK(parse_pretzel_params("P(3,4,-3)") == std::vector<int>{3, 4, -3});
    CHECK(parse_pretzel_params("p(1,1)") == std::vector<int>{1, 1});
    CHECK_THROWS_AS(parse_pretzel_params("3,4,-3"), DiagramError);
    CHECK_THROWS_AS(pretzel({}), DiagramError);

    SECTION("parse_diagram dispatches on the format name") {
        CHECK(parse_diagram("P(1,1)", "pretzel").to_pd_string() == hopf.to_pd_string());
        CHECK(parse_diagram("2: 1 1 1", "braid").size() == 3);
        CHECK(parse_diagram(p.to_pd_string(), "pd").writhe() == -3);
        CHECK_THROWS_AS(parse_diagram("x", "nonsense"), DiagramError);
    }
}

TEST_CASE("mirror image", "[diagram]") {
    PlanarDiagram D = braid("3: 1 -2 1 -2");
    PlanarDiagram M = mirror(D);
    CHECK(M.writhe() == -D.writhe());
    CHECK(M.size() == D.size());
    CHECK(mirror(M).to_pd_string() == D.to_pd_string());

    PlanarDiagram t = braid("2: 1 1 1");
    CHECK(mirror(t).negative_crossings() == 3);
}

TEST_CASE("state resolution circle counts", "[diagram]") {
    PlanarDiagram trefoil = braid("2: 1 1 1");
    // all-0 state of the positive trefoil braid closure: 2 circles;
    // all-1 state: 3 circles
    CHECK(trefoil.resolve_state(0).circles == 2);
    CHECK(trefoil.resolve_state(0b111).circles == 3);

    PlanarDiagram hopf = braid("2: 1 1");
    CHECK(hopf.resolve_state(0b00).circles == 2);
    CHECK(hopf.resolve_state(0b01).circles == 1);
    CHECK(hopf.resolve_state(0b10).circles == 1);
    CHECK(hopf.resolve_state(0b11).circles == 2);
}

TEST_CASE("diagram surgeries", "[diagram]") {
    PlanarDiagram D = braid("2: 1 1 1");

    SECTION("switching a crossing flips its sign only") {
        PlanarDiagram S = switch_crossing(D, 1);
        CHECK(S.writhe() == 1);
        CHECK(S.size() == 3);
        CHECK(S.component_count == 1);
        CHECK(switch_crossing(S, 1).writhe() == 3);
    }
    SECTION("oriented smoothing drops one crossing and keeps orientations") {
        PlanarDiagram S = smooth_oriented(D, 0);
        CHECK(S.size() == 2);
        CHECK(S.component_count == 2);  // hopf link
    }
    SECTION("unoriented smoothing of the trefoil leaves an unknot diagram") {
        PlanarDiagram S = smooth_unoriented(D, 0);
        CHECK(S.size() == 2);
        CHECK(S.component_count == 1);
    }
    SECTION("crossing order permutations relabel but preserve the knot data") {
        PlanarDiagram P = permute_crossings(D, {2, 0, 1});
        CHECK(P.size() == 3);
        CHECK(P.writhe() == 3);
        CHECK(P.component_count == 1);
    }
}

TEST_CASE("free loops carry through", "[diagram]") {
    PlanarDiagram u = braid("1:");
    CHECK(u.free_loops >= 1);
    CHECK(u.resolve_state(0).circles == 1);
}
