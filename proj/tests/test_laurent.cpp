#include <catch2/catch_amalgamated.hpp>

#include "kho/laurent.hpp"

using namespace kho;

TEST_CASE("laurent arithmetic in one variable", "[laurent]") {
    Laurent f = Laurent::q_plus_qinv();
    CHECK(f.str() == "q^-1 + q");

    Laurent sq = f * f;
    CHECK(sq.coeff(-2) == 1);
    CHECK(sq.coeff(0) == 2);
    CHECK(sq.coeff(2) == 1);
    CHECK(sq == f.pow(2));
    CHECK(f.pow(0) == Laurent::monomial(1, 0));

    SECTION("terms cancel to zero") {
        Laurent g = Laurent::monomial(1, 3) + Laurent::monomial(-1, 3);
        CHECK(g == Laurent());
        CHECK(g.str() == "0");
    }
    SECTION("shift moves every exponent") {
        Laurent g = Laurent::monomial(2, -1) + Laurent::monomial(5, 4);
        Laurent h = g.shifted(3);
        CHECK(h.coeff(2) == 2);
        CHECK(h.coeff(7) == 5);
    }
}

TEST_CASE("evaluation at the Gaussian unit", "[laurent]") {
    // q^2 + q^6 - q^8 at q = i: (-1) + (-1) - 1 = -3
    Laurent f = Laurent::monomial(1, 2) + Laurent::monomial(1, 6) + Laurent::monomial(-1, 8);
    auto [re, im] = f.eval_gaussian();
    CHECK(re == -3);
    CHECK(im == 0);

    // odd exponents land on the imaginary axis
    Laurent g = Laurent::monomial(1, 1) + Laurent::monomial(1, 5);
    auto [re2, im2] = g.eval_gaussian();
    CHECK(re2 == 0);
    CHECK(im2 == 2);
}

TEST_CASE("exact division by q + 1/q", "[laurent]") {
    Laurent f = Laurent::monomial(3, -2) + Laurent::monomial(-1, 0) + Laurent::monomial(1, 4);
    Laurent prod = f * Laurent::q_plus_qinv();
    CHECK(prod.div_q_plus_qinv() == f);

    CHECK_THROWS_AS(Laurent::monomial(1, 0).div_q_plus_qinv(), std::domain_error);
    CHECK(Laurent().div_q_plus_qinv() == Laurent());
}

TEST_CASE("string rendering", "[laurent]") {
    Laurent f = Laurent::monomial(1, 1) + Laurent::monomial(1, 3) + Laurent::monomial(1, 5) +
                Laurent::monomial(-1, 9);
    CHECK(f.str("q") == "q + q^3 + q^5 - q^9");
    CHECK(Laurent::monomial(-2, 0).str() == "-2");
    CHECK(Laurent::monomial(1, -5).str("t") == "t^-5");
}

TEST_CASE("two-variable polynomials", "[laurent]") {
    Laurent2 p = Laurent2::monomial(1, 0, 1) + Laurent2::monomial(1, 0, 3) +
                 Laurent2::monomial(1, 2, 5) + Laurent2::monomial(1, 3, 9);
    CHECK(p.str() == "q + q^3 + t^2 q^5 + t^3 q^9");

    SECTION("specializing t = -1 gives the alternating sum") {
        Laurent chi = p.at_t_minus_one();
        CHECK(chi.coeff(1) == 1);
        CHECK(chi.coeff(3) == 1);
        CHECK(chi.coeff(5) == 1);
        CHECK(chi.coeff(9) == -1);
    }
    SECTION("product distributes over both exponents") {
        Laurent2 q = Laurent2::monomial(2, 1, -1);
        Laurent2 r = p * q;
        CHECK(r == Laurent2::monomial(2, 1, 0) + Laurent2::monomial(2, 1, 2) +
                       Laurent2::monomial(2, 3, 4) + Laurent2::monomial(2, 4, 8));
    }
    SECTION("embedding a one-variable polynomial") {
        Laurent f = Laurent::q_plus_qinv();
        Laurent2 e = as_laurent2_q(f);
        CHECK(e == Laurent2::monomial(1, 0, -1) + Laurent2::monomial(1, 0, 1));
    }
    SECTION("cancellation") {
        Laurent2 z = Laurent2::monomial(1, 1, 1) + Laurent2::monomial(-1, 1, 1);
        CHECK(z.is_zero());
        CHECK(z.str() == "0");
    }
}
