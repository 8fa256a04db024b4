#pragma once
// The rank-two Frobenius algebra A = R[X]/(X^2) that labels circles in the
// even cube, together with the filtered deformation used by the Lee complex.
// Generators are indexed 0 ("1", internal degree +1) and 1 ("X", degree -1).

#include <array>
#include <cstdint>
#include <vector>

namespace kho {

struct FrobeniusSpec {
    struct Term {
        int label;      // output generator on the affected circle
        int64_t coeff;  // always +-1 here
    };
    struct PairTerm {
        int a, b;  // output generators on the two circles created by a split
        int64_t coeff;
    };

    // m : A (x) A -> A, indexed [x][y]
    std::array<std::array<std::vector<Term>, 2>, 2> mul;
    // Delta : A -> A (x) A, indexed [x]
    std::array<std::vector<PairTerm>, 2> comul;
    std::vector<Term> unit;          // iota(1)
    std::array<int64_t, 2> counit;   // eps(1), eps(X)
    std::array<int, 2> degree;      // internal degree of each generator
    int mul_degree;                  // degree shift of m
    int comul_degree;                // degree shift of Delta
};

// m(1,1)=1, m(1,X)=m(X,1)=X, m(X,X)=0;  Delta(1)=1(x)X+X(x)1, Delta(X)=X(x)X
inline const FrobeniusSpec& khovanov_algebra() {
    static const FrobeniusSpec a = [] {
        FrobeniusSpec f;
        f.mul[0][0] = {{0, 1}};
        f.mul[0][1] = {{1, 1}};
        f.mul[1][0] = {{1, 1}};
        f.mul[1][1] = {};
        f.comul[0] = {{0, 1, 1}, {1, 0, 1}};
        f.comul[1] = {{1, 1, 1}};
        f.unit = {{0, 1}};
        f.counit = {0, 1};
        f.degree = {1, -1};
        f.mul_degree = -1;
        f.comul_degree = -1;
        return f;
    }();
    return a;
}

// The degree-raising corrections: m'(X,X)=1, Delta'(X)=1(x)1, everything
// else zero.  The Lee differential is d + d' where d uses khovanov_algebra().
inline const FrobeniusSpec& lee_deformation() {
    static const FrobeniusSpec a = [] {
        FrobeniusSpec f;
        f.mul[0][0] = {};
        f.mul[0][1] = {};
        f.mul[1][0] = {};
        f.mul[1][1] = {{0, 1}};
        f.comul[0] = {};
        f.comul[1] = {{0, 0, 1}};
        f.unit = {};
        f.counit = {0, 0};
        f.degree = {1, -1};
        f.mul_degree = 3;
        f.comul_degree = 3;
        return f;
    }();
    return a;
}

}  // namespace kho
