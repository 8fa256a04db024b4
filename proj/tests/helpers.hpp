#pragma once
// Shared helpers for the test suite: golden-table construction, random
// diagram generation, and an independent dense Smith normal form used to
// cross-check the production sparse implementation.

#include <initializer_list>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "kho/kho.hpp"

namespace kho::test {

inline PlanarDiagram braid(const std::string& word) { return from_braid(parse_braid(word)); }

// cells given as (i, j, rank, invariant factors)
inline HomologyTable table_of(
    std::initializer_list<std::tuple<int, int, int64_t, std::vector<int64_t>>> cells) {
    HomologyTable t;
    for (const auto& [i, j, rank, torsion] : cells) t.set(i, j, AbelianGroup{rank, torsion});
    return t;
}

// a random braid-closure diagram with at most max_crossings crossings
inline PlanarDiagram random_diagram(std::mt19937& rng, int max_crossings) {
    std::uniform_int_distribution<int> strands_d(2, 4);
    BraidWord w;
    w.strands = strands_d(rng);
    std::uniform_int_distribution<int> len_d(1, max_crossings);
    std::uniform_int_distribution<int> letter_d(1, w.strands - 1);
    std::uniform_int_distribution<int> sign_d(0, 1);
    int len = len_d(rng);
    for (int i = 0; i < len; ++i)
        w.letters.push_back(letter_d(rng) * (sign_d(rng) ? 1 : -1));
    return from_braid(w);
}

inline SparseMat<int64_t> random_matrix(std::mt19937& rng, int max_side, int64_t max_abs) {
    std::uniform_int_distribution<int> side_d(1, max_side);
    int rows = side_d(rng), cols = side_d(rng);
    SparseMat<int64_t> m(rows, cols);
    std::uniform_int_distribution<int64_t> val_d(-max_abs, max_abs);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (int64_t v = val_d(rng)) m.entries.emplace_back(r, c, v);
    return m;
}

// classic dense Smith normal form over arbitrary-precision integers:
// repeatedly shrink the pivot by division with remainder, then enforce that
// it divides the rest of the submatrix.  Returns the nonzero diagonal as an
// ascending divisibility chain.
inline std::vector<mpz_class> dense_smith(std::vector<std::vector<mpz_class>> a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<mpz_class> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        size_t pr = rows, pc = cols;
        mpz_class best = 0;
        for (size_t r = t; r < rows; ++r)
            for (size_t c = t; c < cols; ++c)
                if (a[r][c] != 0 && (best == 0 || abs(a[r][c]) < abs(best))) {
                    best = a[r][c];
                    pr = r;
                    pc = c;
                }
        if (pr == rows) break;
        std::swap(a[t], a[pr]);
        for (size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][pc]);

        bool again = false;
        for (size_t r = t + 1; r < rows; ++r) {
            if (a[r][t] == 0) continue;
            mpz_class q = a[r][t] / a[t][t];
            for (size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
            if (a[r][t] != 0) again = true;
        }
        for (size_t c = t + 1; c < cols; ++c) {
            if (a[t][c] == 0) continue;
            mpz_class q = a[t][c] / a[t][t];
            for (size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
            if (a[t][c] != 0) again = true;
        }
        if (again) continue;

        bool divides_all = true;
        for (size_t r = t + 1; r < rows && divides_all; ++r)
            for (size_t c = t + 1; c < cols && divides_all; ++c)
                if (a[r][c] % a[t][t] != 0) {
                    for (size_t cc = t; cc < cols; ++cc) a[t][cc] += a[r][cc];
                    divides_all = false;
                }
        if (!divides_all) continue;

        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

inline std::vector<mpz_class> dense_smith(const SparseMat<int64_t>& m) {
    std::vector<std::vector<mpz_class>> a(static_cast<size_t>(m.rows),
                                          std::vector<mpz_class>(static_cast<size_t>(m.cols), 0));
    for (const auto& [r, c, v] : m.entries)
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] += v;
    return dense_smith(std::move(a));
}

}  // namespace kho::test
