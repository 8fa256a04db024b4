#pragma once
// Homology-preserving reduction of a chain complex by Gaussian cancellation:
// a +-1 entry of some differential pairs off one basis element of its source
// level with one of its target level; removing the pair leaves a smaller
// complex with the complement-updated differential and identical homology.
// Cube complexes collapse almost entirely under this, leaving Smith normal
// form with only small dense remainders.
//
// With `filtered` set, only pairs whose two elements share the same internal
// degree are cancelled.  For a complex whose differential never lowers the
// degree this makes every step a filtered homotopy equivalence (projection,
// inclusion and homotopy all preserve the degree filtration), so not just the
// homology but the whole induced filtration on it survives -- which is what
// the s-invariant computation needs.

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <vector>

#include "kho/complex.hpp"

namespace kho {

template <class T>
ComplexT<T> reduce_complex(const ComplexT<T>& input, bool filtered = false) {
    using ops = num_ops<T>;
    input.validate_shapes();
    const int L = input.levels();
    if (L == 0) return input;

    // a pair may be cancelled when it does not mix filtration levels
    auto eligible = [&](size_t k, int r, int c) {
        return !filtered || input.qdeg[k][static_cast<size_t>(c)] ==
                                input.qdeg[k + 1][static_cast<size_t>(r)];
    };

    // row-major and column-major views of every differential, kept in sync
    std::vector<std::vector<std::map<int, T>>> rows(input.d.size());
    std::vector<std::vector<std::map<int, T>>> cols(input.d.size());
    for (size_t k = 0; k < input.d.size(); ++k) {
        rows[k].resize(static_cast<size_t>(input.d[k].rows));
        cols[k].resize(static_cast<size_t>(input.d[k].cols));
        for (const auto& [r, c, v] : input.d[k].entries) {
            auto [it, fresh] = rows[k][static_cast<size_t>(r)].emplace(c, v);
            if (!fresh) it->second = ops::add(it->second, v);
        }
        for (size_t r = 0; r < rows[k].size(); ++r)
            for (auto it = rows[k][r].begin(); it != rows[k][r].end();) {
                if (ops::is_zero(it->second)) {
                    it = rows[k][r].erase(it);
                } else {
                    cols[k][static_cast<size_t>(it->first)].emplace(static_cast<int>(r),
                                                                    it->second);
                    ++it;
                }
            }
    }
    std::vector<std::vector<char>> alive(static_cast<size_t>(L));
    for (int k = 0; k < L; ++k)
        alive[static_cast<size_t>(k)].assign(static_cast<size_t>(input.dim(k)), 1);

    auto is_unit = [](const T& v) { return v == 1 || v == -1; };
    std::deque<std::tuple<int, int, int>> queue;  // (matrix k, row, col)
    for (size_t k = 0; k < rows.size(); ++k)
        for (size_t r = 0; r < rows[k].size(); ++r)
            for (const auto& [c, v] : rows[k][r])
                if (is_unit(v) && eligible(k, static_cast<int>(r), c))
                    queue.emplace_back(static_cast<int>(k), static_cast<int>(r), c);

    auto erase_entry = [&](size_t k, int r, int c) {
        rows[k][static_cast<size_t>(r)].erase(c);
        cols[k][static_cast<size_t>(c)].erase(r);
    };

    while (!queue.empty()) {
        auto [k, r, c] = queue.front();
        queue.pop_front();
        auto kk = static_cast<size_t>(k);
        if (!alive[kk][static_cast<size_t>(c)] || !alive[kk + 1][static_cast<size_t>(r)])
            continue;
        auto it = rows[kk][static_cast<size_t>(r)].find(c);
        if (it == rows[kk][static_cast<size_t>(r)].end() || !is_unit(it->second)) continue;
        const T alpha = it->second;  // +-1, its own inverse

        // snapshots without the pivot itself
        std::vector<std::pair<int, T>> prow(rows[kk][static_cast<size_t>(r)].begin(),
                                            rows[kk][static_cast<size_t>(r)].end());
        std::vector<std::pair<int, T>> pcol(cols[kk][static_cast<size_t>(c)].begin(),
                                            cols[kk][static_cast<size_t>(c)].end());
        // complement update: M[r'][c'] -= M[r'][c] * alpha^{-1} * M[r][c']
        for (const auto& [r2, u] : pcol) {
            if (r2 == r) continue;
            for (const auto& [c2, w] : prow) {
                if (c2 == c) continue;
                T delta = ops::mul(ops::mul(u, alpha), w);
                auto& cell_row = rows[kk][static_cast<size_t>(r2)];
                auto [jt, fresh] = cell_row.emplace(c2, ops::sub(T(0), delta));
                if (!fresh) jt->second = ops::sub(jt->second, delta);
                if (ops::is_zero(jt->second)) {
                    cell_row.erase(jt);
                    cols[kk][static_cast<size_t>(c2)].erase(r2);
                } else {
                    cols[kk][static_cast<size_t>(c2)][r2] = jt->second;
                    if (is_unit(jt->second) && eligible(kk, r2, c2)) queue.emplace_back(k, r2, c2);
                }
            }
        }
        // drop the pivot row and column from this differential
        for (const auto& [c2, w] : prow) erase_entry(kk, r, c2);
        for (const auto& [r2, u] : pcol) erase_entry(kk, r2, c);
        // the cancelled basis elements disappear from the neighbours too
        if (k > 0) {
            auto& dn = rows[kk - 1][static_cast<size_t>(c)];
            for (const auto& [c2, w] : dn) cols[kk - 1][static_cast<size_t>(c2)].erase(c);
            dn.clear();
        }
        if (kk + 1 < rows.size()) {
            auto& up = cols[kk + 1][static_cast<size_t>(r)];
            for (const auto& [r2, u] : up) rows[kk + 1][static_cast<size_t>(r2)].erase(r);
            up.clear();
        }
        alive[kk][static_cast<size_t>(c)] = 0;
        alive[kk + 1][static_cast<size_t>(r)] = 0;
    }

    // compact the surviving basis
    ComplexT<T> out;
    out.i_min = input.i_min;
    out.qdeg.resize(static_cast<size_t>(L));
    std::vector<std::vector<int>> renum(static_cast<size_t>(L));
    for (int k = 0; k < L; ++k) {
        auto kk = static_cast<size_t>(k);
        renum[kk].assign(static_cast<size_t>(input.dim(k)), -1);
        for (int x = 0; x < input.dim(k); ++x)
            if (alive[kk][static_cast<size_t>(x)]) {
                renum[kk][static_cast<size_t>(x)] = static_cast<int>(out.qdeg[kk].size());
                out.qdeg[kk].push_back(input.qdeg[kk][static_cast<size_t>(x)]);
            }
    }
    for (size_t k = 0; k < rows.size(); ++k) {
        SparseMat<T> m(static_cast<int>(out.qdeg[k + 1].size()),
                       static_cast<int>(out.qdeg[k].size()));
        for (size_t r = 0; r < rows[k].size(); ++r)
            for (const auto& [c, v] : rows[k][r])
                m.entries.emplace_back(renum[k + 1][r], renum[k][static_cast<size_t>(c)], v);
        out.d.push_back(std::move(m));
    }
    return out;
}

}  // namespace kho
