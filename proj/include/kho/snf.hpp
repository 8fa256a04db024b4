#pragma once
// Exact linear algebra over the integers and prime fields:
//   * Smith normal form (dense working copy, smallest-pivot strategy,
//     optional unimodular transforms)
//   * rank over the rationals by sparse fraction-free elimination with a
//     Markowitz-style minimal fill-in pivot rule
//   * rank over F_p by sparse Gaussian elimination
// Integer routines are templated so they run on overflow-checked int64 first
// and can be retried verbatim on arbitrary-precision integers.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "kho/sparse.hpp"
#include "kho/util.hpp"

namespace kho {

template <class T>
struct SnfResult {
    std::vector<T> diagonal;  // nonzero invariant factors, divisibility chain
    // U * A * V = diag(diagonal) when transforms were requested
    std::optional<std::vector<std::vector<T>>> U, V;
    int64_t rank() const { return static_cast<int64_t>(diagonal.size()); }
};

template <class T>
SnfResult<T> smith_normal_form(const SparseMat<T>& input, bool want_transforms = false) {
    using ops = num_ops<T>;
    auto M = input.to_dense();
    const int nr = input.rows, nc = input.cols;
    auto at = [&](int i, int j) -> T& {
        return M[static_cast<size_t>(i)][static_cast<size_t>(j)];
    };
    std::vector<std::vector<T>> U, V;
    if (want_transforms) {
        U.assign(static_cast<size_t>(nr), std::vector<T>(static_cast<size_t>(nr), T(0)));
        V.assign(static_cast<size_t>(nc), std::vector<T>(static_cast<size_t>(nc), T(0)));
        for (int i = 0; i < nr; ++i) U[static_cast<size_t>(i)][static_cast<size_t>(i)] = T(1);
        for (int i = 0; i < nc; ++i) V[static_cast<size_t>(i)][static_cast<size_t>(i)] = T(1);
    }
    auto row_sub = [&](int dst, int src, const T& q) {  // row dst -= q * row src
        if (ops::is_zero(q)) return;
        for (int j = 0; j < nc; ++j) at(dst, j) = ops::sub(at(dst, j), ops::mul(q, at(src, j)));
        if (want_transforms)
            for (int j = 0; j < nr; ++j) {
                auto& u = U[static_cast<size_t>(dst)][static_cast<size_t>(j)];
                u = ops::sub(u, ops::mul(q, U[static_cast<size_t>(src)][static_cast<size_t>(j)]));
            }
    };
    auto col_sub = [&](int dst, int src, const T& q) {
        if (ops::is_zero(q)) return;
        for (int i = 0; i < nr; ++i) at(i, dst) = ops::sub(at(i, dst), ops::mul(q, at(i, src)));
        if (want_transforms)
            for (int i = 0; i < nc; ++i) {
                auto& v = V[static_cast<size_t>(i)][static_cast<size_t>(dst)];
                v = ops::sub(v, ops::mul(q, V[static_cast<size_t>(i)][static_cast<size_t>(src)]));
            }
    };
    auto row_swap = [&](int a, int b) {
        if (a == b) return;
        std::swap(M[static_cast<size_t>(a)], M[static_cast<size_t>(b)]);
        if (want_transforms) std::swap(U[static_cast<size_t>(a)], U[static_cast<size_t>(b)]);
    };
    auto col_swap = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < nr; ++i) std::swap(at(i, a), at(i, b));
        if (want_transforms)
            for (int i = 0; i < nc; ++i)
                std::swap(V[static_cast<size_t>(i)][static_cast<size_t>(a)],
                          V[static_cast<size_t>(i)][static_cast<size_t>(b)]);
    };
    auto row_negate = [&](int a) {
        for (int j = 0; j < nc; ++j) at(a, j) = ops::sub(T(0), at(a, j));
        if (want_transforms)
            for (int j = 0; j < nr; ++j) {
                auto& u = U[static_cast<size_t>(a)][static_cast<size_t>(j)];
                u = ops::sub(T(0), u);
            }
    };
    // truncated quotient phrased through the exact-division shim
    auto quot = [](const T& a, const T& b) { return ops::divx(ops::sub(a, a % b), b); };

    int t = 0;
    const int bound = std::min(nr, nc);
    while (t < bound) {
        // global smallest-magnitude pivot over the trailing submatrix,
        // re-chosen after every reduction pass: any surviving remainder is
        // strictly smaller than the current pivot, so it (or something
        // smaller) becomes the next pivot and entry growth stays tame
        int pr = -1, pc = -1;
        T best = T(0);
        for (int i = t; i < nr; ++i)
            for (int j = t; j < nc; ++j) {
                const T& v = at(i, j);
                if (ops::is_zero(v)) continue;
                T a = v < 0 ? ops::sub(T(0), v) : v;
                if (pr < 0 || a < best) {
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        row_swap(t, pr);
        col_swap(t, pc);
        // one reduction pass over row t and column t; remainders are left in
        // place and send us back to the pivot scan rather than being promoted
        // to pivot here together with their fill-in
        bool again = false;
        for (int i = t + 1; i < nr; ++i) {
            if (ops::is_zero(at(i, t))) continue;
            row_sub(i, t, quot(at(i, t), at(t, t)));
            if (!ops::is_zero(at(i, t))) again = true;
        }
        for (int j = t + 1; j < nc; ++j) {
            if (ops::is_zero(at(t, j))) continue;
            col_sub(j, t, quot(at(t, j), at(t, t)));
            if (!ops::is_zero(at(t, j))) again = true;
        }
        if (again) continue;
        // divisibility chain: the pivot must divide the whole trailing block
        // before it is frozen; fold one offending row into row t, which turns
        // the stray entry into a remainder on the next pass
        bool divides_all = true;
        for (int i = t + 1; i < nr && divides_all; ++i)
            for (int j = t + 1; j < nc; ++j)
                if (!ops::is_zero(at(i, j) % at(t, t))) {
                    row_sub(t, i, T(-1));  // row t += row i
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;
        if (at(t, t) < 0) row_negate(t);
        ++t;
    }
    SnfResult<T> out;
    for (int i = 0; i < t; ++i) out.diagonal.push_back(at(i, i));
    if (want_transforms) {
        out.U = std::move(U);
        out.V = std::move(V);
    }
    return out;
}

// rank over Q: one-step fraction-free (Bareiss) elimination on sparse rows;
// pivots chosen by a Markowitz minimal fill-in score
template <class T>
int64_t rank_over_q_t(const SparseMat<T>& input) {
    using ops = num_ops<T>;
    using Row = std::vector<std::pair<int, T>>;  // sorted by column
    std::vector<Row> rows(static_cast<size_t>(input.rows));
    {
        auto sorted = input.entries;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        for (auto& [r, c, v] : sorted) {
            auto& row = rows[static_cast<size_t>(r)];
            if (!row.empty() && row.back().first == c)
                row.back().second = ops::add(row.back().second, v);
            else
                row.emplace_back(c, v);
        }
        for (auto& row : rows)
            row.erase(std::remove_if(row.begin(), row.end(),
                                     [](const auto& e) { return ops::is_zero(e.second); }),
                      row.end());
    }
    std::vector<char> active(static_cast<size_t>(input.rows), 1);
    T prev = T(1);
    int64_t rank = 0;
    for (;;) {
        std::vector<int> colcnt(static_cast<size_t>(input.cols), 0);
        for (size_t r = 0; r < rows.size(); ++r)
            if (active[r])
                for (auto& [c, v] : rows[r]) ++colcnt[static_cast<size_t>(c)];
        long best = -1;
        int pr = -1, pc = -1;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!active[r] || rows[r].empty()) continue;
            for (auto& [c, v] : rows[r]) {
                long score = static_cast<long>(rows[r].size() - 1) *
                             static_cast<long>(colcnt[static_cast<size_t>(c)] - 1);
                if (best < 0 || score < best) {
                    best = score;
                    pr = static_cast<int>(r);
                    pc = c;
                }
            }
        }
        if (pr < 0) break;
        ++rank;
        const Row prow = rows[static_cast<size_t>(pr)];
        T pval = T(0);
        for (auto& [c, v] : prow)
            if (c == pc) pval = v;
        active[static_cast<size_t>(pr)] = 0;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!active[r] || rows[r].empty()) continue;
            T rv = T(0);
            for (auto& [c, v] : rows[r])
                if (c == pc) {
                    rv = v;
                    break;
                }
            Row next;
            next.reserve(rows[r].size() + prow.size());
            size_t a = 0, b = 0;
            const Row& cur = rows[r];
            // next = (pval*cur - rv*prow) / prev, dropping the pivot column
            while (a < cur.size() || b < prow.size()) {
                int ca = a < cur.size() ? cur[a].first : input.cols;
                int cb = b < prow.size() ? prow[b].first : input.cols;
                int col = std::min(ca, cb);
                T val = T(0);
                if (ca == col) val = ops::mul(pval, cur[a++].second);
                if (cb == col) val = ops::sub(val, ops::mul(rv, prow[b++].second));
                if (col != pc && !ops::is_zero(val)) next.emplace_back(col, ops::divx(val, prev));
            }
            rows[r] = std::move(next);
        }
        prev = pval;
    }
    return rank;
}

inline int64_t rank_over_q(const SparseMat<int64_t>& m) {
    try {
        return rank_over_q_t(m);
    } catch (const OverflowError&) {
        return rank_over_q_t(to_mpz(m));
    }
}

// rank over F_p by sparse Gaussian elimination
inline int64_t rank_mod_p(const SparseMat<int64_t>& input, int64_t p) {
    if (p < 2) throw std::invalid_argument("rank_mod_p: modulus must be >= 2");
    auto norm = [&](int64_t v) {
        v %= p;
        return v < 0 ? v + p : v;
    };
    auto inv = [&](int64_t a) {  // extended Euclid
        int64_t t = 0, nt = 1, r = p, nr = norm(a);
        while (nr != 0) {
            int64_t q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        if (r != 1) throw std::domain_error("rank_mod_p: modulus is not prime");
        return norm(t);
    };
    using Row = std::vector<std::pair<int, int64_t>>;
    std::vector<Row> rows(static_cast<size_t>(input.rows));
    {
        auto sorted = input.entries;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) <
                   std::tie(std::get<0>(b), std::get<1>(b));
        });
        for (auto& [r, c, v] : sorted) {
            int64_t w = norm(v);
            auto& row = rows[static_cast<size_t>(r)];
            if (!row.empty() && row.back().first == c)
                row.back().second = norm(row.back().second + w);
            else
                row.emplace_back(c, w);
        }
        for (auto& row : rows)
            row.erase(std::remove_if(row.begin(), row.end(),
                                     [](const auto& e) { return e.second == 0; }),
                      row.end());
    }
    std::vector<int> pivot_row_of_col(static_cast<size_t>(input.cols), -1);
    int64_t rank = 0;
    for (size_t r = 0; r < rows.size(); ++r) {
        Row row = std::move(rows[r]);
        rows[r].clear();
        for (;;) {
            if (row.empty()) break;
            int lead = row.front().first;
            int pr = pivot_row_of_col[static_cast<size_t>(lead)];
            if (pr < 0) {
                int64_t s = inv(row.front().second);
                for (auto& [c, v] : row) v = v * s % p;
                pivot_row_of_col[static_cast<size_t>(lead)] = static_cast<int>(r);
                rows[r] = std::move(row);
                ++rank;
                break;
            }
            const Row& prow = rows[static_cast<size_t>(pr)];
            int64_t f = row.front().second;
            Row next;
            next.reserve(row.size() + prow.size());
            size_t a = 0, b = 0;
            while (a < row.size() || b < prow.size()) {
                int ca = a < row.size() ? row[a].first : input.cols;
                int cb = b < prow.size() ? prow[b].first : input.cols;
                int col = std::min(ca, cb);
                int64_t val = 0;
                if (ca == col) val = row[a++].second;
                if (cb == col) val = norm(val - f * prow[b++].second % p);
                if (val != 0) next.emplace_back(col, val);
            }
            row = std::move(next);
        }
    }
    return rank;
}

// Smith invariant factors with the int64 -> arbitrary precision retry baked in
inline std::vector<int64_t> snf_diagonal(const SparseMat<int64_t>& m) {
    try {
        return smith_normal_form(m).diagonal;
    } catch (const OverflowError&) {
        std::vector<int64_t> out;
        for (const auto& d : smith_normal_form(to_mpz(m)).diagonal) {
            if (!d.fits_slong_p()) throw OverflowError("invariant factor exceeds int64");
            out.push_back(d.get_si());
        }
        return out;
    }
}

}  // namespace kho
