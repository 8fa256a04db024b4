#pragma once
// Minimal sparse integer matrices: triplet assembly plus the handful of
// operations the homology pipeline needs (transpose, multiply, conversions).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "kho/util.hpp"

namespace kho {

template <class T>
struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<std::tuple<int, int, T>> entries;  // (row, col, value), value != 0

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c) {}

    void add(int r, int c, T v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("sparse entry out of range");
        if (!num_ops<T>::is_zero(v)) entries.emplace_back(r, c, std::move(v));
    }
    size_t nnz() const { return entries.size(); }

    // combine duplicate positions, drop zeros
    void normalize() {
        std::map<std::pair<int, int>, T> acc;
        for (auto& [r, c, v] : entries) {
            auto [it, fresh] = acc.emplace(std::make_pair(r, c), v);
            if (!fresh) it->second = num_ops<T>::add(it->second, v);
        }
        entries.clear();
        for (auto& [rc, v] : acc)
            if (!num_ops<T>::is_zero(v)) entries.emplace_back(rc.first, rc.second, v);
    }

    SparseMat transposed() const {
        SparseMat t(cols, rows);
        for (const auto& [r, c, v] : entries) t.entries.emplace_back(c, r, v);
        return t;
    }

    std::vector<std::vector<T>> to_dense() const {
        std::vector<std::vector<T>> d(static_cast<size_t>(rows),
                                      std::vector<T>(static_cast<size_t>(cols), T(0)));
        for (const auto& [r, c, v] : entries)
            d[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                num_ops<T>::add(d[static_cast<size_t>(r)][static_cast<size_t>(c)], v);
        return d;
    }

    bool is_zero() const {
        for (const auto& [r, c, v] : entries)
            if (!num_ops<T>::is_zero(v)) return false;
        return true;
    }
};

// (a * b) with overflow checking through num_ops
template <class T>
SparseMat<T> multiply(const SparseMat<T>& a, const SparseMat<T>& b) {
    if (a.cols != b.rows) throw std::invalid_argument("sparse multiply: shape mismatch");
    // rows of b indexed for the traversal
    std::vector<std::vector<std::pair<int, const T*>>> brows(static_cast<size_t>(b.rows));
    for (const auto& [r, c, v] : b.entries) brows[static_cast<size_t>(r)].emplace_back(c, &v);
    std::map<std::pair<int, int>, T> acc;
    for (const auto& [r, c, v] : a.entries)
        for (const auto& [c2, v2] : brows[static_cast<size_t>(c)]) {
            auto key = std::make_pair(r, c2);
            T prod = num_ops<T>::mul(v, *v2);
            auto [it, fresh] = acc.emplace(key, prod);
            if (!fresh) it->second = num_ops<T>::add(it->second, prod);
        }
    SparseMat<T> out(a.rows, b.cols);
    for (auto& [rc, v] : acc)
        if (!num_ops<T>::is_zero(v)) out.entries.emplace_back(rc.first, rc.second, v);
    return out;
}

inline SparseMat<mpz_class> to_mpz(const SparseMat<int64_t>& a) {
    SparseMat<mpz_class> out(a.rows, a.cols);
    out.entries.reserve(a.entries.size());
    for (const auto& [r, c, v] : a.entries)
        out.entries.emplace_back(r, c, num_ops<mpz_class>::from_int(v));
    return out;
}

}  // namespace kho
