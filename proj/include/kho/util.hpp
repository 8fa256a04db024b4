#pragma once
// Small shared utilities: overflow-checked 64-bit arithmetic with an
// arbitrary-precision escape hatch, fixed-popcount subset enumeration and
// ranking (combinatorial number system), and a stable content hash.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace kho {

// single source of truth for the tool version; cache entries are keyed on it
inline constexpr const char* kho_version = "1.0.0";

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in +");
    return r;
}
inline int64_t checked_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in -");
    return r;
}
inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in *");
    return r;
}

// Arithmetic shims so templated exact linear algebra can run on checked
// int64 first and be retried on mpz_class only when a computation overflows.
template <class T> struct num_ops {
    static T add(const T& a, const T& b) { return a + b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T mul(const T& a, const T& b) { return a * b; }
    // exact division; quotient is known to be integral
    static T divx(const T& a, const T& b) { return a / b; }
    static bool is_zero(const T& a) { return a == 0; }
    static T from_int(int64_t v) { return T(v); }
};
template <> struct num_ops<int64_t> {
    static int64_t add(int64_t a, int64_t b) { return checked_add(a, b); }
    static int64_t sub(int64_t a, int64_t b) { return checked_sub(a, b); }
    static int64_t mul(int64_t a, int64_t b) { return checked_mul(a, b); }
    static int64_t divx(int64_t a, int64_t b) { return a / b; }
    static bool is_zero(int64_t a) { return a == 0; }
    static int64_t from_int(int64_t v) { return v; }
};
template <> struct num_ops<mpz_class> {
    static mpz_class add(const mpz_class& a, const mpz_class& b) { return a + b; }
    static mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
    static mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
    static mpz_class divx(const mpz_class& a, const mpz_class& b) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static bool is_zero(const mpz_class& a) { return a == 0; }
    static mpz_class from_int(int64_t v) { return mpz_class(static_cast<long>(v)); }
};

inline int popcount64(uint64_t v) { return __builtin_popcountll(v); }

// binomial coefficients, exact in int64 for all n <= 60
inline int64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    static const auto table = [] {
        std::vector<std::vector<int64_t>> t(61);
        for (int i = 0; i <= 60; ++i) {
            t[i].resize(i + 1);
            t[i][0] = t[i][i] = 1;
            for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
        return t;
    }();
    if (n > 60) throw std::out_of_range("binom: n > 60");
    return table[n][k];
}

// next bitmask with the same popcount, ascending numeric order (Gosper)
inline uint64_t next_same_popcount(uint64_t v) {
    uint64_t c = v & -v;
    uint64_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

// rank of `mask` among all masks with the same popcount, ascending numeric
// order; the combinatorial number system: rank = sum C(b_t, t) over the set
// bits b_1 < b_2 < ... (0-indexed positions, t = 1-based index)
inline int64_t subset_rank(uint64_t mask) {
    int64_t r = 0, t = 1;
    while (mask) {
        int b = __builtin_ctzll(mask);
        r += binom(b, static_cast<int>(t++));
        mask &= mask - 1;
    }
    return r;
}

// FNV-1a, used for content-addressed caching and memo keys
inline uint64_t fnv1a(std::string_view s, uint64_t h = 14695981039346656037ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int k = 15; k >= 0; --k, v >>= 4) s[static_cast<size_t>(k)] = digits[v & 0xf];
    return s;
}

}  // namespace kho
