#pragma once
// Sparse Laurent polynomials in one variable (q) and two variables (t, q)
// with integer coefficients.  Zero coefficients are never stored.

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "kho/util.hpp"

namespace kho {

class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(int64_t c) {
        if (c) coef_[0] = c;
    }
    static Laurent monomial(int64_t c, int e) {
        Laurent p;
        if (c) p.coef_[e] = c;
        return p;
    }
    static Laurent q_plus_qinv() {
        Laurent p;
        p.coef_[1] = 1;
        p.coef_[-1] = 1;
        return p;
    }

    const std::map<int, int64_t>& terms() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }
    int64_t coeff(int e) const {
        auto it = coef_.find(e);
        return it == coef_.end() ? 0 : it->second;
    }
    int min_exp() const { return coef_.empty() ? 0 : coef_.begin()->first; }
    int max_exp() const { return coef_.empty() ? 0 : coef_.rbegin()->first; }

    void add_term(int e, int64_t c) {
        if (!c) return;
        auto [it, inserted] = coef_.emplace(e, c);
        if (!inserted) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) coef_.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o) {
        for (auto [e, c] : o.coef_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (auto [e, c] : o.coef_) add_term(e, checked_sub(0, c));
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (auto [ea, ca] : a.coef_)
            for (auto [eb, cb] : b.coef_) r.add_term(ea + eb, checked_mul(ca, cb));
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    friend Laurent operator*(int64_t s, const Laurent& a) {
        Laurent r;
        for (auto [e, c] : a.coef_) r.add_term(e, checked_mul(s, c));
        return r;
    }
    // multiply by q^k
    Laurent shifted(int k) const {
        Laurent r;
        for (auto [e, c] : coef_) r.coef_[e + k] = c;
        return r;
    }
    Laurent pow(int n) const {
        Laurent r(1);
        for (int k = 0; k < n; ++k) r *= *this;
        return r;
    }
    bool operator==(const Laurent& o) const { return coef_ == o.coef_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // evaluate at q = sqrt(-1); returns the Gaussian integer (re, im)
    std::pair<int64_t, int64_t> eval_gaussian() const {
        int64_t re = 0, im = 0;
        for (auto [e, c] : coef_) {
            switch (((e % 4) + 4) % 4) {
                case 0: re = checked_add(re, c); break;
                case 1: im = checked_add(im, c); break;
                case 2: re = checked_sub(re, c); break;
                case 3: im = checked_sub(im, c); break;
            }
        }
        return {re, im};
    }

    // exact division by (q + q^{-1}); throws if not divisible
    Laurent div_q_plus_qinv() const {
        if (coef_.empty()) return {};
        // (q + 1/q) R = this  <=>  Q = R (1 + q^2) with Q = this * q
        Laurent q = shifted(1);
        Laurent r;
        int lo = q.min_exp(), hi = q.max_exp();
        for (int k = lo; k <= hi; ++k) {
            int64_t rk = checked_sub(q.coeff(k), k - 2 >= lo ? r.coeff(k - 2) : 0);
            if (k > hi - 2 && rk != 0) throw std::domain_error("not divisible by q + 1/q");
            r.add_term(k, rk);
        }
        return r;
    }

    std::string str(const std::string& var = "q") const {
        if (coef_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto [e, c] : coef_) {
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            int64_t a = c < 0 ? -c : c;
            if (a != 1 || e == 0) os << a;
            if (e != 0) {
                os << var;
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

  private:
    std::map<int, int64_t> coef_;
};

// two variables: exponent pairs (t, q), ordered lexicographically
class Laurent2 {
  public:
    Laurent2() = default;
    static Laurent2 monomial(int64_t c, int et, int eq) {
        Laurent2 p;
        if (c) p.coef_[{et, eq}] = c;
        return p;
    }
    const std::map<std::pair<int, int>, int64_t>& terms() const { return coef_; }
    bool is_zero() const { return coef_.empty(); }

    void add_term(int et, int eq, int64_t c) {
        if (!c) return;
        auto key = std::make_pair(et, eq);
        auto [it, inserted] = coef_.emplace(key, c);
        if (!inserted) {
            it->second = checked_add(it->second, c);
            if (it->second == 0) coef_.erase(it);
        }
    }
    Laurent2& operator+=(const Laurent2& o) {
        for (auto& [e, c] : o.coef_) add_term(e.first, e.second, c);
        return *this;
    }
    friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
    friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
        Laurent2 r;
        for (auto& [ea, ca] : a.coef_)
            for (auto& [eb, cb] : b.coef_)
                r.add_term(ea.first + eb.first, ea.second + eb.second, checked_mul(ca, cb));
        return r;
    }
    bool operator==(const Laurent2& o) const { return coef_ == o.coef_; }
    bool operator!=(const Laurent2& o) const { return !(*this == o); }

    // specialize t -> -1 (graded Euler characteristic of a Poincare polynomial)
    Laurent at_t_minus_one() const {
        Laurent r;
        for (auto& [e, c] : coef_) r.add_term(e.second, (e.first % 2) ? checked_sub(0, c) : c);
        return r;
    }

    std::string str() const {
        if (coef_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : coef_) {
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            int64_t a = c < 0 ? -c : c;
            bool has_var = e.first != 0 || e.second != 0;
            if (a != 1 || !has_var) os << a;
            if (e.first != 0) {
                os << "t";
                if (e.first != 1) os << "^" << e.first;
            }
            if (e.second != 0) {
                if (e.first != 0) os << " ";
                os << "q";
                if (e.second != 1) os << "^" << e.second;
            }
            first = false;
        }
        return os.str();
    }

  private:
    std::map<std::pair<int, int>, int64_t> coef_;
};

// embed a polynomial in q as a two-variable polynomial with t-degree 0
inline Laurent2 as_laurent2_q(const Laurent& f) {
    Laurent2 r;
    for (auto [e, c] : f.terms()) r.add_term(0, e, c);
    return r;
}

}  // namespace kho
