#pragma once
// Finite chain complexes of free modules with an internal (quantum) grading
// on each basis element.  Differentials are integer matrices; d[k] maps
// level k to level k+1 and preserves the internal grading for all the cube
// complexes (the Lee complex carries its filtered correction separately).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kho/laurent.hpp"
#include "kho/sparse.hpp"

namespace kho {

enum class Ring { Z, Q, Fp };
struct RingSpec {
    Ring ring = Ring::Z;
    int64_t p = 0;  // prime, for Ring::Fp

    static RingSpec Z() { return {Ring::Z, 0}; }
    static RingSpec Q() { return {Ring::Q, 0}; }
    static RingSpec F(int64_t p) { return {Ring::Fp, p}; }
    std::string str() const {
        if (ring == Ring::Z) return "Z";
        if (ring == Ring::Q) return "Q";
        return "F" + std::to_string(p);
    }
};

inline RingSpec parse_ring(const std::string& s) {
    if (s == "Z") return RingSpec::Z();
    if (s == "Q") return RingSpec::Q();
    if (s.rfind("Fp:", 0) == 0) {
        int64_t p;
        try {
            p = std::stoll(s.substr(3));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad ring \"" + s + "\"");
        }
        if (p < 2) throw std::invalid_argument("field characteristic must be a prime >= 2");
        for (int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
        return RingSpec::F(p);
    }
    throw std::invalid_argument("unknown ring \"" + s + "\" (expected Z|Q|Fp:<p>)");
}

template <class T>
struct ComplexT {
    int i_min = 0;  // homological degree of levels[0]
    std::vector<std::vector<int>> qdeg;  // per level, per basis element
    std::vector<SparseMat<T>> d;         // d[k]: level k -> level k+1

    int levels() const { return static_cast<int>(qdeg.size()); }
    int dim(int k) const { return static_cast<int>(qdeg[static_cast<size_t>(k)].size()); }
    int64_t total_dim() const {
        int64_t n = 0;
        for (int k = 0; k < levels(); ++k) n += dim(k);
        return n;
    }

    void validate_shapes() const {
        if (d.size() + 1 != qdeg.size() && !(qdeg.size() <= 1 && d.empty()))
            throw std::logic_error("complex: differential count mismatch");
        for (size_t k = 0; k < d.size(); ++k)
            if (d[k].cols != dim(static_cast<int>(k)) || d[k].rows != dim(static_cast<int>(k) + 1))
                throw std::logic_error("complex: differential shape mismatch");
    }

    bool d_squared_is_zero() const {
        for (size_t k = 0; k + 1 < d.size(); ++k)
            if (!multiply(d[k + 1], d[k]).is_zero()) return false;
        return true;
    }

    // every differential entry must connect equal internal degrees
    bool preserves_qdeg() const {
        for (size_t k = 0; k < d.size(); ++k)
            for (const auto& [r, c, v] : d[k].entries)
                if (qdeg[k][static_cast<size_t>(c)] != qdeg[k + 1][static_cast<size_t>(r)])
                    return false;
        return true;
    }

    Laurent2 graded_dimensions() const {
        Laurent2 p;
        for (int k = 0; k < levels(); ++k)
            for (int q : qdeg[static_cast<size_t>(k)]) p.add_term(i_min + k, q, 1);
        return p;
    }
    Laurent euler_characteristic() const { return graded_dimensions().at_t_minus_one(); }

    // the sub-block spanned by basis elements of one internal degree
    ComplexT block(int q) const {
        ComplexT b;
        b.i_min = i_min;
        b.qdeg.assign(qdeg.size(), {});
        std::vector<std::vector<int>> keep(qdeg.size());
        for (size_t k = 0; k < qdeg.size(); ++k) {
            keep[k].assign(qdeg[k].size(), -1);
            int next = 0;
            for (size_t x = 0; x < qdeg[k].size(); ++x)
                if (qdeg[k][x] == q) {
                    keep[k][x] = next++;
                    b.qdeg[k].push_back(q);
                }
        }
        for (size_t k = 0; k < d.size(); ++k) {
            SparseMat<T> m(static_cast<int>(b.qdeg[k + 1].size()),
                           static_cast<int>(b.qdeg[k].size()));
            for (const auto& [r, c, v] : d[k].entries)
                if (keep[k][static_cast<size_t>(c)] >= 0 &&
                    keep[k + 1][static_cast<size_t>(r)] >= 0)
                    m.entries.emplace_back(keep[k + 1][static_cast<size_t>(r)],
                                           keep[k][static_cast<size_t>(c)], v);
            b.d.push_back(std::move(m));
        }
        return b;
    }
};

using ChainComplex = ComplexT<int64_t>;

inline ComplexT<mpz_class> to_mpz(const ChainComplex& c) {
    ComplexT<mpz_class> out;
    out.i_min = c.i_min;
    out.qdeg = c.qdeg;
    out.d.reserve(c.d.size());
    for (const auto& m : c.d) out.d.push_back(to_mpz(m));
    return out;
}

}  // namespace kho
