#pragma once
// Homology of the cube complexes.  The differential preserves the internal
// degree, so the complex splits into blocks, one per internal degree; each
// block is reduced by unit cancellation and finished off with Smith normal
// form (over Z), fraction-free rank (over Q) or mod-p rank (over F_p).
// Blocks are assembled lazily, one internal degree at a time, which keeps
// memory bounded for large diagrams; independent blocks can run on worker
// threads.

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kho/complex.hpp"
#include "kho/cube_even.hpp"
#include "kho/cube_odd.hpp"
#include "kho/laurent.hpp"
#include "kho/reduce.hpp"
#include "kho/snf.hpp"

namespace kho {

struct AbelianGroup {
    int64_t rank = 0;
    std::vector<int64_t> torsion;  // invariant factors > 1, divisibility chain

    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
    std::string str() const {
        std::string s;
        if (rank) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
        for (int64_t t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
        return s.empty() ? "0" : s;
    }
};

struct HomologyTable {
    std::map<std::pair<int, int>, AbelianGroup> groups;  // (i, j) -> nonzero group

    void set(int i, int j, AbelianGroup g) {
        if (!g.trivial()) groups[{i, j}] = std::move(g);
    }
    const AbelianGroup* at(int i, int j) const {
        auto it = groups.find({i, j});
        return it == groups.end() ? nullptr : &it->second;
    }
    bool operator==(const HomologyTable& o) const { return groups == o.groups; }
    bool operator!=(const HomologyTable& o) const { return !(*this == o); }

    int64_t total_rank() const {
        int64_t r = 0;
        for (const auto& [ij, g] : groups) r += g.rank;
        return r;
    }
    int64_t total_dim_with_torsion() const {
        int64_t r = 0;
        for (const auto& [ij, g] : groups) r += g.rank + static_cast<int64_t>(g.torsion.size());
        return r;
    }
    // ranks as a polynomial in (t, q)
    Laurent2 poincare() const {
        Laurent2 p;
        for (const auto& [ij, g] : groups) p.add_term(ij.first, ij.second, g.rank);
        return p;
    }
    // shift: H^{i,j} -> H^{i+di, j+dj}
    HomologyTable shifted(int di, int dj) const {
        HomologyTable t;
        for (const auto& [ij, g] : groups) t.groups[{ij.first + di, ij.second + dj}] = g;
        return t;
    }
};

// homology groups of one internal-degree block, indexed by level
inline std::vector<AbelianGroup> block_homology(const ChainComplex& block, RingSpec ring,
                                                bool use_reduction = true) {
    const int L = block.levels();
    std::vector<AbelianGroup> out(static_cast<size_t>(L));
    if (L == 0) return out;

    auto assemble = [&](const std::vector<int>& dims, const std::vector<int64_t>& ranks,
                        const std::vector<std::vector<int64_t>>& factors) {
        for (int k = 0; k < L; ++k) {
            auto kk = static_cast<size_t>(k);
            int64_t r_out = k < L - 1 ? ranks[kk] : 0;
            int64_t r_in = k > 0 ? ranks[kk - 1] : 0;
            out[kk].rank = dims[kk] - r_out - r_in;
            if (out[kk].rank < 0) throw std::logic_error("negative homology rank");
            if (ring.ring == Ring::Z && k > 0)
                for (int64_t f : factors[kk - 1])
                    if (f != 1 && f != -1) out[kk].torsion.push_back(f);
        }
    };

    try {
        ChainComplex red = use_reduction ? reduce_complex(block) : block;
        std::vector<int> dims(static_cast<size_t>(L));
        for (int k = 0; k < L; ++k) dims[static_cast<size_t>(k)] = red.dim(k);
        std::vector<int64_t> ranks(red.d.size(), 0);
        std::vector<std::vector<int64_t>> factors(red.d.size());
        for (size_t k = 0; k < red.d.size(); ++k) {
            if (ring.ring == Ring::Z) {
                factors[k] = snf_diagonal(red.d[k]);
                ranks[k] = static_cast<int64_t>(factors[k].size());
            } else if (ring.ring == Ring::Q) {
                ranks[k] = rank_over_q(red.d[k]);
            } else {
                ranks[k] = rank_mod_p(red.d[k], ring.p);
            }
        }
        assemble(dims, ranks, factors);
        return out;
    } catch (const OverflowError&) {
        // the int64 route overflowed somewhere: redo everything in mpz
    }
    ComplexT<mpz_class> big = to_mpz(block);
    ComplexT<mpz_class> red = use_reduction ? reduce_complex(big) : big;
    std::vector<int> dims(static_cast<size_t>(L));
    for (int k = 0; k < L; ++k) dims[static_cast<size_t>(k)] = red.dim(k);
    std::vector<int64_t> ranks(red.d.size(), 0);
    std::vector<std::vector<int64_t>> factors(red.d.size());
    for (size_t k = 0; k < red.d.size(); ++k) {
        if (ring.ring == Ring::Z) {
            auto snf = smith_normal_form(red.d[k]);
            for (const auto& f : snf.diagonal) {
                if (!f.fits_slong_p()) throw OverflowError("invariant factor exceeds int64");
                factors[k].push_back(f.get_si());
            }
            ranks[k] = snf.rank();
        } else if (ring.ring == Ring::Q) {
            ranks[k] = rank_over_q_t(red.d[k]);
        } else {
            // entries mod p fit in int64
            SparseMat<int64_t> m(red.d[k].rows, red.d[k].cols);
            for (const auto& [r, c, v] : red.d[k].entries) {
                mpz_class q = v % ring.p;
                m.entries.emplace_back(r, c, q.get_si());
            }
            ranks[k] = rank_mod_p(m, ring.p);
        }
    }
    assemble(dims, ranks, factors);
    return out;
}

// bigraded homology of a full complex (used by oracle tests): split into
// internal-degree blocks first
inline HomologyTable homology_of_complex(const ChainComplex& C, RingSpec ring,
                                         bool use_reduction = true) {
    std::map<int, char> qs;
    for (const auto& lvl : C.qdeg)
        for (int q : lvl) qs[q] = 1;
    HomologyTable table;
    for (const auto& [q, one] : qs) {
        auto groups = block_homology(C.block(q), ring, use_reduction);
        for (int k = 0; k < static_cast<int>(groups.size()); ++k)
            table.set(C.i_min + k, q, std::move(groups[static_cast<size_t>(k)]));
    }
    return table;
}

enum class Variant { Even, EvenReduced, Odd, OddReduced };

inline std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Even: return "even";
        case Variant::EvenReduced: return "even-reduced";
        case Variant::Odd: return "odd";
        case Variant::OddReduced: return "odd-reduced";
    }
    return "?";
}
inline Variant parse_variant(const std::string& s) {
    if (s == "even") return Variant::Even;
    if (s == "even-reduced") return Variant::EvenReduced;
    if (s == "odd") return Variant::Odd;
    if (s == "odd-reduced") return Variant::OddReduced;
    throw std::invalid_argument("unknown variant \"" + s +
                                "\" (expected even|even-reduced|odd|odd-reduced)");
}

struct HomologyOptions {
    bool use_reduction = true;
    int jobs = 1;
    std::optional<ArrowChoice> arrows;       // odd variants: override default arrows
    const OddSigns* signs = nullptr;         // odd variants: reuse a solved assignment
};

// the main driver: bigraded homology of a link diagram
inline HomologyTable khovanov_homology(const PlanarDiagram& D, Variant variant, RingSpec ring,
                                       const HomologyOptions& opts = {}) {
    Cube cube(D);
    const bool odd = variant == Variant::Odd || variant == Variant::OddReduced;
    const bool reduced = variant == Variant::EvenReduced || variant == Variant::OddReduced;

    ArrowChoice arrows;
    std::optional<OddSigns> solved;
    const OddSigns* signs = nullptr;
    if (odd) {
        arrows = opts.arrows ? *opts.arrows : default_arrows(D);
        if (opts.signs) {
            signs = opts.signs;
        } else {
            solved.emplace(solve_odd_signs(D, arrows));
            signs = &*solved;
        }
    }

    // the reduced theories sit one internal degree above the raw labels
    const int qshift = reduced ? 1 : 0;
    auto [qlo, qhi] = cube.q_range();
    qlo += qshift;
    qhi += qshift;
    std::vector<int> js;
    for (int j = qlo; j <= qhi; j += 2) js.push_back(j);
    // q parity is uniform across the cube; make sure qlo matches it
    if (!js.empty()) {
        int c0 = D.resolve_state(0).circles;
        int parity = ((cube.j_of(0) + c0 + qshift) % 2 + 2) % 2;
        if (((qlo % 2) + 2) % 2 != parity)
            throw std::logic_error("internal degree parity mismatch");
    }

    HomologyTable table;
    std::mutex mu;
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t t = next.fetch_add(1);
            if (t >= js.size()) return;
            int j = js[t];
            ChainComplex block = odd ? build_odd(D, reduced, *signs, arrows, j)
                                     : build_even(D, reduced, j);
            auto groups = block_homology(block, ring, opts.use_reduction);
            std::lock_guard<std::mutex> lk(mu);
            for (int k = 0; k < static_cast<int>(groups.size()); ++k)
                table.set(block.i_min + k, j, std::move(groups[static_cast<size_t>(k)]));
        }
    };
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return table;
}

}  // namespace kho
