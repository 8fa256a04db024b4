#pragma once
// The even cube complex: circles of each resolution carry the rank-two
// Frobenius algebra, cube edges act by multiplication / comultiplication with
// the alternating sign (-1)^{#negative markers above the flipped crossing}.
// A basis element is (state, label mask), bit s of the mask meaning circle s
// is labelled X.  The reduced flavour keeps the subcomplex where the marked
// circle is labelled X.  The same assembly routine also produces the Lee
// correction differential from the deformed structure maps.

#include <cstdint>
#include <optional>
#include <vector>

#include "kho/complex.hpp"
#include "kho/cube.hpp"
#include "kho/frobenius.hpp"

namespace kho {

// drop a known-set bit b from mask (reduced-basis indexing)
inline uint64_t mask_compress(uint64_t mask, int b) {
    return (mask & ((uint64_t(1) << b) - 1)) | ((mask >> (b + 1)) << b);
}
inline uint64_t mask_expand(uint64_t packed, int b) {
    return (packed & ((uint64_t(1) << b) - 1)) | (uint64_t(1) << b) | ((packed >> b) << (b + 1));
}

namespace detail {

struct EvenTerm {
    uint64_t mask;
    int64_t coeff;
};

// apply one cube edge to a labelled source resolution
inline void even_edge_terms(const EdgeInfo& e, uint64_t mask, const FrobeniusSpec& F,
                            std::vector<EvenTerm>& out) {
    out.clear();
    uint64_t base = 0;
    uint64_t rest = mask;
    while (rest) {
        int s = __builtin_ctzll(rest);
        rest &= rest - 1;
        if (e.merge ? (s == e.a || s == e.b) : (s == e.m)) continue;
        base |= uint64_t(1) << e.eta[static_cast<size_t>(s)];
    }
    if (e.merge) {
        int x = static_cast<int>(mask >> e.a & 1), y = static_cast<int>(mask >> e.b & 1);
        for (const auto& t : F.mul[static_cast<size_t>(x)][static_cast<size_t>(y)])
            out.push_back({base | (t.label ? uint64_t(1) << e.m : 0), t.coeff});
    } else {
        int x = static_cast<int>(mask >> e.m & 1);
        for (const auto& t : F.comul[static_cast<size_t>(x)])
            out.push_back({base | (t.a ? uint64_t(1) << e.a : 0) | (t.b ? uint64_t(1) << e.b : 0),
                           t.coeff});
    }
}

// per-level basis layout: states ascending, then masks ascending
struct LevelLayout {
    std::vector<uint64_t> states;
    std::vector<Resolution> res;
    std::vector<int64_t> offset;  // per state, start of its mask slots
    int64_t dim = 0;
};

}  // namespace detail

// Build the even complex; when only_j is set, just the sub-block of internal
// degree *only_j (the differential preserves it).  All levels are present,
// possibly with dimension zero.
inline ChainComplex build_even(const PlanarDiagram& D, bool reduced,
                               std::optional<int> only_j = std::nullopt,
                               const FrobeniusSpec& F = khovanov_algebra(),
                               std::vector<SparseMat<int64_t>>* second_d = nullptr,
                               const FrobeniusSpec* F2 = nullptr) {
    Cube cube(D);
    const int n = cube.n;
    // the reduced theory is conventionally shifted one degree up, so the
    // pinned X on the marked circle contributes nothing
    const int qshift = reduced ? 1 : 0;
    ChainComplex C;
    C.i_min = cube.i_min();
    C.qdeg.resize(static_cast<size_t>(n) + 1);

    // how many label masks a state contributes, and their enumeration
    auto masks_of = [&](uint64_t v, const Resolution& r, std::vector<uint64_t>& out) {
        out.clear();
        int circ = r.circles;
        int usable = reduced ? circ - 1 : circ;  // marked circle pinned to X
        if (!only_j) {
            for (uint64_t m = 0; m < (uint64_t(1) << usable); ++m)
                out.push_back(reduced ? mask_expand(m, r.marked) : m);
            return;
        }
        int delta = cube.j_of(v) + circ + qshift - *only_j;
        if (delta % 2 != 0) return;
        int rr = delta / 2;  // popcount of the full mask
        int pick = reduced ? rr - 1 : rr;
        if (pick < 0 || pick > usable) return;
        if (pick == 0) {
            out.push_back(reduced ? mask_expand(0, r.marked) : 0);
            return;
        }
        uint64_t m = (uint64_t(1) << pick) - 1;
        uint64_t last = m << (usable - pick);
        for (;;) {
            out.push_back(reduced ? mask_expand(m, r.marked) : m);
            if (m == last) break;
            m = next_same_popcount(m);
        }
    };
    // index of a mask inside its state's slots (must be one of masks_of)
    auto mask_index = [&](uint64_t mask, const Resolution& r) -> int64_t {
        uint64_t m = reduced ? mask_compress(mask, r.marked) : mask;
        return only_j ? subset_rank(m) : static_cast<int64_t>(m);
    };

    std::vector<detail::LevelLayout> layout(static_cast<size_t>(n) + 1);
    std::vector<uint64_t> mask_buf;
    for (int k = 0; k <= n; ++k) {
        auto& L = layout[static_cast<size_t>(k)];
        L.states = cube.level_states(k);
        L.res.reserve(L.states.size());
        L.offset.reserve(L.states.size());
        for (uint64_t v : L.states) {
            L.res.push_back(D.resolve_state(v));
            L.offset.push_back(L.dim);
            masks_of(v, L.res.back(), mask_buf);
            for (uint64_t m : mask_buf)
                C.qdeg[static_cast<size_t>(k)].push_back(
                    cube.qdeg(v, L.res.back().circles, m) + qshift);
            L.dim += static_cast<int64_t>(mask_buf.size());
        }
    }

    std::vector<detail::EvenTerm> terms;
    for (int k = 0; k < n; ++k) {
        const auto& src = layout[static_cast<size_t>(k)];
        const auto& dst = layout[static_cast<size_t>(k) + 1];
        SparseMat<int64_t> M(static_cast<int>(dst.dim), static_cast<int>(src.dim));
        SparseMat<int64_t> M2(static_cast<int>(dst.dim), static_cast<int>(src.dim));
        for (size_t si = 0; si < src.states.size(); ++si) {
            uint64_t v = src.states[si];
            masks_of(v, src.res[si], mask_buf);
            if (mask_buf.empty()) continue;
            auto source_masks = mask_buf;
            for (int c = 0; c < n; ++c) {
                if (v >> c & 1) continue;
                uint64_t wst = v | (uint64_t(1) << c);
                size_t di = static_cast<size_t>(subset_rank(wst));
                EdgeInfo e = edge_info(D, c, src.res[si], dst.res[di]);
                int sgn = even_edge_sign(v, c);
                for (size_t mi = 0; mi < source_masks.size(); ++mi) {
                    int64_t col = src.offset[si] + static_cast<int64_t>(mi);
                    detail::even_edge_terms(e, source_masks[mi], F, terms);
                    for (const auto& t : terms)
                        M.add(static_cast<int>(dst.offset[di] + mask_index(t.mask, dst.res[di])),
                              static_cast<int>(col), sgn * t.coeff);
                    if (second_d && F2) {
                        detail::even_edge_terms(e, source_masks[mi], *F2, terms);
                        for (const auto& t : terms)
                            M2.add(static_cast<int>(dst.offset[di] +
                                                    mask_index(t.mask, dst.res[di])),
                                   static_cast<int>(col), sgn * t.coeff);
                    }
                }
            }
        }
        M.normalize();
        C.d.push_back(std::move(M));
        if (second_d) {
            M2.normalize();
            second_d->push_back(std::move(M2));
        }
    }
    return C;
}

inline ChainComplex build_even_complex(const PlanarDiagram& D, bool reduced = false) {
    return build_even(D, reduced);
}
inline ChainComplex build_even_block(const PlanarDiagram& D, int j, bool reduced = false) {
    return build_even(D, reduced, j);
}

// the Lee complex: base differential plus the filtered degree-raising part
struct FilteredComplex {
    ChainComplex base;                       // d, preserves internal degree
    std::vector<SparseMat<int64_t>> dprime;  // d', raises it by 4

    std::vector<SparseMat<int64_t>> total() const {
        std::vector<SparseMat<int64_t>> t;
        for (size_t k = 0; k < base.d.size(); ++k) {
            SparseMat<int64_t> m = base.d[k];
            for (const auto& [r, c, v] : dprime[k].entries) m.entries.emplace_back(r, c, v);
            m.normalize();
            t.push_back(std::move(m));
        }
        return t;
    }
};

inline FilteredComplex build_lee_complex(const PlanarDiagram& D) {
    FilteredComplex fc;
    fc.base = build_even(D, false, std::nullopt, khovanov_algebra(), &fc.dprime,
                         &lee_deformation());
    return fc;
}

}  // namespace kho
