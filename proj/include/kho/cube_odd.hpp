#pragma once
// The odd cube complex.  Circles of a resolution generate an exterior
// algebra; a merge quotients by (X_a - X_b), a split wedges with
// (X_tail - X_head) where the arrow choice at the crossing picks which of
// the two new circles is the tail.  Squares of the unsigned cube commute or
// anticommute (or vanish); a global GF(2) linear system assigns each edge a
// sign making every square anticommute, so the signed cube is a complex.
// Wedge monomials are kept as bitmasks of circles in ascending order;
// reordering signs are inversion parities.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "kho/complex.hpp"
#include "kho/cube.hpp"
#include "kho/cube_even.hpp"  // mask_compress / mask_expand

namespace kho {

using ArrowChoice = std::vector<uint8_t>;  // one bit per crossing

// canonical arrows: tail at the resolution arc through the lower-numbered
// half-edge (arc (e0,e3) for bit 0, arc (e1,e2) for bit 1)
inline ArrowChoice default_arrows(const PlanarDiagram& D) {
    ArrowChoice a(static_cast<size_t>(D.size()), 0);
    for (int c = 0; c < D.size(); ++c) {
        const auto& e = D.crossings[static_cast<size_t>(c)].e;
        a[static_cast<size_t>(c)] =
            std::min(e[0], e[3]) < std::min(e[1], e[2]) ? 0 : 1;
    }
    return a;
}

namespace detail {

struct OddTerm {
    uint64_t mask;
    int64_t coeff;
};

// parity of inversions needed to sort `seq`; -1 if it has a duplicate
inline int sort_sign(std::vector<int>& seq) {
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) return 0;
            if (seq[i] > seq[j]) ++inv;
        }
    return inv % 2 ? -1 : 1;
}

// unsigned odd edge map on one wedge monomial
inline void odd_edge_terms(const EdgeInfo& e, uint64_t mask, int arrow_bit,
                           std::vector<OddTerm>& out) {
    out.clear();
    static thread_local std::vector<int> seq;
    seq.clear();
    if (e.merge) {
        if ((mask >> e.a & 1) && (mask >> e.b & 1)) return;  // X wedge X = 0
        uint64_t rest = mask;
        while (rest) {
            int s = __builtin_ctzll(rest);
            rest &= rest - 1;
            seq.push_back(e.eta[static_cast<size_t>(s)]);
        }
        int sg = sort_sign(seq);
        if (!sg) return;
        uint64_t target = 0;
        for (int x : seq) target |= uint64_t(1) << x;
        out.push_back({target, sg});
        return;
    }
    const int tail = arrow_bit ? e.b : e.a;
    const int head = arrow_bit ? e.a : e.b;
    seq.push_back(0);  // placeholder for the wedged-on variable
    uint64_t rest = mask;
    while (rest) {
        int s = __builtin_ctzll(rest);
        rest &= rest - 1;
        seq.push_back(s == e.m ? tail : e.eta[static_cast<size_t>(s)]);
    }
    for (int lead : {tail, head}) {
        seq[0] = lead;
        int sg = sort_sign(seq);
        if (sg) {
            uint64_t target = 0;
            for (int x : seq) target |= uint64_t(1) << x;
            out.push_back({target, lead == tail ? sg : -sg});
        }
    }
    // combine if both terms landed on the same monomial (cannot happen: the
    // leads differ and the rest agree, so the masks differ)
}

}  // namespace detail

// edge signs for the odd cube: sign(v, c) flips the unsigned edge map
class OddSigns {
  public:
    OddSigns(int n, std::vector<uint8_t> bits) : n_(n), bits_(std::move(bits)) {}
    int sign(uint64_t v, int c) const {
        return bits_[static_cast<size_t>(v) * static_cast<size_t>(n_) +
                     static_cast<size_t>(c)]
                   ? -1
                   : 1;
    }
    void flip(uint64_t v, int c) {
        auto& b =
            bits_[static_cast<size_t>(v) * static_cast<size_t>(n_) + static_cast<size_t>(c)];
        b ^= 1;
    }
    // flipping every edge at a vertex preserves validity (each square meets
    // a vertex in 0 or 2 edges); used by invariance tests
    void flip_vertex(uint64_t w) {
        for (int c = 0; c < n_; ++c)
            flip(w >> c & 1 ? w ^ (uint64_t(1) << c) : w, c);
    }

  private:
    int n_;
    std::vector<uint8_t> bits_;
};

// classify every square face and solve the GF(2) system; throws when the
// unsigned cube is not (anti)commutative, which would be a construction bug
inline OddSigns solve_odd_signs(const PlanarDiagram& D, const ArrowChoice& arrows) {
    Cube cube(D);
    const int n = cube.n;
    struct Eq {
        std::array<uint32_t, 4> var;
        uint8_t rhs;
    };
    std::vector<Eq> eqs;
    auto var_id = [n](uint64_t v, int c) {
        return static_cast<uint32_t>(v * static_cast<uint64_t>(n) + static_cast<uint64_t>(c));
    };

    // walk levels with a sliding window of resolutions (k, k+1, k+2)
    std::vector<std::vector<Resolution>> res(3);
    std::vector<std::vector<uint64_t>> states(3);
    auto load = [&](int k, int slot) {
        states[static_cast<size_t>(slot)] = cube.level_states(k);
        auto& rs = res[static_cast<size_t>(slot)];
        rs.clear();
        for (uint64_t v : states[static_cast<size_t>(slot)]) rs.push_back(D.resolve_state(v));
    };
    auto res_of = [&](int slot, uint64_t v) -> const Resolution& {
        return res[static_cast<size_t>(slot)][static_cast<size_t>(subset_rank(v))];
    };

    std::vector<detail::OddTerm> t1, t2;
    std::map<uint64_t, int64_t> m1, m2;
    for (int k = 0; k + 2 <= n; ++k) {
        if (k == 0) {
            load(0, 0);
            load(1, 1);
        } else {
            states[0].swap(states[1]);
            res[0].swap(res[1]);
            states[1].swap(states[2]);
            res[1].swap(res[2]);
        }
        load(k + 2, 2);
        for (size_t si = 0; si < states[0].size(); ++si) {
            uint64_t v = states[0][si];
            const Resolution& rv = res[0][si];
            for (int c1 = 0; c1 < n; ++c1) {
                if (v >> c1 & 1) continue;
                uint64_t va = v | (uint64_t(1) << c1);
                const Resolution& ra = res_of(1, va);
                EdgeInfo e1 = edge_info(D, c1, rv, ra);
                for (int c2 = c1 + 1; c2 < n; ++c2) {
                    if (v >> c2 & 1) continue;
                    uint64_t vb = v | (uint64_t(1) << c2);
                    uint64_t vab = va | (uint64_t(1) << c2);
                    const Resolution& rb = res_of(1, vb);
                    const Resolution& rab = res_of(2, vab);
                    EdgeInfo e2 = edge_info(D, c2, rv, rb);
                    EdgeInfo e12 = edge_info(D, c2, ra, rab);
                    EdgeInfo e21 = edge_info(D, c1, rb, rab);
                    // compare the two composites on every source monomial
                    m1.clear();
                    m2.clear();
                    for (uint64_t mask = 0; mask < (uint64_t(1) << rv.circles); ++mask) {
                        detail::odd_edge_terms(e1, mask, arrows[static_cast<size_t>(c1)], t1);
                        for (const auto& s : t1) {
                            detail::odd_edge_terms(e12, s.mask,
                                                   arrows[static_cast<size_t>(c2)], t2);
                            for (const auto& u : t2)
                                m1[mask << 32 | u.mask] += s.coeff * u.coeff;
                        }
                        detail::odd_edge_terms(e2, mask, arrows[static_cast<size_t>(c2)], t1);
                        for (const auto& s : t1) {
                            detail::odd_edge_terms(e21, s.mask,
                                                   arrows[static_cast<size_t>(c1)], t2);
                            for (const auto& u : t2)
                                m2[mask << 32 | u.mask] += s.coeff * u.coeff;
                        }
                    }
                    for (auto it = m1.begin(); it != m1.end();)
                        it = it->second == 0 ? m1.erase(it) : std::next(it);
                    for (auto it = m2.begin(); it != m2.end();)
                        it = it->second == 0 ? m2.erase(it) : std::next(it);
                    uint8_t rhs;
                    if (m1.empty() && m2.empty()) continue;  // zero face: no constraint
                    bool equal = m1 == m2;
                    bool anti = [&] {
                        if (m1.size() != m2.size()) return false;
                        auto a = m1.begin();
                        auto b = m2.begin();
                        for (; a != m1.end(); ++a, ++b)
                            if (a->first != b->first || a->second != -b->second) return false;
                        return true;
                    }();
                    if (equal && !anti)
                        rhs = 1;  // commuting square: odd number of sign flips
                    else if (anti && !equal)
                        rhs = 0;  // anticommuting: even number
                    else
                        throw std::logic_error("odd cube face is neither commutative nor "
                                               "anticommutative");
                    eqs.push_back({{var_id(v, c1), var_id(v, c2), var_id(va, c2),
                                    var_id(vb, c1)},
                                   rhs});
                }
            }
        }
    }

    // sparse GF(2) elimination, smallest variable as the leading one
    std::unordered_map<uint32_t, size_t> pivot;  // leading var -> row index
    std::vector<std::vector<uint32_t>> rows;
    std::vector<uint8_t> rhs_of;
    std::vector<uint32_t> row, merged;
    for (const auto& eq : eqs) {
        row.assign(eq.var.begin(), eq.var.end());
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        uint8_t rhs = eq.rhs;
        for (;;) {
            if (row.empty()) {
                if (rhs) throw std::logic_error("odd sign equations are inconsistent");
                break;
            }
            auto it = pivot.find(row.front());
            if (it == pivot.end()) {
                pivot.emplace(row.front(), rows.size());
                rows.push_back(row);
                rhs_of.push_back(rhs);
                break;
            }
            const auto& prow = rows[it->second];
            merged.clear();
            std::set_symmetric_difference(row.begin(), row.end(), prow.begin(), prow.end(),
                                          std::back_inserter(merged));
            row.swap(merged);
            rhs ^= rhs_of[it->second];
        }
    }
    // back-substitute, free variables zero; descending leads see only
    // already-assigned larger variables
    std::vector<uint8_t> bits(static_cast<size_t>(uint64_t(1) << n) * static_cast<size_t>(n),
                              0);
    std::vector<std::pair<uint32_t, size_t>> order(pivot.begin(), pivot.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    for (const auto& [lead, ri] : order) {
        uint8_t val = rhs_of[ri];
        for (uint32_t vr : rows[ri])
            if (vr != lead) val ^= bits[vr];
        bits[lead] = val;
    }
    return {n, std::move(bits)};
}

// Build the odd complex (or its single internal-degree block).  Basis
// elements are (state, wedge monomial); the reduced flavour keeps monomials
// containing the marked circle.
inline ChainComplex build_odd(const PlanarDiagram& D, bool reduced, const OddSigns& signs,
                              const ArrowChoice& arrows,
                              std::optional<int> only_j = std::nullopt) {
    Cube cube(D);
    const int n = cube.n;
    // the reduced theory is conventionally shifted one degree up, so the
    // pinned circle of the wedge monomials contributes nothing
    const int qshift = reduced ? 1 : 0;
    ChainComplex C;
    C.i_min = cube.i_min();
    C.qdeg.resize(static_cast<size_t>(n) + 1);

    auto masks_of = [&](uint64_t v, const Resolution& r, std::vector<uint64_t>& out) {
        out.clear();
        int circ = r.circles;
        int usable = reduced ? circ - 1 : circ;
        if (!only_j) {
            for (uint64_t m = 0; m < (uint64_t(1) << usable); ++m)
                out.push_back(reduced ? mask_expand(m, r.marked) : m);
            return;
        }
        int delta = cube.j_of(v) + circ + qshift - *only_j;
        if (delta % 2 != 0) return;
        int rr = delta / 2;
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

    std::vector<detail::OddTerm> terms;
    for (int k = 0; k < n; ++k) {
        const auto& src = layout[static_cast<size_t>(k)];
        const auto& dst = layout[static_cast<size_t>(k) + 1];
        SparseMat<int64_t> M(static_cast<int>(dst.dim), static_cast<int>(src.dim));
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
                int sgn = signs.sign(v, c);
                for (size_t mi = 0; mi < source_masks.size(); ++mi) {
                    int64_t col = src.offset[si] + static_cast<int64_t>(mi);
                    detail::odd_edge_terms(e, source_masks[mi], arrows[static_cast<size_t>(c)],
                                           terms);
                    for (const auto& t : terms)
                        M.add(static_cast<int>(dst.offset[di] + mask_index(t.mask, dst.res[di])),
                              static_cast<int>(col), sgn * t.coeff);
                }
            }
        }
        M.normalize();
        C.d.push_back(std::move(M));
    }
    return C;
}

}  // namespace kho
