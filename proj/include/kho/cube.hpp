#pragma once
// The cube of resolutions underlying both link homology theories.
//
// A vertex of the cube is a state: bit c set means crossing c carries the
// negative (1-) marker.  Homological degree i(s) = popcount(s) - n_minus and
// internal degree j(s) = (3w - n)/2 + popcount(s), so level k of the complex
// collects the states with popcount k.  A cube edge flips one marker from
// positive to negative; its effect on circles is either a merge or a split,
// described by EdgeInfo together with the correspondence eta between the
// untouched circles of the two resolutions.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kho/diagram.hpp"
#include "kho/util.hpp"

namespace kho {

struct Cube {
    PlanarDiagram D;
    int n = 0;      // crossings
    int n_neg = 0;  // negative crossings
    int w = 0;      // writhe

    explicit Cube(PlanarDiagram d) : D(std::move(d)) {
        n = D.size();
        if (n > 20)
            throw std::invalid_argument("diagram too large: " + std::to_string(n) +
                                        " crossings (limit 20)");
        n_neg = D.negative_crossings();
        w = D.writhe();
    }

    int i_of(uint64_t v) const { return popcount64(v) - n_neg; }
    int j_of(uint64_t v) const { return (3 * w - n) / 2 + popcount64(v); }
    int i_min() const { return -n_neg; }

    // internal degree of a basis element: each unmarked circle contributes
    // +1, each marked one (an X label or a wedge factor) contributes -1
    int qdeg(uint64_t v, int circles, uint64_t mask) const {
        return j_of(v) + circles - 2 * popcount64(mask);
    }

    // range of internal degrees present in the cube, scanning all states
    std::pair<int, int> q_range() const {
        int lo = 0, hi = 0;
        bool first = true;
        for (uint64_t v = 0; v < (uint64_t(1) << n); ++v) {
            int c = D.resolve_state(v).circles;
            int a = j_of(v) - c, b = j_of(v) + c;
            if (first || a < lo) lo = a;
            if (first || b > hi) hi = b;
            first = false;
        }
        return {lo, hi};
    }

    // all states of one level (fixed popcount), ascending numeric order
    std::vector<uint64_t> level_states(int k) const {
        std::vector<uint64_t> out;
        out.reserve(static_cast<size_t>(binom(n, k)));
        if (k == 0) {
            out.push_back(0);
            return out;
        }
        if (k > n) return out;
        uint64_t v = (uint64_t(1) << k) - 1;
        uint64_t last = v << (n - k);
        for (;;) {
            out.push_back(v);
            if (v == last) break;
            v = next_same_popcount(v);
        }
        return out;
    }
};

// what one cube edge does to the circles of its source resolution
struct EdgeInfo {
    bool merge = false;
    int a = -1, b = -1;  // merge: the two source circles; split: the two targets
    int m = -1;          // merge: the target circle; split: the source circle
    std::vector<int> eta;  // source circle -> target circle (split source: -1)
};

// src = resolution of v (bit c clear), dst = resolution of v | 1<<c
inline EdgeInfo edge_info(const PlanarDiagram& D, int c, const Resolution& src,
                          const Resolution& dst) {
    EdgeInfo e;
    const auto& t = D.crossings[static_cast<size_t>(c)].e;
    int p1 = src.circle_of_edge[static_cast<size_t>(t[0])];
    int p2 = src.circle_of_edge[static_cast<size_t>(t[2])];
    e.eta.assign(static_cast<size_t>(src.circles), -1);
    int src_edge_circles = src.circles - D.free_loops;
    int dst_edge_circles = dst.circles - D.free_loops;
    for (int s = 0; s < src_edge_circles; ++s)
        e.eta[static_cast<size_t>(s)] =
            dst.circle_of_edge[static_cast<size_t>(src.rep_edge[static_cast<size_t>(s)])];
    for (int t2 = 0; t2 < D.free_loops; ++t2)
        e.eta[static_cast<size_t>(src_edge_circles + t2)] = dst_edge_circles + t2;
    if (p1 != p2) {
        e.merge = true;
        e.a = p1;
        e.b = p2;
        e.m = dst.circle_of_edge[static_cast<size_t>(t[0])];
    } else {
        e.merge = false;
        e.m = p1;
        e.a = dst.circle_of_edge[static_cast<size_t>(t[0])];
        e.b = dst.circle_of_edge[static_cast<size_t>(t[1])];
        e.eta[static_cast<size_t>(p1)] = -1;  // ambiguous: the split circle
    }
    return e;
}

// sign of the even cube edge at (v, c): parity of the markers above bit c
inline int even_edge_sign(uint64_t v, int c) {
    return popcount64(v >> (c + 1)) % 2 ? -1 : 1;
}

}  // namespace kho
