#pragma once
// Planar diagrams of oriented links.
//
// A crossing stores its four incident half-edge ids in counterclockwise
// planar order starting from the incoming under-strand, so slots (0,2) are
// the under-strand and slots (1,3) the over-strand.  A crossing is positive
// exactly when the over-strand enters at slot 3.  The 0-resolution (positive
// marker) of a crossing joins slots (0,1) and (2,3); the 1-resolution
// (negative marker) joins (0,3) and (1,2).  With these conventions the
// 0-resolution of a positive crossing is its oriented smoothing.
//
// Edge ids are normalized on construction to 0..edge_count-1 in order of
// first appearance.  Orientations are recovered from the combinatorics: the
// two occurrences of an edge point in opposite ways, as do the two ends of a
// strand inside a crossing; parity union-find propagates these constraints
// and detects inconsistent inputs.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kho/util.hpp"

namespace kho {

struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Crossing {
    std::array<int, 4> e{};  // half-edge ids, CCW from the incoming under-strand
    int sign = 0;            // +1 or -1
};

struct BraidWord {
    int strands = 1;
    std::vector<int> letters;  // letter g in [1, strands-1] or its negative
};

class PlanarDiagram;
namespace detail {
struct ProtoCrossing {
    std::array<int, 4> e{};  // CCW tuple, arbitrary starting slot
    int under_pair = 0;      // 0: slots (0,2) are the under-strand; 1: slots (1,3)
};
PlanarDiagram finish(std::vector<ProtoCrossing> protos, int free_loops,
                     const std::vector<std::pair<int, bool>>& seeds,
                     std::map<int, int>* renum_out);
}  // namespace detail

// one complete resolution of every crossing
struct Resolution {
    int circles = 0;                  // total, including crossingless loops
    std::vector<int> circle_of_edge;  // size edge_count
    std::vector<int> rep_edge;        // minimal edge id on each edge-circle
    int marked = -1;                  // circle carrying the base point
};

class PlanarDiagram {
  public:
    std::vector<Crossing> crossings;
    int edge_count = 0;
    int free_loops = 0;               // crossingless unknot components
    std::vector<int> edge_component;  // link component of each edge
    int component_count = 0;          // edge components + free loops
    std::optional<int> base_edge;     // defaults to edge 0 when edges exist

    int size() const { return static_cast<int>(crossings.size()); }
    int writhe() const {
        int w = 0;
        for (const auto& c : crossings) w += c.sign;
        return w;
    }
    int negative_crossings() const {
        int k = 0;
        for (const auto& c : crossings) k += c.sign < 0;
        return k;
    }
    int positive_crossings() const { return size() - negative_crossings(); }

    // marker bit 0 joins (e0,e1),(e2,e3); bit 1 joins (e0,e3),(e1,e2)
    Resolution resolve_state(uint64_t state) const {
        std::vector<int> parent(static_cast<size_t>(edge_count));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x) {
                parent[static_cast<size_t>(x)] =
                    parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
                x = parent[static_cast<size_t>(x)];
            }
            return x;
        };
        auto unite = [&](int a, int b) {
            a = find(a);
            b = find(b);
            if (a > b) std::swap(a, b);
            parent[static_cast<size_t>(b)] = a;  // keep minimal id as root
        };
        for (int k = 0; k < size(); ++k) {
            const auto& e = crossings[static_cast<size_t>(k)].e;
            if (state >> k & 1) {
                unite(e[0], e[3]);
                unite(e[1], e[2]);
            } else {
                unite(e[0], e[1]);
                unite(e[2], e[3]);
            }
        }
        Resolution r;
        r.circle_of_edge.assign(static_cast<size_t>(edge_count), -1);
        for (int x = 0; x < edge_count; ++x)
            if (find(x) == x) {
                r.rep_edge.push_back(x);
                r.circle_of_edge[static_cast<size_t>(x)] = r.circles++;
            }
        for (int x = 0; x < edge_count; ++x)
            r.circle_of_edge[static_cast<size_t>(x)] =
                r.circle_of_edge[static_cast<size_t>(find(x))];
        int edge_circles = r.circles;
        r.circles += free_loops;
        if (base_edge)
            r.marked = r.circle_of_edge[static_cast<size_t>(*base_edge)];
        else if (free_loops > 0)
            r.marked = edge_circles;  // base point on the first crossingless loop
        return r;
    }

    std::string to_pd_string() const {
        std::ostringstream os;
        for (int k = 0; k < size(); ++k) {
            if (k) os << " ";
            const auto& e = crossings[static_cast<size_t>(k)].e;
            os << "X[" << e[0] + 1 << "," << e[1] + 1 << "," << e[2] + 1 << "," << e[3] + 1
               << "]";
        }
        for (int k = 0; k < free_loops; ++k) os << (size() || k ? " O" : "O");
        return os.str();
    }
    std::string canonical_string() const {
        std::string s = to_pd_string();
        if (base_edge && *base_edge != 0) s += "#b" + std::to_string(*base_edge + 1);
        return s;
    }
    std::string hash() const { return hex64(fnv1a(canonical_string())); }
};

namespace detail {

// union-find where every node carries a parity relative to its root
class ParityDSU {
  public:
    explicit ParityDSU(size_t n) : parent_(n), par_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::pair<size_t, uint8_t> find(size_t x) {
        uint8_t p = 0;
        while (parent_[x] != x) {
            p ^= par_[x];
            x = parent_[x];
        }
        return {x, p};
    }
    // impose value(a) xor value(b) = p; false when this contradicts prior facts
    bool unite(size_t a, size_t b, uint8_t p) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return static_cast<uint8_t>(pa ^ pb) == p;
        parent_[ra] = rb;
        par_[ra] = static_cast<uint8_t>(pa ^ pb ^ p);
        return true;
    }

  private:
    std::vector<size_t> parent_;
    std::vector<uint8_t> par_;
};

inline PlanarDiagram finish(std::vector<ProtoCrossing> protos, int free_loops,
                            const std::vector<std::pair<int, bool>>& seeds,
                            std::map<int, int>* renum_out = nullptr) {
    const size_t n = protos.size();
    // occurrences of each raw edge id: occurrence index = 4*crossing + slot
    std::map<int, std::vector<int>> occ;
    for (size_t k = 0; k < n; ++k)
        for (int s = 0; s < 4; ++s) occ[protos[k].e[static_cast<size_t>(s)]].push_back(
            static_cast<int>(4 * k) + s);
    for (const auto& [id, v] : occ)
        if (v.size() != 2)
            throw DiagramError("edge " + std::to_string(id) + " appears " +
                               std::to_string(v.size()) + " times, expected 2");

    // orientation constraints: value(occurrence) = 1 when the strand points
    // into the crossing there
    const size_t ROOT = 4 * n;  // virtual node with value 0
    ParityDSU dsu(4 * n + 1);
    auto fail = [] { throw DiagramError("inconsistent orientation"); };
    for (const auto& [id, v] : occ)
        if (!dsu.unite(static_cast<size_t>(v[0]), static_cast<size_t>(v[1]), 1)) fail();
    for (size_t k = 0; k < n; ++k) {
        if (!dsu.unite(4 * k + 0, 4 * k + 2, 1)) fail();
        if (!dsu.unite(4 * k + 1, 4 * k + 3, 1)) fail();
    }
    for (auto [node, head] : seeds)
        if (!dsu.unite(static_cast<size_t>(node), ROOT, head ? 1 : 0)) fail();
    // components the seeds never reached: orient so that the first occurrence
    // of their lowest raw edge id is the tail
    for (const auto& [id, v] : occ) {
        auto [r, p] = dsu.find(static_cast<size_t>(v[0]));
        auto [rr, rp] = dsu.find(ROOT);
        (void)p;
        (void)rp;
        if (r != rr) {
            if (!dsu.unite(static_cast<size_t>(v[0]), ROOT, 0)) fail();
        }
    }
    auto head = [&](size_t k, int s) {
        auto [r, p] = dsu.find(4 * k + static_cast<size_t>(s));
        auto [rr, rp] = dsu.find(ROOT);
        (void)rr;
        return static_cast<uint8_t>(p ^ rp) != 0;
    };

    // rotate each tuple so slot 0 is the incoming under-strand; read the sign
    // off the over-strand's incoming slot
    PlanarDiagram D;
    D.crossings.resize(n);
    for (size_t k = 0; k < n; ++k) {
        int u0 = protos[k].under_pair ? 1 : 0;
        int u = head(k, u0) ? u0 : u0 + 2;
        auto& out = D.crossings[k];
        for (int t = 0; t < 4; ++t)
            out.e[static_cast<size_t>(t)] = protos[k].e[static_cast<size_t>((u + t) & 3)];
        out.sign = head(k, (u + 3) & 3) ? +1 : -1;
    }

    // canonical edge numbering: ascending order of first appearance
    std::map<int, int> renum;
    for (auto& c : D.crossings)
        for (int& x : c.e) {
            auto [it, fresh] = renum.emplace(x, static_cast<int>(renum.size()));
            x = it->second;
            (void)fresh;
        }
    D.edge_count = static_cast<int>(renum.size());
    D.free_loops = free_loops;
    if (renum_out) *renum_out = renum;

    // link components: slots (0,2) and (1,3) of a crossing are the same strand
    std::vector<int> parent(static_cast<size_t>(D.edge_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x)
            x = parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (const auto& c : D.crossings) {
        int a = find(c.e[0]), b = find(c.e[2]);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        a = find(c.e[1]);
        b = find(c.e[3]);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
    D.edge_component.assign(static_cast<size_t>(D.edge_count), -1);
    int comp = 0;
    for (int x = 0; x < D.edge_count; ++x)
        if (find(x) == x) D.edge_component[static_cast<size_t>(x)] = comp++;
    for (int x = 0; x < D.edge_count; ++x)
        D.edge_component[static_cast<size_t>(x)] =
            D.edge_component[static_cast<size_t>(find(x))];
    D.component_count = comp + free_loops;
    if (D.edge_count > 0) D.base_edge = 0;
    return D;
}

// renumber canonically without re-solving orientations (tuples are already
// rotated so slot 0 is the incoming under-strand and signs are known)
inline PlanarDiagram rebuild(std::vector<Crossing> crossings, int free_loops,
                             std::optional<int> base_raw,
                             std::map<int, int>* renum_out = nullptr) {
    std::vector<ProtoCrossing> protos(crossings.size());
    std::vector<std::pair<int, bool>> seeds;
    for (size_t k = 0; k < crossings.size(); ++k) {
        protos[k].e = crossings[k].e;
        protos[k].under_pair = 0;
        // pin both incoming strands: a component that only ever passes over
        // is otherwise unconstrained and could come out reversed
        seeds.emplace_back(static_cast<int>(4 * k), true);
        seeds.emplace_back(static_cast<int>(4 * k) + (crossings[k].sign > 0 ? 3 : 1), true);
    }
    PlanarDiagram D = detail::finish(std::move(protos), free_loops, seeds, renum_out);
    for (size_t k = 0; k < crossings.size(); ++k)
        if (D.crossings[k].sign != crossings[k].sign)
            throw DiagramError("internal: sign drift during rebuild");
    if (base_raw) {
        // recover the renumbering to relocate the base point
        std::map<int, int> renum;
        for (const auto& c : crossings)
            for (int x : c.e) renum.emplace(x, static_cast<int>(renum.size()));
        auto it = renum.find(*base_raw);
        if (it != renum.end()) D.base_edge = it->second;
    }
    return D;
}

}  // namespace detail

// ---- constructors -----------------------------------------------------------

// "X[a,b,c,d] X[e,f,g,h] ... O O" ; each X-tuple is CCW from the incoming
// under-strand; every O is a crossingless unknot component
inline PlanarDiagram parse_pd(const std::string& text) {
    std::vector<detail::ProtoCrossing> protos;
    int free_loops = 0;
    size_t p = 0;
    auto skip = [&] {
        while (p < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[p])) || text[p] == ','))
            ++p;
    };
    auto parse_int = [&]() -> int {
        skip();
        size_t q = p;
        if (q < text.size() && (text[q] == '-' || text[q] == '+')) ++q;
        size_t d = q;
        while (d < text.size() && std::isdigit(static_cast<unsigned char>(text[d]))) ++d;
        if (d == q) throw DiagramError("expected integer at position " + std::to_string(p));
        int v = std::stoi(text.substr(p, d - p));
        p = d;
        return v;
    };
    skip();
    while (p < text.size()) {
        char c = text[p];
        if (c == 'O' || c == 'o') {
            ++free_loops;
            ++p;
        } else if (c == 'X' || c == 'x') {
            ++p;
            skip();
            if (p >= text.size() || (text[p] != '[' && text[p] != '('))
                throw DiagramError("expected [ after X");
            char close = text[p] == '[' ? ']' : ')';
            ++p;
            detail::ProtoCrossing pc;
            for (int s = 0; s < 4; ++s) pc.e[static_cast<size_t>(s)] = parse_int();
            skip();
            if (p >= text.size() || text[p] != close)
                throw DiagramError("expected closing bracket in crossing tuple");
            ++p;
            protos.push_back(pc);
        } else {
            throw DiagramError(std::string("unexpected character '") + c + "' in diagram");
        }
        skip();
    }
    if (protos.empty() && free_loops == 0) throw DiagramError("empty diagram");
    std::vector<std::pair<int, bool>> seeds;
    for (size_t k = 0; k < protos.size(); ++k)
        seeds.emplace_back(static_cast<int>(4 * k), true);  // slot 0 = under-in
    return detail::finish(std::move(protos), free_loops, seeds);
}

// braid closure; strands run upward, letter +g crosses strand g over g+1
inline PlanarDiagram from_braid(const BraidWord& w) {
    if (w.strands < 1) throw DiagramError("braid needs at least one strand");
    for (int g : w.letters)
        if (g == 0 || std::abs(g) >= w.strands)
            throw DiagramError("braid letter " + std::to_string(g) + " out of range for " +
                               std::to_string(w.strands) + " strands");
    int next = w.strands;
    std::vector<int> cur(static_cast<size_t>(w.strands));
    std::iota(cur.begin(), cur.end(), 0);
    struct Raw {
        std::array<int, 4> e;
        int expected_sign;
    };
    std::vector<Raw> raw;
    for (int g : w.letters) {
        size_t i = static_cast<size_t>(std::abs(g)) - 1;  // left strand position
        int in_l = cur[i], in_r = cur[i + 1];
        int out_l = next++, out_r = next++;
        if (g > 0)
            raw.push_back({{in_r, out_r, out_l, in_l}, +1});
        else
            raw.push_back({{in_l, in_r, out_r, out_l}, -1});
        cur[i] = out_l;
        cur[i + 1] = out_r;
    }
    // closure: identify each strand's top edge with its bottom edge
    std::vector<int> parent(static_cast<size_t>(next));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x)
            x = parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (int p = 0; p < w.strands; ++p) {
        int a = find(p), b = find(cur[static_cast<size_t>(p)]);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<int> used(static_cast<size_t>(next), 0);
    std::vector<detail::ProtoCrossing> protos;
    for (const auto& r : raw) {
        detail::ProtoCrossing pc;
        for (int s = 0; s < 4; ++s) {
            pc.e[static_cast<size_t>(s)] = find(r.e[static_cast<size_t>(s)]);
            used[static_cast<size_t>(pc.e[static_cast<size_t>(s)])] = 1;
        }
        protos.push_back(pc);
    }
    int free_loops = 0;
    for (int x = 0; x < next; ++x)
        if (find(x) == x && !used[static_cast<size_t>(x)]) ++free_loops;
    std::vector<std::pair<int, bool>> seeds;
    for (size_t k = 0; k < protos.size(); ++k) {
        // pin both incoming strands: a strand that only ever passes over is
        // otherwise unconstrained and could come out reversed
        seeds.emplace_back(static_cast<int>(4 * k), true);
        seeds.emplace_back(static_cast<int>(4 * k) + (raw[k].expected_sign > 0 ? 3 : 1), true);
    }
    PlanarDiagram D = detail::finish(std::move(protos), free_loops, seeds);
    for (size_t k = 0; k < raw.size(); ++k)
        if (D.crossings[k].sign != raw[k].expected_sign)
            throw DiagramError("internal: braid crossing sign mismatch");
    return D;
}

// "k: g1 g2 ..." -> k-strand braid word
inline BraidWord parse_braid(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw DiagramError("braid format is \"k: g1 g2 ...\"");
    BraidWord w;
    try {
        w.strands = std::stoi(text.substr(0, colon));
    } catch (const std::exception&) {
        throw DiagramError("bad strand count in braid word");
    }
    std::istringstream is(text.substr(colon + 1));
    int g;
    while (is >> g) w.letters.push_back(g);
    if (!is.eof()) throw DiagramError("bad braid letter");
    return w;
}

// pretzel link P(p1,...,pn): n vertical bands of |pi| crossings each,
// positive parameters twist one way, negative the other
inline PlanarDiagram pretzel(const std::vector<int>& params) {
    if (params.empty()) throw DiagramError("pretzel needs at least one parameter");
    const int n = static_cast<int>(params.size());
    // arcs: T_i joins band i-1's top right to band i's top left; B_i likewise
    int next = 2 * n;
    auto T = [&](int i) { return (i % n + n) % n; };
    auto B = [&](int i) { return n + (i % n + n) % n; };
    std::vector<int> parent(1024);
    std::iota(parent.begin(), parent.end(), 0);
    auto ensure = [&](int x) {
        while (static_cast<int>(parent.size()) <= x) {
            parent.push_back(static_cast<int>(parent.size()) - 1);
            parent.back() = static_cast<int>(parent.size()) - 1;
        }
    };
    auto find = [&](int x) {
        ensure(x);
        while (parent[static_cast<size_t>(x)] != x)
            x = parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    };
    struct Band {
        std::vector<std::array<int, 4>> tuples;  // (NW, SW, SE, NE) per crossing
        int under_pair;
    };
    std::vector<Band> bands;
    for (int i = 0; i < n; ++i) {
        int c = std::abs(params[static_cast<size_t>(i)]);
        Band band;
        band.under_pair = params[static_cast<size_t>(i)] > 0 ? 0 : 1;
        if (c == 0) {
            unite(T(i), B(i));
            unite(T(i + 1), B(i + 1));
        } else {
            int lp = T(i), rp = T(i + 1);
            for (int j = 1; j <= c; ++j) {
                int nl = j == c ? B(i) : next++;
                int nr = j == c ? B(i + 1) : next++;
                band.tuples.push_back({lp, nl, nr, rp});
                lp = nl;
                rp = nr;
            }
        }
        bands.push_back(std::move(band));
    }
    std::vector<detail::ProtoCrossing> protos;
    std::vector<int> used(static_cast<size_t>(next), 0);
    for (const auto& band : bands)
        for (const auto& t : band.tuples) {
            detail::ProtoCrossing pc;
            for (int s = 0; s < 4; ++s) {
                pc.e[static_cast<size_t>(s)] = find(t[static_cast<size_t>(s)]);
                used[static_cast<size_t>(pc.e[static_cast<size_t>(s)])] = 1;
            }
            pc.under_pair = band.under_pair;
            protos.push_back(pc);
        }
    int free_loops = 0;
    for (int x = 0; x < next; ++x)
        if (find(x) == x && !used[static_cast<size_t>(x)]) ++free_loops;
    return detail::finish(std::move(protos), free_loops, {});
}

// "P(3,3,-3)"
inline std::vector<int> parse_pretzel_params(const std::string& text) {
    size_t open = text.find('('), close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open ||
        (text.substr(0, open) != "P" && text.substr(0, open) != "p"))
        throw DiagramError("pretzel format is \"P(p1,p2,...)\"");
    std::vector<int> params;
    std::istringstream is(text.substr(open + 1, close - open - 1));
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            params.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw DiagramError("bad pretzel parameter \"" + tok + "\"");
        }
    }
    if (params.empty()) throw DiagramError("pretzel needs at least one parameter");
    return params;
}

inline PlanarDiagram parse_diagram(const std::string& text, const std::string& format) {
    if (format == "pd") return parse_pd(text);
    if (format == "braid") return from_braid(parse_braid(text));
    if (format == "pretzel") return pretzel(parse_pretzel_params(text));
    throw DiagramError("unknown format \"" + format + "\" (expected pd|braid|pretzel)");
}

// ---- surgery ----------------------------------------------------------------

// rotate one crossing's tuple so the other strand becomes the under-strand
inline Crossing switched(const Crossing& c) {
    Crossing r;
    int u = c.sign > 0 ? 3 : 1;  // the over-strand's incoming slot
    for (int t = 0; t < 4; ++t)
        r.e[static_cast<size_t>(t)] = c.e[static_cast<size_t>((u + t) & 3)];
    r.sign = -c.sign;
    return r;
}

inline PlanarDiagram mirror(const PlanarDiagram& D) {
    std::vector<Crossing> cr;
    cr.reserve(D.crossings.size());
    for (const auto& c : D.crossings) cr.push_back(switched(c));
    return detail::rebuild(std::move(cr), D.free_loops, D.base_edge);
}

inline PlanarDiagram switch_crossing(const PlanarDiagram& D, int k) {
    if (k < 0 || k >= D.size()) throw DiagramError("crossing index out of range");
    auto cr = D.crossings;
    cr[static_cast<size_t>(k)] = switched(cr[static_cast<size_t>(k)]);
    return detail::rebuild(std::move(cr), D.free_loops, D.base_edge);
}

namespace detail {
// erase crossing k after fusing two pairs of its half-edges; edge classes
// that stop appearing in any remaining crossing close into free loops.
// edge_map (optional) reports where each old edge went: values < new edge
// count are new edge ids, value (new_edge_count + t) means the edge closed
// into free loop number t of the result
inline PlanarDiagram erase_crossing(const PlanarDiagram& D, int k,
                                    std::array<std::pair<int, int>, 2> fused,
                                    bool keep_orientations,
                                    std::vector<int>* edge_map = nullptr) {
    std::vector<int> parent(static_cast<size_t>(D.edge_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x)
            x = parent[static_cast<size_t>(x)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        return x;
    };
    for (auto [a, b] : fused) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<Crossing> cr;
    std::vector<int> used(static_cast<size_t>(D.edge_count), 0);
    for (int t = 0; t < D.size(); ++t) {
        if (t == k) continue;
        Crossing c = D.crossings[static_cast<size_t>(t)];
        for (int& x : c.e) {
            x = find(x);
            used[static_cast<size_t>(x)] = 1;
        }
        cr.push_back(c);
    }
    int free_loops = D.free_loops;
    std::map<int, int> loop_of_class;  // vanished class rep -> free loop index
    for (int x = 0; x < D.edge_count; ++x)
        if (find(x) == x && !used[static_cast<size_t>(x)])
            loop_of_class[x] = free_loops++;
    std::map<int, int> renum;
    PlanarDiagram out;
    if (keep_orientations) {
        out = rebuild(std::move(cr), free_loops, std::nullopt, edge_map ? &renum : nullptr);
    } else {
        std::vector<ProtoCrossing> protos(cr.size());
        for (size_t t = 0; t < cr.size(); ++t) protos[t].e = cr[t].e;
        out = finish(std::move(protos), free_loops, {}, edge_map ? &renum : nullptr);
    }
    if (edge_map) {
        edge_map->assign(static_cast<size_t>(D.edge_count), -1);
        for (int x = 0; x < D.edge_count; ++x) {
            int r = find(x);
            auto it = loop_of_class.find(r);
            (*edge_map)[static_cast<size_t>(x)] =
                it != loop_of_class.end() ? out.edge_count + it->second : renum.at(r);
        }
    }
    return out;
}
}  // namespace detail

// replace crossing k by the smoothing compatible with the orientations
inline PlanarDiagram smooth_oriented(const PlanarDiagram& D, int k,
                                     std::vector<int>* edge_map = nullptr) {
    if (k < 0 || k >= D.size()) throw DiagramError("crossing index out of range");
    const auto& e = D.crossings[static_cast<size_t>(k)].e;
    if (D.crossings[static_cast<size_t>(k)].sign > 0)
        return detail::erase_crossing(D, k, {{{e[0], e[1]}, {e[2], e[3]}}}, true, edge_map);
    return detail::erase_crossing(D, k, {{{e[0], e[3]}, {e[1], e[2]}}}, true, edge_map);
}

// replace crossing k by the other smoothing; orientations are re-derived
inline PlanarDiagram smooth_unoriented(const PlanarDiagram& D, int k,
                                       std::vector<int>* edge_map = nullptr) {
    if (k < 0 || k >= D.size()) throw DiagramError("crossing index out of range");
    const auto& e = D.crossings[static_cast<size_t>(k)].e;
    if (D.crossings[static_cast<size_t>(k)].sign > 0)
        return detail::erase_crossing(D, k, {{{e[0], e[3]}, {e[1], e[2]}}}, false, edge_map);
    return detail::erase_crossing(D, k, {{{e[0], e[1]}, {e[2], e[3]}}}, false, edge_map);
}

// apply a permutation to the crossing order (used by invariance tests)
inline PlanarDiagram permute_crossings(const PlanarDiagram& D, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != D.size())
        throw DiagramError("permutation size mismatch");
    std::vector<Crossing> cr(perm.size());
    for (size_t t = 0; t < perm.size(); ++t)
        cr[t] = D.crossings[static_cast<size_t>(perm[t])];
    return detail::rebuild(std::move(cr), D.free_loops, D.base_edge);
}

}  // namespace kho
