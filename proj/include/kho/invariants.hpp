#pragma once
// Derived invariants.  The Jones polynomial is computed by skein recursion
// straight from the diagram — independently of the cube complexes — so it can
// serve as a cross-check oracle for the graded Euler characteristic.  On top
// of the homology tables this header provides the Poincare polynomial,
// homological width, Thurston-Bennequin-type bounds, the Lee deformation with
// its filtration invariant s, knight-move pairings, the determinant, unknot
// detection, a quasi-alternating certificate search, and a chain-level check
// that a crossing's two smoothings split the complex exactly.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kho/cube_even.hpp"
#include "kho/cube_odd.hpp"
#include "kho/diagram.hpp"
#include "kho/homology.hpp"
#include "kho/laurent.hpp"
#include "kho/reduce.hpp"
#include "kho/snf.hpp"

namespace kho {

// ---- the skein oracle -------------------------------------------------------

namespace detail {

// Crossings whose first visit along the oriented walk enters on the
// under-strand, in walk order.  Components are walked from their lowest edge
// id, in that order; an empty answer means the diagram is descending — each
// component lies above all later ones and is unknotted — hence an unlink.
inline std::vector<int> descending_offenders(const PlanarDiagram& D) {
    std::vector<std::pair<int, int>> head(static_cast<size_t>(D.edge_count), {-1, -1});
    for (int k = 0; k < D.size(); ++k) {
        const auto& cr = D.crossings[static_cast<size_t>(k)];
        int over_in = cr.sign > 0 ? 3 : 1;
        head[static_cast<size_t>(cr.e[0])] = {k, 0};
        head[static_cast<size_t>(cr.e[static_cast<size_t>(over_in)])] = {k, over_in};
    }
    std::vector<int> offenders;
    std::vector<char> edge_seen(static_cast<size_t>(D.edge_count), 0);
    std::vector<char> crossing_seen(static_cast<size_t>(D.size()), 0);
    for (int e0 = 0; e0 < D.edge_count; ++e0) {
        if (edge_seen[static_cast<size_t>(e0)]) continue;
        int e = e0;
        do {
            edge_seen[static_cast<size_t>(e)] = 1;
            auto [k, s] = head[static_cast<size_t>(e)];
            if (!crossing_seen[static_cast<size_t>(k)]) {
                crossing_seen[static_cast<size_t>(k)] = 1;
                if (s == 0) offenders.push_back(k);
            }
            e = D.crossings[static_cast<size_t>(k)].e[static_cast<size_t>(s == 0 ? 2 : 4 - s)];
        } while (e != e0);
    }
    return offenders;
}

// undo one curl: a crossing with the same edge in two adjacent slots sits on
// a reducible loop; erase it by fusing each loop slot with its neighbouring
// through slot (the jones polynomial is unchanged)
inline std::optional<PlanarDiagram> remove_one_kink(const PlanarDiagram& D) {
    for (int k = 0; k < D.size(); ++k) {
        const auto& e = D.crossings[static_cast<size_t>(k)].e;
        for (int s = 0; s < 4; ++s) {
            if (e[static_cast<size_t>(s)] != e[static_cast<size_t>((s + 1) & 3)]) continue;
            if (s % 2 == 0)  // loop occupies (0,1) or (2,3): keep those apart
                return erase_crossing(D, k, {{{e[0], e[3]}, {e[1], e[2]}}}, true);
            return erase_crossing(D, k, {{{e[0], e[1]}, {e[2], e[3]}}}, true);
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Memoizing skein-recursion evaluator, normalized to (q + 1/q)^k on the
// crossingless k-component unlink:
//   J(positive crossing) = q^4 J(switched) + (q - q^3)    J(oriented smoothing)
//   J(negative crossing) = q^-4 J(switched) + (1/q - q^-3) J(oriented smoothing)
// At each diagram the crossings listed by the descending walk are resolved in
// order; once all of them are switched the diagram is descending and
// contributes a closed form, so the recursion only descends through diagrams
// with fewer crossings.
class JonesOracle {
  public:
    Laurent jones(const PlanarDiagram& input) {
        PlanarDiagram D = input;
        for (;;) {
            auto simpler = detail::remove_one_kink(D);
            if (!simpler) break;
            D = std::move(*simpler);
        }
        if (D.size() == 0) return Laurent::q_plus_qinv().pow(D.component_count);
        std::string key = D.to_pd_string();
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        auto offenders = detail::descending_offenders(D);
        Laurent total;
        Laurent lead(1);
        PlanarDiagram cur = D;
        for (int c : offenders) {
            int sgn = cur.crossings[static_cast<size_t>(c)].sign;
            Laurent mu = sgn > 0
                             ? Laurent::monomial(1, 1) + Laurent::monomial(-1, 3)
                             : Laurent::monomial(1, -1) + Laurent::monomial(-1, -3);
            total += lead * mu * jones(smooth_oriented(cur, c));
            lead = lead * Laurent::monomial(1, sgn > 0 ? 4 : -4);
            cur = switch_crossing(cur, c);
        }
        total += lead * Laurent::q_plus_qinv().pow(D.component_count);
        memo_.emplace(std::move(key), total);
        return total;
    }

  private:
    std::map<std::string, Laurent> memo_;
};

// ---- small readings off a homology table ------------------------------------

inline Laurent2 poincare_polynomial(const HomologyTable& t) { return t.poincare(); }

// number of j - 2i diagonals carrying a nonzero group
inline int homological_width(const HomologyTable& t) {
    if (t.groups.empty()) return 0;
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& [ij, g] : t.groups) {
        int d = ij.second - 2 * ij.first;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return (hi - lo) / 2 + 1;
}

// bound on the maximal Thurston-Bennequin number: min (j - i) over the
// support, one less in the reduced flavours
inline int tb_bound(const HomologyTable& t, bool reduced) {
    if (t.groups.empty()) throw std::invalid_argument("tb bound needs a nonempty table");
    int m = INT_MAX;
    for (const auto& [ij, g] : t.groups) m = std::min(m, ij.second - ij.first);
    return m - (reduced ? 1 : 0);
}

// |reduced jones evaluated at q = sqrt(-1)|; the value is purely real or
// purely imaginary depending on the component count
inline int64_t determinant_from_jones(const Laurent& jhat) {
    auto [re, im] = jhat.div_q_plus_qinv().eval_gaussian();
    if (re != 0 && im != 0)
        throw std::logic_error("reduced jones at q = i is neither real nor imaginary");
    return std::abs(re != 0 ? re : im);
}

// ---- Lee deformation ---------------------------------------------------------

namespace detail {

template <class T>
std::map<int, int64_t> filtered_total_ranks(ComplexT<T> tot) {
    ComplexT<T> red = reduce_complex(tot);
    std::map<int, int64_t> out;
    for (int k = 0; k < red.levels(); ++k) {
        int64_t h = red.dim(k);
        if (k < red.levels() - 1) h -= rank_over_q_t(red.d[static_cast<size_t>(k)]);
        if (k > 0) h -= rank_over_q_t(red.d[static_cast<size_t>(k) - 1]);
        if (h) out[red.i_min + k] = h;
    }
    return out;
}

}  // namespace detail

// ranks of the Lee homology over the rationals, keyed by homological degree;
// a k-component link carries 2^k generators in total
inline std::map<int, int64_t> lee_homology_ranks(const PlanarDiagram& D) {
    FilteredComplex fc = build_lee_complex(D);
    ChainComplex tot = fc.base;
    tot.d = fc.total();
    try {
        return detail::filtered_total_ranks(tot);
    } catch (const OverflowError&) {
        return detail::filtered_total_ranks(to_mpz(tot));
    }
}

// The filtration invariant s of a knot: the Lee homology in homological
// degree zero is two-dimensional, its generators sit in filtration levels
// s - 1 and s + 1.  With F_j the span of the generators of internal degree
// >= j (a subcomplex: the total differential never lowers the degree), the
// image of F_j in degree-zero Lee homology has dimension
//   r_j = rank [Inc_j | N] - rank N - rank (D0 restricted to F_j)
// where N and D0 are the total differentials into and out of degree zero.
inline int rasmussen_s(const PlanarDiagram& D) {
    if (D.component_count != 1)
        throw std::invalid_argument("the s invariant is defined for knots");
    FilteredComplex fc = build_lee_complex(D);
    ChainComplex cx = fc.base;
    cx.d = fc.total();
    // collapse degree-preserving unit pairs first; this keeps the whole
    // filtration intact while shrinking the rank computations below from
    // chain-group size to homology size
    try {
        cx = reduce_complex(cx, /*filtered=*/true);
    } catch (const OverflowError&) {
        // keep the unreduced complex; the ranks below retry in mpz on demand
    }
    const auto& tot = cx.d;
    const int k0 = -cx.i_min;
    const auto& q0 = cx.qdeg[static_cast<size_t>(k0)];
    const int n0 = static_cast<int>(q0.size());
    SparseMat<int64_t> N = k0 > 0 ? tot[static_cast<size_t>(k0) - 1] : SparseMat<int64_t>(n0, 0);
    SparseMat<int64_t> D0 =
        k0 < static_cast<int>(tot.size()) ? tot[static_cast<size_t>(k0)] : SparseMat<int64_t>(0, n0);
    const int64_t rank_n = rank_over_q(N);

    auto r_of = [&](int j) -> int64_t {
        std::vector<int> keep;
        for (int b = 0; b < n0; ++b)
            if (q0[static_cast<size_t>(b)] >= j) keep.push_back(b);
        SparseMat<int64_t> inc_n(n0, static_cast<int>(keep.size()) + N.cols);
        std::vector<int> col_pos(static_cast<size_t>(n0), -1);
        for (size_t t = 0; t < keep.size(); ++t) {
            inc_n.add(keep[t], static_cast<int>(t), 1);
            col_pos[static_cast<size_t>(keep[t])] = static_cast<int>(t);
        }
        for (const auto& [r, cc, v] : N.entries)
            inc_n.add(r, static_cast<int>(keep.size()) + cc, v);
        SparseMat<int64_t> d0f(D0.rows, static_cast<int>(keep.size()));
        for (const auto& [r, cc, v] : D0.entries)
            if (col_pos[static_cast<size_t>(cc)] >= 0) d0f.add(r, col_pos[static_cast<size_t>(cc)], v);
        return rank_over_q(inc_n) - rank_n - rank_over_q(d0f);
    };

    std::set<int> qs(q0.begin(), q0.end());
    if (qs.empty()) throw std::logic_error("empty degree-zero chain group");
    int smax = INT_MIN, smin = INT_MIN;
    for (int j : qs) {
        int64_t r = r_of(j);
        if (j == *qs.begin() && r != 2)
            throw std::logic_error("degree-zero Lee homology has dimension " + std::to_string(r) +
                                   ", expected 2");
        if (r >= 1) smax = std::max(smax, j);
        if (r >= 2) smin = std::max(smin, j);
    }
    if (smax - smin != 2) throw std::logic_error("Lee filtration gap is not two");
    return (smax + smin) / 2;
}

// ---- knight-move pairing -----------------------------------------------------

struct KnightMovePairing {
    bool ok = false;
    std::pair<int, int> pawn{0, 0};  // q-degrees of the exceptional pair at i = 0
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> knights;
    int s() const { return pawn.first + 1; }
};

// pair up the rational ranks into knight moves (i, j) ~ (i+1, j+4) plus one
// exceptional pair (0, s-1), (0, s+1); backtracking from the lexicographically
// smallest unpaired cell (which can only ever be the lower end of a pair)
inline KnightMovePairing knight_move_decomposition(const HomologyTable& ranks) {
    std::map<std::pair<int, int>, int64_t> left;
    for (const auto& [ij, g] : ranks.groups) {
        if (!g.torsion.empty())
            throw std::invalid_argument("knight-move pairing expects a table of ranks");
        if (g.rank) left[ij] = g.rank;
    }
    KnightMovePairing out;
    std::function<bool(bool)> go = [&](bool pawn_used) -> bool {
        auto it = std::find_if(left.begin(), left.end(),
                               [](const auto& kv) { return kv.second > 0; });
        if (it == left.end()) return pawn_used;
        auto [i, j] = it->first;
        if (auto jt = left.find({i + 1, j + 4}); jt != left.end() && jt->second > 0) {
            --it->second;
            --jt->second;
            out.knights.push_back({{i, j}, {i + 1, j + 4}});
            if (go(pawn_used)) return true;
            out.knights.pop_back();
            ++it->second;
            ++jt->second;
        }
        if (i == 0 && !pawn_used) {
            if (auto jt = left.find({0, j + 2}); jt != left.end() && jt->second > 0) {
                --it->second;
                --jt->second;
                out.pawn = {j, j + 2};
                if (go(true)) return true;
                ++it->second;
                ++jt->second;
            }
        }
        return false;
    };
    out.ok = go(false);
    return out;
}

// ---- recognition -------------------------------------------------------------

// a knot is trivial exactly when its reduced integral homology has total rank 1
inline bool is_unknot(const PlanarDiagram& D) {
    if (D.component_count != 1) return false;
    return khovanov_homology(D, Variant::EvenReduced, RingSpec::Z()).total_rank() == 1;
}

enum class Tri { Yes, No, Unknown };
inline std::string tri_name(Tri t) {
    return t == Tri::Yes ? "yes" : t == Tri::No ? "no" : "unknown";
}

struct QaOptions {
    int64_t budget = 4000;  // recursion node allowance before giving up
};
struct QaResult {
    Tri status = Tri::Unknown;
    std::string reason;
    int64_t nodes = 0;
};

// Quasi-alternating certificate search.  The class of quasi-alternating links
// is generated from the unknot by the rule: a link with a crossing whose two
// smoothings are both quasi-alternating with determinants adding up to the
// total is quasi-alternating.  Determinant zero rules a link out, as does
// homology spread over more than two diagonals (such links are never thin).
// A failed search is reported as "unknown": only one diagram was examined.
class QaSearcher {
  public:
    explicit QaSearcher(QaOptions opts = {}) : opts_(opts) {}

    QaResult run(const PlanarDiagram& D) {
        nodes_ = 0;
        QaResult res;
        int64_t det = determinant_from_jones(jones_.jones(D));
        if (det == 0) {
            res.status = Tri::No;
            res.reason = "determinant is zero";
            return res;
        }
        for (Variant v : {Variant::Even, Variant::Odd}) {
            int w = homological_width(khovanov_homology(D, v, RingSpec::Z()));
            if (w > 2) {
                res.status = Tri::No;
                res.reason = std::string(v == Variant::Even ? "even" : "odd") +
                             " homology spans " + std::to_string(w) + " diagonals";
                return res;
            }
        }
        res.status = classify(D, det);
        res.nodes = nodes_;
        if (res.status == Tri::Yes)
            res.reason = "resolution-tree certificate";
        else if (res.status == Tri::No)
            res.reason = "determinant-one diagram is knotted";
        else
            res.reason = nodes_ >= opts_.budget ? "search budget exhausted"
                                                : "no certificate at this diagram";
        return res;
    }

    JonesOracle& oracle() { return jones_; }

  private:
    Tri classify(const PlanarDiagram& D, int64_t det) {
        if (det == 0) return Tri::No;
        std::string key = D.to_pd_string();
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (++nodes_ > opts_.budget) return Tri::Unknown;
        if (det == 1) {
            // determinants add along the recursion, so a nontrivial
            // quasi-alternating link has determinant at least two
            Tri t = is_unknot(D) ? Tri::Yes : Tri::No;
            memo_[key] = t;
            return t;
        }
        for (int c = 0; c < D.size(); ++c) {
            PlanarDiagram a = smooth_oriented(D, c);
            PlanarDiagram b = smooth_unoriented(D, c);
            int64_t da = determinant_from_jones(jones_.jones(a));
            int64_t db = determinant_from_jones(jones_.jones(b));
            if (da < 1 || db < 1 || da + db != det) continue;
            if (classify(a, da) != Tri::Yes) continue;
            if (classify(b, db) != Tri::Yes) continue;
            memo_[key] = Tri::Yes;
            return Tri::Yes;
        }
        return Tri::Unknown;  // not memoized: the verdict depends on the budget
    }

    QaOptions opts_;
    int64_t nodes_ = 0;
    JonesOracle jones_;
    std::map<std::string, Tri> memo_;
};

// ---- chain-level exactness at a crossing -------------------------------------

namespace detail {

// basis layout of a full unreduced even complex: per level, the states in
// enumeration order with their resolutions and cumulative offsets (the mask
// index inside a state's slots is the mask itself)
struct FullLayout {
    std::vector<std::vector<uint64_t>> states;
    std::vector<std::vector<Resolution>> res;
    std::vector<std::vector<int64_t>> offset;

    explicit FullLayout(const PlanarDiagram& D) {
        Cube cube(D);
        const int n = cube.n;
        states.resize(static_cast<size_t>(n) + 1);
        res.resize(static_cast<size_t>(n) + 1);
        offset.resize(static_cast<size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            auto& st = states[static_cast<size_t>(k)];
            st = cube.level_states(k);
            int64_t dim = 0;
            for (uint64_t v : st) {
                res[static_cast<size_t>(k)].push_back(D.resolve_state(v));
                offset[static_cast<size_t>(k)].push_back(dim);
                dim += int64_t(1) << res[static_cast<size_t>(k)].back().circles;
            }
        }
    }
    // decode a basis index into (state position, mask)
    std::pair<size_t, uint64_t> decode(int k, int64_t idx) const {
        const auto& off = offset[static_cast<size_t>(k)];
        auto it = std::upper_bound(off.begin(), off.end(), idx);
        size_t si = static_cast<size_t>(it - off.begin()) - 1;
        return {si, static_cast<uint64_t>(idx - off[si])};
    }
};

}  // namespace detail

struct SkeinCheckReport {
    bool ok = true;
    std::vector<std::string> errors;
    void fail(std::string msg) {
        ok = false;
        if (errors.size() < 8) errors.push_back(std::move(msg));
    }
};

// Verify, on the nose, that the even complex at crossing c is an extension:
// the span of the states carrying the 1-marker at c is a subcomplex
// isomorphic to the shifted complex of the 1-smoothing (after a sign twist
// by the markers below c), and the quotient — the 0-marker states — is
// isomorphic to the shifted complex of the 0-smoothing.
inline SkeinCheckReport check_skein_exactness(const PlanarDiagram& D, int c) {
    SkeinCheckReport rep;
    if (c < 0 || c >= D.size()) throw std::invalid_argument("crossing index out of range");
    const int n = D.size();
    const int sgn = D.crossings[static_cast<size_t>(c)].sign;

    std::vector<int> em1, em0;
    PlanarDiagram D1 = sgn > 0 ? smooth_unoriented(D, c, &em1) : smooth_oriented(D, c, &em1);
    PlanarDiagram D0 = sgn > 0 ? smooth_oriented(D, c, &em0) : smooth_unoriented(D, c, &em0);
    const int w1 = D1.negative_crossings() - D.negative_crossings();
    const int w0 = D0.negative_crossings() - D.negative_crossings();
    // grading shifts [di]{dq} identifying the pieces with the smoothings
    const int di1 = sgn > 0 ? 1 + w1 : 0;
    const int dq1 = sgn > 0 ? 2 + 3 * w1 : -1;
    const int di0 = sgn > 0 ? 0 : w0;
    const int dq0 = sgn > 0 ? 1 : 1 + 3 * w0;

    ChainComplex C = build_even_complex(D);
    ChainComplex C1 = build_even_complex(D1);
    ChainComplex C0 = build_even_complex(D0);
    detail::FullLayout L(D), L1(D1), L0(D0);
    Cube cube(D), cube1(D1), cube0(D0);

    // basis translation: per D-level, each index of a state with the matching
    // marker at c maps to (index in the smoothing's complex, twist sign)
    struct Part {
        const PlanarDiagram* Ds;
        const ChainComplex* Cs;
        const detail::FullLayout* Ls;
        const Cube* cubes;
        const std::vector<int>* em;
        int bit, di, dq;
        bool twist;
        std::vector<std::vector<std::pair<int64_t, int>>> to_small;  // per D level
    };
    Part sub{&D1, &C1, &L1, &cube1, &em1, 1, di1, dq1, true, {}};
    Part quot{&D0, &C0, &L0, &cube0, &em0, 0, di0, dq0, false, {}};

    std::vector<int> phi;
    for (Part* part : {&sub, &quot}) {
        part->to_small.assign(static_cast<size_t>(n) + 1, {});
        for (int k = 0; k <= n; ++k) {
            auto& tr = part->to_small[static_cast<size_t>(k)];
            tr.assign(static_cast<size_t>(C.dim(k)), {-1, 0});
            if (part->bit == 1 && k == 0) continue;
            int ks = k - part->bit;
            for (size_t si = 0; si < L.states[static_cast<size_t>(k)].size(); ++si) {
                uint64_t v = L.states[static_cast<size_t>(k)][si];
                if (static_cast<int>(v >> c & 1) != part->bit) continue;
                uint64_t vs = mask_compress(v, c);
                size_t sis = static_cast<size_t>(subset_rank(vs));
                const Resolution& r = L.res[static_cast<size_t>(k)][si];
                const Resolution& rs = part->Ls->res[static_cast<size_t>(ks)][sis];
                if (r.circles != rs.circles) {
                    rep.fail("circle count mismatch at state " + std::to_string(v));
                    return rep;
                }
                // circle bijection via the surviving-edge map
                phi.assign(static_cast<size_t>(r.circles), -1);
                int ec = r.circles - D.free_loops;
                int ecs = rs.circles - part->Ds->free_loops;
                for (int ci = 0; ci < ec; ++ci) {
                    int me = (*part->em)[static_cast<size_t>(
                        r.rep_edge[static_cast<size_t>(ci)])];
                    phi[static_cast<size_t>(ci)] =
                        me < part->Ds->edge_count
                            ? rs.circle_of_edge[static_cast<size_t>(me)]
                            : ecs + (me - part->Ds->edge_count);
                }
                for (int t = 0; t < D.free_loops; ++t)
                    phi[static_cast<size_t>(ec + t)] = ecs + t;
                std::vector<char> hit(static_cast<size_t>(r.circles), 0);
                for (int x : phi) {
                    if (x < 0 || x >= r.circles || hit[static_cast<size_t>(x)]) {
                        rep.fail("circle bijection failed at state " + std::to_string(v));
                        return rep;
                    }
                    hit[static_cast<size_t>(x)] = 1;
                }
                int tw = part->twist && (popcount64(v & ((uint64_t(1) << c) - 1)) & 1) ? -1 : 1;
                for (uint64_t m = 0; m < (uint64_t(1) << r.circles); ++m) {
                    uint64_t ms = 0;
                    uint64_t rest = m;
                    while (rest) {
                        int b = __builtin_ctzll(rest);
                        rest &= rest - 1;
                        ms |= uint64_t(1) << phi[static_cast<size_t>(b)];
                    }
                    int64_t big = L.offset[static_cast<size_t>(k)][si] + static_cast<int64_t>(m);
                    int64_t small =
                        part->Ls->offset[static_cast<size_t>(ks)][sis] + static_cast<int64_t>(ms);
                    tr[static_cast<size_t>(big)] = {small, tw};
                    // grading shifts must be uniform
                    int qa = cube.qdeg(v, r.circles, m);
                    int qb = part->cubes->qdeg(vs, rs.circles, ms);
                    if (qa - qb != part->dq)
                        rep.fail("internal degree shift is " + std::to_string(qa - qb) +
                                 ", expected " + std::to_string(part->dq));
                    int ia = cube.i_of(v);
                    int ib = part->cubes->i_of(vs);
                    if (ia - ib != part->di)
                        rep.fail("homological shift is " + std::to_string(ia - ib) +
                                 ", expected " + std::to_string(part->di));
                }
            }
        }
        if (!rep.ok) return rep;
        // the translated generators must exhaust the smoothing's complex
        for (int k = 0; k <= n; ++k) {
            int64_t count = 0;
            for (const auto& entry : part->to_small[static_cast<size_t>(k)])
                if (entry.first >= 0) ++count;
            int ks = k - part->bit;
            int64_t want = ks >= 0 && ks < part->Cs->levels() ? part->Cs->dim(ks) : 0;
            if (count != want)
                rep.fail("level " + std::to_string(k) + " translates " + std::to_string(count) +
                         " generators, smoothing has " + std::to_string(want));
        }
        if (!rep.ok) return rep;
    }

    // walk the big differential and classify every entry
    for (int k = 0; k < n; ++k) {
        std::map<std::pair<int64_t, int64_t>, int64_t> seen_sub, seen_quot;
        for (const auto& [r, col, val] : C.d[static_cast<size_t>(k)].entries) {
            auto [csi, cm] = L.decode(k, col);
            auto [rsi, rm] = L.decode(k + 1, r);
            int cbit = static_cast<int>(L.states[static_cast<size_t>(k)][csi] >> c & 1);
            int rbit = static_cast<int>(L.states[static_cast<size_t>(k) + 1][rsi] >> c & 1);
            if (cbit == 1 && rbit == 0) {
                rep.fail("marker-1 span is not a subcomplex at level " + std::to_string(k));
                continue;
            }
            if (cbit == 1) {  // inside the subcomplex
                auto [sc, twc] = sub.to_small[static_cast<size_t>(k)][static_cast<size_t>(col)];
                auto [sr, twr] =
                    sub.to_small[static_cast<size_t>(k) + 1][static_cast<size_t>(r)];
                seen_sub[{sr, sc}] += val * twc * twr;
            } else if (rbit == 0) {  // inside the quotient
                auto [sc, twc] = quot.to_small[static_cast<size_t>(k)][static_cast<size_t>(col)];
                auto [sr, twr] =
                    quot.to_small[static_cast<size_t>(k) + 1][static_cast<size_t>(r)];
                seen_quot[{sr, sc}] += val * twc * twr;
            }
            // cbit == 0, rbit == 1: the connecting part, unconstrained here
        }
        auto compare = [&](const Part& part, std::map<std::pair<int64_t, int64_t>, int64_t>& seen,
                           const char* label) {
            std::map<std::pair<int64_t, int64_t>, int64_t> want;
            int ks = k - part.bit;
            if (ks >= 0 && ks + 1 < part.Cs->levels() &&
                ks < static_cast<int>(part.Cs->d.size()))
                for (const auto& [r2, c2, v2] : part.Cs->d[static_cast<size_t>(ks)].entries)
                    want[{r2, c2}] += v2;
            for (auto it = seen.begin(); it != seen.end();)
                it = it->second == 0 ? seen.erase(it) : std::next(it);
            for (auto it = want.begin(); it != want.end();)
                it = it->second == 0 ? want.erase(it) : std::next(it);
            if (seen != want)
                rep.fail(std::string(label) + " differential mismatch at level " +
                         std::to_string(k));
        };
        compare(sub, seen_sub, "subcomplex");
        compare(quot, seen_quot, "quotient");
    }
    return rep;
}

// ---- structural identity suite -----------------------------------------------

// torsion as a multiset of prime powers (Z/4 stays 4, Z/6 splits into 2, 3);
// direct sums are compared in this form, where invariant factors would lie
inline std::multiset<int64_t> primary_parts(const AbelianGroup& g) {
    std::multiset<int64_t> out;
    for (int64_t t : g.torsion) {
        int64_t rest = t;
        for (int64_t p = 2; p * p <= rest; ++p) {
            if (rest % p) continue;
            int64_t pk = 1;
            while (rest % p == 0) {
                pk *= p;
                rest /= p;
            }
            out.insert(pk);
        }
        if (rest > 1) out.insert(rest);
    }
    return out;
}

using PrimaryTable = std::map<std::pair<int, int>, std::pair<int64_t, std::multiset<int64_t>>>;

inline PrimaryTable primary_form(const HomologyTable& t, int di = 0, int dj = 0) {
    PrimaryTable out;
    for (const auto& [ij, g] : t.groups) {
        auto& cell = out[{ij.first + di, ij.second + dj}];
        cell.first += g.rank;
        auto parts = primary_parts(g);
        cell.second.insert(parts.begin(), parts.end());
    }
    return out;
}

inline PrimaryTable merged(PrimaryTable a, const PrimaryTable& b) {
    for (const auto& [ij, cell] : b) {
        auto& into = a[ij];
        into.first += cell.first;
        into.second.insert(cell.second.begin(), cell.second.end());
    }
    return a;
}

struct CheckList {
    std::vector<std::pair<std::string, bool>> items;
    void add(const std::string& name, bool pass) { items.emplace_back(name, pass); }
    bool all_ok() const {
        for (const auto& [n, p] : items)
            if (!p) return false;
        return true;
    }
    std::string summary() const {
        int pass = 0;
        std::string failing;
        for (const auto& [n, p] : items) {
            if (p)
                ++pass;
            else
                failing += (failing.empty() ? "" : ", ") + n;
        }
        std::string s = std::to_string(pass) + "/" + std::to_string(items.size()) + " pass";
        if (!failing.empty()) s += "; failing: " + failing;
        return s;
    }
};

// cross-checks every diagram should satisfy, tying the four theories, the
// skein oracle and the sign conventions together
inline CheckList verify_structural_identities(const PlanarDiagram& D) {
    CheckList out;
    ArrowChoice arrows = default_arrows(D);
    OddSigns signs = solve_odd_signs(D, arrows);
    ChainComplex even = build_even_complex(D);
    ChainComplex evenr = build_even_complex(D, true);
    ChainComplex odd = build_odd(D, false, signs, arrows);
    ChainComplex oddr = build_odd(D, true, signs, arrows);

    for (auto [name, cx] : std::initializer_list<std::pair<const char*, const ChainComplex*>>{
             {"even", &even}, {"reduced even", &evenr}, {"odd", &odd}, {"reduced odd", &oddr}}) {
        cx->validate_shapes();
        out.add(std::string(name) + " differential squares to zero", cx->d_squared_is_zero());
        out.add(std::string(name) + " differential preserves internal degree",
                cx->preserves_qdeg());
    }
    {
        std::set<int> parities;
        for (const auto& lvl : even.qdeg)
            for (int q : lvl) parities.insert(((q % 2) + 2) % 2);
        out.add("internal degree parity is uniform", parities.size() <= 1);
    }
    {
        JonesOracle oracle;
        out.add("graded euler characteristic matches the skein jones",
                even.euler_characteristic() == oracle.jones(D));
    }

    RingSpec f2 = RingSpec::F(2);
    HomologyTable even2 = khovanov_homology(D, Variant::Even, f2);
    HomologyTable evenr2 = khovanov_homology(D, Variant::EvenReduced, f2);
    HomologyTable odd2 = khovanov_homology(D, Variant::Odd, f2);
    HomologyTable oddr2 = khovanov_homology(D, Variant::OddReduced, f2);
    out.add("mod-2 homology is reduced tensor (q + 1/q)",
            even2.poincare() == evenr2.poincare() * as_laurent2_q(Laurent::q_plus_qinv()));
    out.add("odd and even homology agree mod 2", odd2.poincare() == even2.poincare());
    out.add("reduced odd and reduced even agree mod 2",
            oddr2.poincare() == evenr2.poincare());

    HomologyTable oddz = khovanov_homology(D, Variant::Odd, RingSpec::Z());
    HomologyTable oddrz = khovanov_homology(D, Variant::OddReduced, RingSpec::Z());
    out.add("odd homology splits as two shifted reduced copies",
            primary_form(oddz) ==
                merged(primary_form(oddrz, 0, 1), primary_form(oddrz, 0, -1)));

    {
        HomologyTable evq = khovanov_homology(D, Variant::Even, RingSpec::Q());
        HomologyTable mevq = khovanov_homology(mirror(D), Variant::Even, RingSpec::Q());
        PrimaryTable flipped;
        for (const auto& [ij, cell] : primary_form(mevq))
            flipped[{-ij.first, -ij.second}] = cell;
        out.add("mirror rational homology is the transpose", primary_form(evq) == flipped);
    }

    {
        // the theories must not depend on presentation choices
        HomologyTable evz = khovanov_homology(D, Variant::Even, RingSpec::Z());
        std::vector<int> perm(static_cast<size_t>(D.size()));
        for (int k = 0; k < D.size(); ++k) perm[static_cast<size_t>(k)] = D.size() - 1 - k;
        PlanarDiagram Dp = permute_crossings(D, perm);
        out.add("even homology ignores crossing order",
                khovanov_homology(Dp, Variant::Even, RingSpec::Z()).groups == evz.groups);
        out.add("odd homology ignores crossing order",
                khovanov_homology(Dp, Variant::Odd, RingSpec::Z()).groups == oddz.groups);

        ArrowChoice flipped_arrows = arrows;
        for (auto& b : flipped_arrows) b ^= 1;
        HomologyOptions oh;
        oh.arrows = flipped_arrows;
        out.add("odd homology ignores the arrow choice",
                khovanov_homology(D, Variant::Odd, RingSpec::Z(), oh).groups == oddz.groups);

        OddSigns gauge = signs;
        gauge.flip_vertex(0);
        if (D.size() > 1) gauge.flip_vertex((uint64_t(1) << D.size()) - 1);
        HomologyOptions og;
        og.signs = &gauge;
        out.add("odd homology ignores the sign gauge",
                khovanov_homology(D, Variant::Odd, RingSpec::Z(), og).groups == oddz.groups);
    }
    return out;
}

}  // namespace kho
