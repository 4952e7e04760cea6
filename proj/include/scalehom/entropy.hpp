// Cover entropy (Adler-Konheim-McAndrew): iterated joins under the map,
// minimal subcovers (exact where the structure allows, tagged greedy upper
// bounds otherwise) and the growth-rate sequence.  The circle backend is
// exact rational arc arithmetic; finite models use vertex-set joins.
//
// The circle join is grown by U v f^{-1}(previous block).  When every
// element is a single arc and the preimage components of each element are
// separated by gaps at least as long as the longest base arc, no element of
// the next block can meet two components; the block then consists exactly
// of the components contained in a base arc plus the clips cut by base-arc
// endpoints, which is enumerated directly instead of by pairwise
// intersection.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "scalehom/circle.hpp"
#include "scalehom/errors.hpp"
#include "scalehom/model.hpp"

namespace scalehom {

constexpr long kDefaultArcCap = 100'000;

struct SubcoverResult {
    long long size = 0;
    std::string method; // "exact" | "greedy-upper"
};

namespace detail {

// Windowed index over a family of plain arcs: all arcs strictly containing
// a point are found by a binary search plus a short scan.
struct ArcWindow {
    std::vector<Arc> ext; // arcs plus +1 copies, sorted by start
    Rational maxlen;

    explicit ArcWindow(const std::vector<Arc>& arcs) : maxlen(0) {
        for (const auto& a : arcs) {
            ext.push_back(a);
            ext.push_back(Arc{a.start + 1, a.length});
            if (a.length > maxlen) maxlen = a.length;
        }
        std::sort(ext.begin(), ext.end(),
                  [](const Arc& x, const Arc& y) { return x.start < y.start; });
    }

    // Furthest unwrapped end over arcs strictly containing frac(t), anchored
    // at t; returns t itself when no arc contains the point.
    Rational furthest_from(const Rational& t) const {
        Rational point = frac(t);
        Rational best = t;
        for (int shift = 0; shift <= 1; ++shift) {
            Rational q = point + shift;
            Rational lo = q - maxlen;
            auto it = std::lower_bound(ext.begin(), ext.end(), lo,
                                       [](const Arc& e, const Rational& v) { return e.start <= v; });
            for (; it != ext.end() && it->start < q; ++it) {
                Rational d = q - it->start;
                if (d < it->length) {
                    Rational reach = t + (it->length - d);
                    if (reach > best) best = reach;
                }
            }
        }
        return best;
    }
};

// Exact minimum number of arcs covering the circle.  Greedy extension from
// a first arc through an anchor point; trying every arc through the anchor
// is exact in general, and for families of equal-length arcs the
// furthest-reaching arc through the anchor alone suffices (a later start
// never ends earlier, so the usual exchange argument applies).
// Returns -1 when the arcs do not cover the circle.
inline long long min_arc_cover(const std::vector<Arc>& arcs) {
    for (const auto& a : arcs)
        if (a.length > 1) return 1;
    if (arcs.empty()) return -1;
    bool uniform = true;
    for (const auto& a : arcs)
        if (a.length != arcs[0].length) { uniform = false; break; }

    if (uniform) {
        // Sorted starts with a +1 shadow; the chain advances by binary
        // search for the largest start strictly below the frontier.
        const Rational L = arcs[0].length;
        std::vector<Rational> starts;
        starts.reserve(2 * arcs.size());
        for (const auto& a : arcs) starts.push_back(a.start);
        if (!std::is_sorted(starts.begin(), starts.end()))
            std::sort(starts.begin(), starts.end());
        size_t m = starts.size();
        for (size_t i = 0; i < m; ++i) starts.push_back(starts[i] + 1);
        auto best_start_below = [&](const Rational& p) -> const Rational* {
            auto it = std::lower_bound(starts.begin(), starts.end(), p);
            if (it == starts.begin()) return nullptr;
            --it;
            if (p - *it >= L) return nullptr; // no arc strictly contains p
            return &*it;
        };
        Rational x0 = arcs[0].midpoint();
        const Rational* first = best_start_below(x0 == 0 ? Rational(1) : x0);
        if (!first) return -1;
        Rational s0 = *first;
        Rational reach = s0 + L;
        Rational target = s0 + 1;
        long long count = 1;
        while (reach <= target) {
            const Rational* nxt = best_start_below(reach);
            if (!nxt || *nxt + L <= reach) return -1;
            reach = *nxt + L;
            ++count;
            if (count > (long long)(arcs.size()) + 1) return -1;
        }
        return count;
    }

    ArcWindow win(arcs);
    Rational x0 = arcs[0].midpoint();
    auto chain_from = [&](const Rational& s0, const Rational& first_end) -> long long {
        Rational reach = first_end;
        Rational target = s0 + 1;
        long long count = 1;
        while (reach <= target) {
            Rational next = win.furthest_from(reach);
            if (next == reach) return -1; // point not strictly inside any arc
            reach = next;
            ++count;
            if (count > (long long)(arcs.size()) + 1) return -1;
        }
        return count;
    };
    long long best = -1;
    for (const auto& first : arcs) {
        if (!first.contains(x0)) continue;
        Rational d = frac(x0 - first.start);
        Rational s0 = x0 - d; // unwrapped start of the first arc
        long long count = chain_from(s0, s0 + first.length);
        if (count < 0) continue;
        if (best < 0 || count < best) best = count;
    }
    return best;
}

// Exact minimum number of equal-length arcs needed to cover a finite point
// set on the circle (each point strictly inside a chosen arc), or -1 when
// impossible.  Greedy with the furthest-reaching arc per uncovered point;
// the anchor arc's wrap-around tail closes the cycle.
inline long long min_uniform_point_cover(const std::vector<Rational>& sorted_starts,
                                         const Rational& L,
                                         const std::vector<Rational>& sorted_points) {
    if (sorted_points.empty()) return 0;
    std::vector<Rational> starts;
    size_t m = sorted_starts.size();
    starts.reserve(3 * m);
    for (int shift = 0; shift <= 2; ++shift)
        for (size_t i = 0; i < m; ++i) starts.push_back(sorted_starts[i] + shift);
    std::vector<Rational> pts;
    size_t t = sorted_points.size();
    pts.reserve(3 * t);
    for (int shift = 0; shift <= 2; ++shift)
        for (size_t i = 0; i < t; ++i) pts.push_back(sorted_points[i] + shift);
    auto best_start_below = [&](const Rational& p) -> const Rational* {
        auto it = std::lower_bound(starts.begin(), starts.end(), p);
        if (it == starts.begin()) return nullptr;
        --it;
        if (p - *it >= L) return nullptr; // no arc strictly contains p
        return &*it;
    };
    // Work in the frame anchored at q0 = first point + 1; the anchor arc
    // covers [q0, reach) ahead and (s_a + 1, q0 + 1) behind (its next lap),
    // so the sweep stops at s_a + 1.
    Rational q0 = sorted_points[0] + 1;
    const Rational* anchor = best_start_below(q0);
    if (!anchor) return -1;
    Rational s_a = *anchor;
    Rational reach = s_a + L;
    Rational stop = s_a + 1;
    long long count = 1;
    size_t idx = size_t(std::lower_bound(pts.begin(), pts.end(), q0) - pts.begin());
    while (true) {
        while (idx < pts.size() && pts[idx] < reach) ++idx;
        if (idx >= pts.size() || pts[idx] >= stop) break;
        const Rational* nxt = best_start_below(pts[idx]);
        if (!nxt) return -1;
        reach = *nxt + L;
        ++count;
        if (count > (long long)(m) + 1) return -1;
    }
    return count;
}

// Set cover over a finite universe given as bitmask rows.  Exact
// branch-and-bound for small families, greedy (tagged) otherwise.
struct BitCover {
    int universe = 0;
    std::vector<std::vector<uint64_t>> rows;

    int words() const { return (universe + 63) / 64; }

    bool covered_all(const std::vector<uint64_t>& acc) const {
        for (int i = 0; i < universe; ++i)
            if (!(acc[i / 64] >> (i % 64) & 1)) return false;
        return true;
    }

    long long greedy() const {
        std::vector<uint64_t> acc(words(), 0);
        long long count = 0;
        while (!covered_all(acc)) {
            int best = -1, best_gain = 0;
            for (size_t r = 0; r < rows.size(); ++r) {
                int gain = 0;
                for (int w = 0; w < words(); ++w)
                    gain += __builtin_popcountll(rows[r][w] & ~acc[w]);
                if (gain > best_gain) { best_gain = gain; best = int(r); }
            }
            if (best < 0) throw precondition_error("not a cover");
            for (int w = 0; w < words(); ++w) acc[w] |= rows[best][w];
            ++count;
        }
        return count;
    }

    void search(std::vector<uint64_t>& acc, long long used, long long& best) const {
        if (used >= best) return;
        int point = -1, options = universe + 1;
        for (int i = 0; i < universe; ++i) {
            if (acc[i / 64] >> (i % 64) & 1) continue;
            int cnt = 0;
            for (const auto& r : rows)
                if (r[i / 64] >> (i % 64) & 1) ++cnt;
            if (cnt == 0) return; // uncoverable
            if (cnt < options) { options = cnt; point = i; }
        }
        if (point < 0) { best = used; return; }
        for (size_t r = 0; r < rows.size(); ++r) {
            if (!(rows[r][point / 64] >> (point % 64) & 1)) continue;
            std::vector<uint64_t> nacc = acc;
            for (int w = 0; w < words(); ++w) nacc[w] |= rows[r][w];
            search(nacc, used + 1, best);
        }
    }

    SubcoverResult solve(size_t exact_limit = 25) {
        if (rows.size() <= exact_limit) {
            long long best = greedy();
            std::vector<uint64_t> acc(words(), 0);
            search(acc, 0, best);
            return {best, "exact"};
        }
        return {greedy(), "greedy-upper"};
    }
};

} // namespace detail

// Minimal subcover of the circle picked from arc-set elements.  When every
// element is a single arc the circular greedy is exact.  For mixed families
// the longest-piece reduction gives an upper bound; it is certified exact
// when it meets the measure lower bound floor(1/max element measure)+1, and
// small families fall back to exact branch-and-bound over the atomized set
// cover.  Anything else is reported as a tagged greedy upper bound.
inline SubcoverResult min_subcover_circle(const std::vector<ArcSet>& elements) {
    for (const auto& e : elements)
        if (e.full) return {1, "exact"};
    if (elements.empty()) throw precondition_error("not a cover of the circle");
    bool all_single = true;
    for (const auto& e : elements)
        if (e.arcs.size() != 1) { all_single = false; break; }
    if (all_single) {
        std::vector<Arc> arcs;
        for (const auto& e : elements) arcs.push_back(e.arcs[0]);
        long long best = detail::min_arc_cover(arcs);
        if (best < 0) throw precondition_error("not a cover of the circle");
        return {best, "exact"};
    }

    // Mixed family: single arcs plus multi-piece elements.
    std::vector<Arc> singles;
    Rational max_measure(0);
    bool singles_uniform = true;
    for (const auto& e : elements) {
        Rational measure(0);
        for (const auto& a : e.arcs) measure += a.length;
        if (measure > max_measure) max_measure = measure;
        if (e.arcs.size() == 1) {
            if (!singles.empty() && e.arcs[0].length != singles[0].length)
                singles_uniform = false;
            singles.push_back(e.arcs[0]);
        }
    }

    long long upper = -1;
    if (!singles.empty()) upper = detail::min_arc_cover(singles);

    // Endpoint certificate: the union must cover every piece endpoint, and
    // when no multi-piece element strictly contains such an endpoint, only
    // the single arcs can cover them.  If the exact point-cover minimum
    // matches the singles-only cover, that is the true minimum.
    if (upper >= 0 && singles_uniform) {
        std::vector<Rational> points;
        for (const auto& e : elements)
            for (const auto& a : e.arcs) {
                points.push_back(a.start);
                points.push_back(frac(a.end()));
            }
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        bool clean = true;
        for (const auto& e : elements) {
            if (e.arcs.size() == 1) continue;
            for (const auto& a : e.arcs) {
                auto it = std::upper_bound(points.begin(), points.end(), a.start);
                Rational hi = a.end();
                if (it != points.end() && *it < hi) { clean = false; break; }
                // wrapped tail of the piece
                if (hi > 1) {
                    Rational whi = hi - 1;
                    if (!points.empty() && points.front() < whi) { clean = false; break; }
                }
            }
            if (!clean) break;
        }
        if (clean) {
            std::vector<Rational> starts;
            for (const auto& a : singles) starts.push_back(a.start);
            std::sort(starts.begin(), starts.end());
            long long lt = detail::min_uniform_point_cover(starts, singles[0].length, points);
            if (lt >= 0 && lt == upper) return {upper, "exact"};
        }
    }

    // Measure bound: m elements of measure <= max_measure each need
    // m*max_measure > 1 strictly (finitely many open arcs cannot tile a
    // connected circle), so m >= floor(1/max_measure) + 1.
    {
        Rational inv = 1 / max_measure;
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
        long long lower = fl.get_si() + 1;
        if (upper >= 0 && upper == lower) return {upper, "exact"};
    }

    if (elements.size() <= 25) {
        // atomize: endpoints and midpoints of consecutive endpoints
        std::vector<Rational> pts;
        for (const auto& e : elements)
            for (const auto& a : e.arcs) {
                pts.push_back(a.start);
                pts.push_back(frac(a.end()));
            }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        std::vector<Rational> samples = pts;
        for (size_t i = 0; i < pts.size(); ++i) {
            Rational next = (i + 1 < pts.size()) ? pts[i + 1] : pts[0] + 1;
            samples.push_back(frac((pts[i] + next) / 2));
        }
        detail::BitCover bc;
        bc.universe = int(samples.size());
        for (const auto& e : elements) {
            std::vector<uint64_t> row(bc.words(), 0);
            for (size_t i = 0; i < samples.size(); ++i)
                if (e.contains(samples[i])) row[i / 64] |= uint64_t(1) << (i % 64);
            bc.rows.push_back(std::move(row));
        }
        return bc.solve();
    }

    if (upper < 0) {
        // singles alone do not cover; fall back to the longest-piece
        // reduction for an upper bound
        std::vector<Arc> reduced;
        for (const auto& e : elements) {
            Arc longest = e.arcs[0];
            for (const auto& a : e.arcs)
                if (a.length > longest.length) longest = a;
            reduced.push_back(longest);
        }
        upper = detail::min_arc_cover(reduced);
        if (upper < 0) throw precondition_error("not a cover of the circle");
    }
    return {upper, "greedy-upper"};
}

// Minimal subcover of a finite vertex set.
inline SubcoverResult min_subcover_finite(const Cover& cover, int vertex_count) {
    if (!cover.covers(vertex_count)) throw precondition_error("not a cover of the vertex set");
    detail::BitCover bc;
    bc.universe = vertex_count;
    for (const auto& e : cover.elements) {
        std::vector<uint64_t> row(bc.words(), 0);
        for (VertexId v : e.verts) row[v / 64] |= uint64_t(1) << (v % 64);
        bc.rows.push_back(std::move(row));
    }
    return bc.solve();
}

namespace detail {

inline long total_arcs(const std::vector<ArcSet>& elements) {
    long n = 0;
    for (const auto& e : elements) n += e.piece_count();
    return n;
}

// Dedupe and drop single-arc elements contained in other single arcs;
// containment pruning never changes the minimal subcover size.
inline void prune_elements(std::vector<ArcSet>& elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    struct Entry { Rational s, e; size_t idx; };
    std::vector<Entry> entries;
    for (size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].full || elements[i].arcs.size() != 1) continue;
        const Arc& a = elements[i].arcs[0];
        entries.push_back({a.start, a.end(), i});
        entries.push_back({a.start + 1, a.end() + 1, i});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.s != y.s) return x.s < y.s;
        return x.e > y.e;
    });
    std::vector<char> dead(elements.size(), 0);
    Rational maxend(-10);
    for (const auto& en : entries) {
        if (en.e <= maxend) dead[en.idx] = 1;
        else maxend = en.e;
    }
    std::vector<ArcSet> kept;
    for (size_t i = 0; i < elements.size(); ++i)
        if (!dead[i]) kept.push_back(std::move(elements[i]));
    elements = std::move(kept);
}

// Containment/endpoint index over the base arcs.
struct BaseArcIndex {
    std::vector<Arc> arcs;
    std::vector<std::pair<Rational, int>> starts; // (start+shift, idx), shifts -1,0,+1
    std::vector<Rational> prefix_end;             // running max of unwrapped ends
    struct EndpointEntry { Rational p; int idx; };
    std::vector<EndpointEntry> endpoints;         // arc endpoints with shifts
    Rational maxlen;

    explicit BaseArcIndex(const std::vector<Arc>& base) : arcs(base), maxlen(0) {
        for (int i = 0; i < int(base.size()); ++i) {
            for (int m = -1; m <= 1; ++m) {
                starts.push_back({base[i].start + m, i});
                endpoints.push_back({base[i].start + m, i});
                endpoints.push_back({base[i].end() + m, i});
            }
            if (base[i].length > maxlen) maxlen = base[i].length;
        }
        std::sort(starts.begin(), starts.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        prefix_end.reserve(starts.size());
        Rational run(-10);
        for (const auto& [s, i] : starts) {
            Rational e = s + arcs[i].length;
            if (e > run) run = e;
            prefix_end.push_back(run);
        }
        std::sort(endpoints.begin(), endpoints.end(),
                  [](const EndpointEntry& x, const EndpointEntry& y) { return x.p < y.p; });
    }

    // Does some base arc contain the unwrapped interval (lo, hi)?
    bool contains_interval(const Rational& lo, const Rational& hi) const {
        auto it = std::upper_bound(starts.begin(), starts.end(), lo,
                                   [](const Rational& v, const auto& e) { return v < e.first; });
        if (it == starts.begin()) return false;
        return prefix_end[size_t(it - starts.begin()) - 1] >= hi;
    }

    // Visit base arcs owning an endpoint strictly inside (lo, hi).
    template <class F>
    void for_endpoints_inside(const Rational& lo, const Rational& hi, F f) const {
        auto it = std::upper_bound(endpoints.begin(), endpoints.end(), lo,
                                   [](const Rational& v, const EndpointEntry& e) { return v < e.p; });
        for (; it != endpoints.end() && it->p < hi; ++it) f(it->idx);
    }
};

// One block step J -> U v f^{-1}(J) for all-single-arc J whose element
// preimages have component gaps >= the longest base arc (so no element of
// the new block meets two components).  Emits the distinct elements
// directly: components contained in a base arc, plus clips cut by base-arc
// endpoints.
inline bool fast_block_step(const std::vector<ArcSet>& join, const PLMap& map,
                            const BaseArcIndex& base, std::vector<ArcSet>& out) {
    for (const auto& e : join)
        if (e.full || e.arcs.size() != 1) return false;
    std::vector<ArcSet> next;
    for (const auto& e : join) {
        ArcSet pre = map.preimage(e.arcs[0]);
        if (pre.full) return false;
        // gap certification between consecutive components
        int m = int(pre.arcs.size());
        for (int i = 0; i < m; ++i) {
            const Arc& cur = pre.arcs[i];
            Rational next_start = (i + 1 < m) ? pre.arcs[i + 1].start : pre.arcs[0].start + 1;
            if (m > 1 && next_start - cur.end() < base.maxlen) return false;
        }
        for (const Arc& c : pre.arcs) {
            Rational cs = c.start, ce = c.end();
            if (base.contains_interval(cs, ce)) next.push_back(ArcSet{false, {c}});
            base.for_endpoints_inside(cs, ce, [&](int idx) {
                const Arc& a = base.arcs[idx];
                for (int shift = -1; shift <= 1; ++shift) {
                    Rational lo = std::max(cs, Rational(a.start + shift));
                    Rational hi = std::min(ce, Rational(a.end() + shift));
                    if (hi > lo) next.push_back(ArcSet{false, {Arc{frac(lo), hi - lo}}});
                }
            });
        }
    }
    out = std::move(next);
    return true;
}

// General block step by whole-set intersection (handles multi-arc elements).
inline void general_block_step(const std::vector<ArcSet>& join, const PLMap& map,
                               const std::vector<Arc>& base_arcs, std::vector<ArcSet>& out) {
    std::vector<ArcSet> next;
    for (const auto& e : join) {
        ArcSet pre = map.preimage(e);
        PreparedArcs pp(pre);
        for (const Arc& a : base_arcs) {
            ArcSet inter = intersect_prepared(ArcSet{false, {a}}, pp);
            if (pre.full) inter = ArcSet{false, {a}};
            if (!inter.empty()) next.push_back(std::move(inter));
        }
    }
    out = std::move(next);
}

} // namespace detail

// The join U v f^{-1}U v ... v f^{-n}U on the circle, elements as arc sets
// (equal elements deduplicated, nothing else dropped).
inline std::vector<ArcSet> iterate_join(const CircleSystem& sys, int n,
                                        long arc_cap = kDefaultArcCap) {
    std::vector<ArcSet> join;
    std::vector<ArcSet> pre; // current f^{-k} images of the base arcs
    for (const auto& a : sys.arcs) {
        join.push_back(make_arcset({a}));
        pre.push_back(make_arcset({a}));
    }
    std::sort(join.begin(), join.end());
    join.erase(std::unique(join.begin(), join.end()), join.end());
    for (int k = 1; k <= n; ++k) {
        for (auto& ps : pre) ps = sys.pl_map.preimage(ps);
        std::vector<ArcSet> next;
        for (const auto& b : pre) {
            PreparedArcs pb(b);
            for (const auto& a : join) {
                ArcSet inter = intersect_prepared(a, pb);
                if (b.full) inter = a;
                if (!inter.empty()) next.push_back(std::move(inter));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (detail::total_arcs(next) > arc_cap)
            throw resource_cap_error("arc cap exceeded at join depth " + std::to_string(k));
        join = std::move(next);
    }
    return join;
}

// Finite-model join U v f^{-1}U v ... v f^{-n}U.
inline Cover iterate_join(const FiniteModel& model, int n) {
    if (!model.map) throw precondition_error("iterated join requires a self-map");
    Cover join = model.cover;
    Cover pre = model.cover;
    for (int k = 1; k <= n; ++k) {
        pre = pullback_cover(*model.map, pre);
        join = join_covers(join, pre);
        std::sort(join.elements.begin(), join.elements.end(),
                  [](const CoverElement& a, const CoverElement& b) { return a.verts < b.verts; });
        join.elements.erase(std::unique(join.elements.begin(), join.elements.end(),
                                        [](const CoverElement& a, const CoverElement& b) {
                                            return a.verts == b.verts;
                                        }),
                            join.elements.end());
    }
    return join;
}

struct EntropyRow {
    int n = 0;          // number of cover terms in the block join
    long long s = 0;    // minimal subcover size (method-tagged)
    std::string method;
    double quotient = 0.0; // (1/n) log s, nats
};

struct EntropyEstimate {
    std::vector<EntropyRow> rows;
    double estimate = 0.0; // infimum of the exact-method quotients
    bool all_exact = true;
};

namespace detail {

inline EntropyEstimate finish_estimate(std::vector<EntropyRow> rows) {
    EntropyEstimate est;
    est.rows = std::move(rows);
    bool have = false;
    for (const auto& r : est.rows) {
        if (r.method != "exact") { est.all_exact = false; continue; }
        if (!have || r.quotient < est.estimate) { est.estimate = r.quotient; have = true; }
    }
    if (!have && !est.rows.empty()) {
        est.estimate = est.rows.front().quotient;
        for (const auto& r : est.rows) est.estimate = std::min(est.estimate, r.quotient);
    }
    return est;
}

} // namespace detail

// Growth sequence over block joins of n = 1..n_max cover terms
// (U v f^{-1}U v ... v f^{-(n-1)}U), with the standard (1/n) log s(.)
// quotient.  The estimate is the infimum over exactly computed terms.
inline EntropyEstimate entropy_estimate(const CircleSystem& sys, int n_max,
                                        long arc_cap = kDefaultArcCap) {
    std::vector<EntropyRow> rows;
    std::vector<ArcSet> join;
    for (const auto& a : sys.arcs) join.push_back(make_arcset({a}));
    detail::prune_elements(join);
    detail::BaseArcIndex base(sys.arcs);
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) {
            std::vector<ArcSet> next;
            if (!detail::fast_block_step(join, sys.pl_map, base, next))
                detail::general_block_step(join, sys.pl_map, sys.arcs, next);
            detail::prune_elements(next);
            if (detail::total_arcs(next) > arc_cap)
                throw resource_cap_error("arc cap exceeded at block length " + std::to_string(n));
            join = std::move(next);
        }
        SubcoverResult sc = min_subcover_circle(join);
        rows.push_back({n, sc.size, sc.method, std::log(double(sc.size)) / n});
    }
    return detail::finish_estimate(std::move(rows));
}

inline EntropyEstimate entropy_estimate(const FiniteModel& model, int n_max) {
    if (!model.map) throw precondition_error("entropy requires a self-map");
    std::vector<EntropyRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        Cover join = iterate_join(model, n - 1);
        SubcoverResult sc = min_subcover_finite(join, model.vertex_count());
        rows.push_back({n, sc.size, sc.method, std::log(double(sc.size)) / n});
    }
    return detail::finish_estimate(std::move(rows));
}

} // namespace scalehom
