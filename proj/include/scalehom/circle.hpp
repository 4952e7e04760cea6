// The circle [0,1) with open rational arcs, piecewise-linear self-maps,
// exact preimages/intersections of arc unions, and the sampling bridge to
// finite models.  No floating point anywhere.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "scalehom/errors.hpp"
#include "scalehom/model.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

inline Rational rational_floor(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(q);
}

// x mod 1, in [0,1).
inline Rational frac(const Rational& x) { return x - rational_floor(x); }

// Open arc (start, start+length) on the circle.  length == 1 is the circle
// minus the start point; inputs longer than 1 are normalized to FullCircle
// at the ArcSet level.
struct Arc {
    Rational start;  // in [0,1)
    Rational length; // in (0,1]

    bool contains(const Rational& x) const {
        Rational d = frac(x - start);
        return sgn(d) > 0 && d < length;
    }
    Rational end() const { return start + length; } // unwrapped
    Rational midpoint() const { return frac(start + length / 2); }
};

// A finite union of disjoint open arcs, or the full circle.
struct ArcSet {
    bool full = false;
    std::vector<Arc> arcs; // normalized: starts in [0,1), sorted, disjoint

    bool empty() const { return !full && arcs.empty(); }
    int piece_count() const { return full ? 1 : int(arcs.size()); }

    bool contains(const Rational& x) const {
        if (full) return true;
        for (const auto& a : arcs)
            if (a.contains(x)) return true;
        return false;
    }

    bool operator==(const ArcSet& o) const {
        if (full != o.full) return false;
        if (arcs.size() != o.arcs.size()) return false;
        for (size_t i = 0; i < arcs.size(); ++i)
            if (arcs[i].start != o.arcs[i].start || arcs[i].length != o.arcs[i].length)
                return false;
        return true;
    }
    bool operator<(const ArcSet& o) const {
        if (full != o.full) return full < o.full;
        if (arcs.size() != o.arcs.size()) return arcs.size() < o.arcs.size();
        for (size_t i = 0; i < arcs.size(); ++i) {
            if (arcs[i].start != o.arcs[i].start) return arcs[i].start < o.arcs[i].start;
            if (arcs[i].length != o.arcs[i].length) return arcs[i].length < o.arcs[i].length;
        }
        return false;
    }
};

namespace detail {

// Open real interval with endpoint-inclusion flags, used while assembling
// preimages segment by segment.
struct FlaggedPiece {
    Rational lo, hi;
    bool lo_in = false, hi_in = false;
};

inline bool mergeable(const FlaggedPiece& a, const FlaggedPiece& b) {
    if (b.lo < a.hi) return true;
    return b.lo == a.hi && (a.hi_in || b.lo_in);
}

inline std::vector<FlaggedPiece> merge_pieces(std::vector<FlaggedPiece> ps) {
    std::sort(ps.begin(), ps.end(), [](const FlaggedPiece& x, const FlaggedPiece& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.hi < y.hi;
    });
    std::vector<FlaggedPiece> out;
    for (auto& p : ps) {
        if (p.hi < p.lo || (p.hi == p.lo && !(p.lo_in && p.hi_in))) continue;
        if (!out.empty() && mergeable(out.back(), p)) {
            if (p.hi > out.back().hi) {
                out.back().hi = p.hi;
                out.back().hi_in = p.hi_in;
            } else if (p.hi == out.back().hi) {
                out.back().hi_in = out.back().hi_in || p.hi_in;
            }
        } else {
            out.push_back(p);
        }
    }
    return out;
}

} // namespace detail

// Normalize a list of real-line pieces (arbitrary unwrapped coordinates)
// into a canonical ArcSet.
inline ArcSet normalize_pieces(std::vector<detail::FlaggedPiece> pieces) {
    ArcSet out;
    // Duplicate with integer shifts so circular adjacency is visible on the
    // line, merge, then keep one representative per circular arc.
    std::vector<detail::FlaggedPiece> shifted;
    for (const auto& p : pieces) {
        if (p.hi - p.lo >= 1) { out.full = true; return out; }
        Rational base = p.lo - rational_floor(p.lo); // lo in [0,1)
        Rational span = p.hi - p.lo;
        for (int m = -1; m <= 1; ++m) {
            detail::FlaggedPiece q{base + m, base + m + span, p.lo_in, p.hi_in};
            shifted.push_back(q);
        }
    }
    auto merged = detail::merge_pieces(std::move(shifted));
    for (const auto& p : merged) {
        if (p.hi - p.lo > 1 || (p.hi - p.lo == 1 && (p.lo_in || p.hi_in))) {
            out.full = true;
            out.arcs.clear();
            return out;
        }
        if (sgn(p.lo) >= 0 && p.lo < 1)
            out.arcs.push_back(Arc{p.lo, p.hi - p.lo});
    }
    std::sort(out.arcs.begin(), out.arcs.end(),
              [](const Arc& a, const Arc& b) { return a.start < b.start; });
    out.arcs.erase(std::unique(out.arcs.begin(), out.arcs.end(),
                               [](const Arc& a, const Arc& b) {
                                   return a.start == b.start && a.length == b.length;
                               }),
                   out.arcs.end());
    return out;
}

inline ArcSet make_arcset(const std::vector<Arc>& arcs) {
    std::vector<detail::FlaggedPiece> ps;
    for (const auto& a : arcs) {
        if (a.length > 1) return ArcSet{true, {}};
        ps.push_back({frac(a.start), frac(a.start) + a.length, false, false});
    }
    return normalize_pieces(std::move(ps));
}

inline ArcSet intersect(const ArcSet& a, const ArcSet& b) {
    if (a.full) return b;
    if (b.full) return a;
    std::vector<detail::FlaggedPiece> ps;
    for (const auto& x : a.arcs)
        for (const auto& y : b.arcs)
            for (int m = -1; m <= 1; ++m) {
                Rational ys = y.start + m;
                Rational ye = y.end() + m;
                Rational lo = std::max(x.start, ys);
                Rational hi = std::min(Rational(x.end()), ye);
                if (hi > lo) ps.push_back({lo, hi, false, false});
            }
    return normalize_pieces(std::move(ps));
}

// Sorted-with-wraparound view of an ArcSet for repeated window queries;
// arcs of an ArcSet are disjoint, so intersections need no merging.
struct PreparedArcs {
    std::vector<Arc> ext; // arcs plus +1-shifted copies, sorted by start
    Rational maxlen;      // largest arc length
    bool full = false;

    explicit PreparedArcs(const ArcSet& s) {
        full = s.full;
        maxlen = 0;
        for (const auto& a : s.arcs) {
            ext.push_back(a);
            ext.push_back(Arc{a.start + 1, a.length});
            if (a.length > maxlen) maxlen = a.length;
        }
        std::sort(ext.begin(), ext.end(),
                  [](const Arc& x, const Arc& y) { return x.start < y.start; });
    }
};

// a intersected with the prepared set; output pieces stay disjoint and
// sorted, so the ArcSet is assembled directly.
inline ArcSet intersect_prepared(const ArcSet& a, const PreparedArcs& b) {
    if (b.full) return a;
    if (a.full) {
        ArcSet out;
        for (const auto& e : b.ext)
            if (e.start < 1 && sgn(e.start) >= 0) out.arcs.push_back(e);
        return out;
    }
    ArcSet out;
    for (const auto& x : a.arcs) {
        Rational xe = x.end();
        Rational lo_bound = x.start - b.maxlen;
        auto it = std::lower_bound(b.ext.begin(), b.ext.end(), lo_bound,
                                   [](const Arc& e, const Rational& v) { return e.start <= v; });
        for (; it != b.ext.end() && it->start < xe; ++it) {
            Rational lo = std::max(x.start, it->start);
            Rational hi = std::min(xe, Rational(it->start + it->length));
            if (hi > lo) out.arcs.push_back(Arc{frac(lo), hi - lo});
        }
    }
    std::sort(out.arcs.begin(), out.arcs.end(),
              [](const Arc& p, const Arc& q) { return p.start < q.start; });
    out.arcs.erase(std::unique(out.arcs.begin(), out.arcs.end(),
                               [](const Arc& p, const Arc& q) {
                                   return p.start == q.start && p.length == q.length;
                               }),
                   out.arcs.end());
    return out;
}

// Exact cover test: the uncovered set is closed with boundary among the arc
// endpoints, so checking all endpoints and midpoints between consecutive
// endpoints decides coverage.
inline bool covers_circle(const std::vector<ArcSet>& sets) {
    for (const auto& s : sets)
        if (s.full) return true;
    std::vector<Rational> points;
    for (const auto& s : sets)
        for (const auto& a : s.arcs) {
            points.push_back(a.start);
            points.push_back(frac(a.end()));
        }
    if (points.empty()) return false;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Rational> candidates = points;
    for (size_t i = 0; i < points.size(); ++i) {
        Rational next = (i + 1 < points.size()) ? points[i + 1] : points[0] + 1;
        candidates.push_back(frac((points[i] + next) / 2));
    }
    for (const auto& c : candidates) {
        bool hit = false;
        for (const auto& s : sets)
            if (s.contains(c)) { hit = true; break; }
        if (!hit) return false;
    }
    return true;
}

inline bool covers_circle_arcs(const std::vector<Arc>& arcs) {
    std::vector<ArcSet> sets;
    for (const auto& a : arcs) sets.push_back(make_arcset({a}));
    return covers_circle(sets);
}

// Piecewise-linear circle self-map: on [b_i, b_{i+1}) the map is
// values[i] + slopes[i]*(x - b_i), taken mod 1.  Continuity on the circle
// (endpoint values matching mod 1) is validated.
struct PLMap {
    std::vector<Rational> breakpoints; // strictly increasing, in [0,1)
    std::vector<Rational> values;      // value at each breakpoint
    std::vector<Rational> slopes;      // slope on each segment

    int segments() const { return int(breakpoints.size()); }

    void validate() const {
        int m = segments();
        if (m == 0) throw input_error("pl_map needs at least one breakpoint");
        if (int(values.size()) != m || int(slopes.size()) != m)
            throw input_error("pl_map breakpoints/values/slopes must have equal length");
        for (int i = 0; i < m; ++i) {
            if (sgn(breakpoints[i]) < 0 || breakpoints[i] >= 1)
                throw input_error("pl_map breakpoints must lie in [0,1)");
            if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
                throw input_error("pl_map breakpoints must be strictly increasing");
        }
        for (int i = 0; i < m; ++i) {
            Rational next_b = (i + 1 < m) ? breakpoints[i + 1] : breakpoints[0] + 1;
            Rational next_v = values[(i + 1) % m];
            Rational reach = values[i] + slopes[i] * (next_b - breakpoints[i]);
            if (frac(reach - next_v) != 0)
                throw input_error("pl_map is not continuous on the circle");
        }
    }

    Rational eval(const Rational& x) const {
        Rational t = frac(x);
        int m = segments();
        int seg = m - 1;
        for (int i = 0; i < m; ++i) {
            if (breakpoints[i] <= t) seg = i;
            else break;
        }
        Rational base = breakpoints[seg];
        if (t < base) t += 1; // wrapped into the last segment
        return frac(values[seg] + slopes[seg] * (t - base));
    }

    // Exact preimage of an open arc: a union of open arcs.
    ArcSet preimage(const Arc& target) const {
        if (target.length >= 1 && make_arcset({target}).full) return ArcSet{true, {}};
        int m = segments();
        std::vector<detail::FlaggedPiece> ps;
        for (int i = 0; i < m; ++i) {
            Rational B = breakpoints[i];
            Rational E = (i + 1 < m) ? breakpoints[i + 1] : breakpoints[0] + 1;
            Rational v = values[i];
            Rational s = slopes[i];
            if (sgn(s) == 0) {
                if (target.contains(v)) ps.push_back({B, E, true, true});
                continue;
            }
            Rational lo_v = v, hi_v = v + s * (E - B);
            if (lo_v > hi_v) std::swap(lo_v, hi_v);
            Rational t0 = target.start;
            Rational m_lo = rational_floor(lo_v - t0 - target.length) - 1;
            Rational m_hi = rational_floor(hi_v - t0) + 1;
            for (Rational mm = m_lo; mm <= m_hi; mm += 1) {
                Rational y1 = t0 + mm, y2 = t0 + mm + target.length;
                Rational x1 = B + (y1 - v) / s;
                Rational x2 = B + (y2 - v) / s;
                if (x1 > x2) std::swap(x1, x2);
                detail::FlaggedPiece p{x1, x2, false, false};
                if (p.lo < B) { p.lo = B; p.lo_in = target.contains(eval(B)); }
                if (p.hi > E) { p.hi = E; p.hi_in = target.contains(eval(frac(E))); }
                if (p.hi > p.lo) ps.push_back(p);
            }
        }
        return normalize_pieces(std::move(ps));
    }

    ArcSet preimage(const ArcSet& target) const {
        if (target.full) return target;
        std::vector<detail::FlaggedPiece> ps;
        std::vector<Arc> pieces;
        for (const auto& a : target.arcs) {
            ArcSet pre = preimage(a);
            if (pre.full) return pre;
            pieces.insert(pieces.end(), pre.arcs.begin(), pre.arcs.end());
        }
        return make_arcset(pieces);
    }
};

struct CircleSystem {
    std::vector<Arc> arcs;
    PLMap pl_map;

    void validate() const {
        if (arcs.empty()) throw input_error("circle system needs at least one arc");
        for (const auto& a : arcs) {
            if (sgn(a.length) <= 0) throw input_error("arc length must be positive");
            if (sgn(a.start) < 0 || a.start >= 1) throw input_error("arc start must lie in [0,1)");
        }
        if (!covers_circle_arcs(arcs)) throw input_error("arcs do not cover the circle");
        pl_map.validate();
    }
};

struct SamplePlan {
    int n = 0;
    std::vector<Rational> points; // k/n for k = 0..n-1
    FiniteModel model;            // cover = arcs restricted to the sample
};

// Index of the sample point k/n nearest to x; ties resolve toward the
// smaller coordinate.
inline int nearest_sample(const Rational& x, int n) {
    Rational e = frac(x);
    Rational scaled = e * n;
    Rational fl = rational_floor(scaled);
    int j = int(fl.get_num().get_si());
    Rational d0 = e - Rational(j) / n;
    Rational d1 = Rational(j + 1) / n - e;
    if (d0 < d1) return j % n;
    if (d1 < d0) return (j + 1) % n;
    return (j + 1 == n) ? 0 : j;
}

inline SamplePlan sample_circle(const CircleSystem& sys, int n) {
    if (n < 3) throw precondition_error("sample_circle requires n >= 3");
    SamplePlan plan;
    plan.n = n;
    for (int k = 0; k < n; ++k) plan.points.push_back(Rational(k) / n);
    FiniteModel m;
    for (int k = 0; k < n; ++k) m.vertex_names.push_back(to_string(plan.points[k]));
    for (size_t j = 0; j < sys.arcs.size(); ++j) {
        std::vector<VertexId> in;
        for (int k = 0; k < n; ++k)
            if (sys.arcs[j].contains(plan.points[k]) || make_arcset({sys.arcs[j]}).full)
                in.push_back(k);
        if (in.empty())
            throw precondition_error("arc " + std::to_string(j) + " contains no sample point");
        m.cover.elements.push_back(make_element(in, "arc" + std::to_string(j)));
    }
    VertexMap f(n);
    for (int k = 0; k < n; ++k) f[k] = nearest_sample(sys.pl_map.eval(plan.points[k]), n);
    m.map = f;
    m.validate();
    plan.model = std::move(m);
    return plan;
}

// Cover of the n-sample circle by runs of k consecutive samples.
inline Cover runs_cover(int n, int k, const std::string& prefix = "run") {
    Cover c;
    for (int i = 0; i < n; ++i) {
        std::vector<VertexId> vs;
        for (int t = 0; t < k; ++t) vs.push_back((i + t) % n);
        c.elements.push_back(make_element(vs, prefix + std::to_string(i)));
    }
    return c;
}

} // namespace scalehom
