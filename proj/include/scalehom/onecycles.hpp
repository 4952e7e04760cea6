// The 1-cycle toolkit: decomposition of small cycles into elementary
// cycles, surgery into simple pieces, and norm-controlled refinement to a
// finer scale.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "scalehom/chain.hpp"
#include "scalehom/errors.hpp"
#include "scalehom/model.hpp"

namespace scalehom {

// A walk x_0 ... x_m whose chain is the sum of its consecutive pairs.
// Elementary: vertices pairwise distinct (all of them for an open chain,
// all but the closing repeat for a cycle).  Simple: an injective assignment
// of edges to distinct cover elements exists; `matching` stores one.
struct ElementaryChain {
    std::vector<VertexId> walk;
    std::optional<std::vector<int>> matching;

    bool is_cycle() const { return walk.size() >= 2 && walk.front() == walk.back(); }
    int edge_count() const { return int(walk.size()) - 1; }

    RatChain chain() const {
        RatChain c;
        for (size_t i = 0; i + 1 < walk.size(); ++i)
            c.add(Simplex{walk[i], walk[i + 1]}, Rational(1));
        if (c.empty()) c.q = 1;
        return c;
    }
};

inline bool is_elementary(const std::vector<VertexId>& walk) {
    if (walk.size() < 2) return false;
    size_t distinct_upto = walk.size();
    if (walk.front() == walk.back()) distinct_upto -= 1;
    std::vector<VertexId> vs(walk.begin(), walk.begin() + distinct_upto);
    std::sort(vs.begin(), vs.end());
    return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

inline void check_elementary_small(const ElementaryChain& e, const Cover& cover) {
    if (!is_elementary(e.walk))
        throw precondition_error("walk is not elementary");
    for (size_t i = 0; i + 1 < e.walk.size(); ++i)
        if (cover.smallest_containing(make_element({e.walk[i], e.walk[i + 1]}).verts) < 0)
            throw precondition_error("walk edge is not small at this scale");
}

namespace detail {

// Maximum bipartite matching (edges of the walk vs cover elements) that
// covers prescribed edges, by augmenting paths.  adjacency[e] lists the
// admissible elements in ascending order.
inline bool complete_matching(const std::vector<std::vector<int>>& adjacency,
                              std::vector<int>& edge_to_elt, int n_elts) {
    int m = int(adjacency.size());
    std::vector<int> elt_to_edge(n_elts, -1);
    for (int e = 0; e < m; ++e)
        if (edge_to_elt[e] >= 0) elt_to_edge[edge_to_elt[e]] = e;

    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int e) -> bool {
        for (int u : adjacency[e]) {
            if (seen[u]) continue;
            seen[u] = 1;
            if (elt_to_edge[u] < 0 || augment(elt_to_edge[u])) {
                elt_to_edge[u] = e;
                edge_to_elt[e] = u;
                return true;
            }
        }
        return false;
    };
    for (int e = 0; e < m; ++e) {
        if (edge_to_elt[e] >= 0) continue;
        seen.assign(n_elts, 0);
        if (!augment(e)) return false;
    }
    return true;
}

} // namespace detail

// Lexicographically smallest injective edge-to-element assignment, or
// nullopt when none exists.  Edge i is fixed to its smallest admissible
// element for which the remaining edges can still be completed.
inline std::optional<std::vector<int>> certify_simple(const std::vector<VertexId>& walk,
                                                      const Cover& cover) {
    int m = int(walk.size()) - 1;
    std::vector<std::vector<int>> adjacency(m);
    for (int e = 0; e < m; ++e) {
        std::vector<VertexId> pair = make_element({walk[e], walk[e + 1]}).verts;
        for (int i = 0; i < cover.size(); ++i)
            if (cover.elements[i].contains_all(pair)) adjacency[e].push_back(i);
        if (adjacency[e].empty()) return std::nullopt;
    }
    std::vector<int> fixed(m, -1);
    for (int e = 0; e < m; ++e) {
        bool ok = false;
        std::vector<int> used(fixed.begin(), fixed.begin() + e);
        for (int cand : adjacency[e]) {
            if (std::find(used.begin(), used.end(), cand) != used.end()) continue;
            std::vector<std::vector<int>> rest;
            for (int r = e + 1; r < m; ++r) {
                std::vector<int> adm;
                for (int u : adjacency[r])
                    if (u != cand && std::find(used.begin(), used.end(), u) == used.end())
                        adm.push_back(u);
                rest.push_back(std::move(adm));
            }
            std::vector<int> trial(rest.size(), -1);
            if (detail::complete_matching(rest, trial, cover.size())) {
                fixed[e] = cand;
                ok = true;
                break;
            }
        }
        if (!ok) return std::nullopt;
    }
    return fixed;
}

// Decomposition of a small 1-cycle into elementary cycles: c ~ sum k_i e_i
// at scale, with every edge of every e_i already an edge of c (orientation
// reversals are normalized through the nullhomologous 2-step cycle
// (x y)+(y x), so coefficients may flip sign).
inline std::vector<std::pair<Rational, ElementaryChain>> elementary_decomposition(
    const RatChain& c, const Cover& cover) {
    if (c.empty()) return {};
    if (c.q != 1) throw precondition_error("elementary decomposition applies to 1-chains");
    if (!is_small(c, cover)) throw precondition_error("chain is not small at this scale");
    if (!boundary(c).empty()) throw precondition_error("input chain is not a cycle");

    std::vector<std::pair<Rational, ElementaryChain>> out;

    // Degenerate loops split off directly.
    std::map<std::pair<VertexId, VertexId>, Rational> flow; // key (a,b) a<b; sign = a->b
    for (const auto& [s, k] : c.terms) {
        if (s[0] == s[1]) {
            out.push_back({k, ElementaryChain{{s[0], s[0]}, std::nullopt}});
        } else if (s[0] < s[1]) {
            flow[{s[0], s[1]}] += k;
        } else {
            flow[{s[1], s[0]}] -= k;
        }
    }
    for (auto it = flow.begin(); it != flow.end();)
        it = sgn(it->second) == 0 ? flow.erase(it) : std::next(it);

    auto outgoing = [&](VertexId v) -> std::optional<std::pair<VertexId, Rational>> {
        for (const auto& [e, f] : flow) {
            if (sgn(f) == 0) continue;
            if (e.first == v && sgn(f) > 0) return std::make_pair(e.second, f);
            if (e.second == v && sgn(f) < 0) return std::make_pair(e.first, -f);
        }
        return std::nullopt;
    };

    while (true) {
        for (auto it = flow.begin(); it != flow.end();)
            it = sgn(it->second) == 0 ? flow.erase(it) : std::next(it);
        if (flow.empty()) break;
        VertexId start = sgn(flow.begin()->second) > 0 ? flow.begin()->first.first
                                                       : flow.begin()->first.second;
        std::vector<VertexId> path{start};
        std::map<VertexId, int> pos{{start, 0}};
        while (true) {
            auto next = outgoing(path.back());
            if (!next) throw precondition_error("internal error: flow conservation violated");
            VertexId w = next->first;
            auto seen = pos.find(w);
            if (seen != pos.end()) {
                std::vector<VertexId> cyc(path.begin() + seen->second, path.end());
                cyc.push_back(w);
                Rational coeff;
                bool first = true;
                for (size_t i = 0; i + 1 < cyc.size(); ++i) {
                    VertexId a = cyc[i], b = cyc[i + 1];
                    Rational f = a < b ? flow[{a, b}] : -flow[{b, a}];
                    if (first || f < coeff) coeff = f;
                    first = false;
                }
                for (size_t i = 0; i + 1 < cyc.size(); ++i) {
                    VertexId a = cyc[i], b = cyc[i + 1];
                    if (a < b) flow[{a, b}] -= coeff;
                    else flow[{b, a}] += coeff;
                }
                out.push_back({coeff, ElementaryChain{cyc, std::nullopt}});
                break;
            }
            pos[w] = int(path.size());
            path.push_back(w);
        }
    }
    return out;
}

struct SimplifyResult {
    ElementaryChain simple_part;           // simple elementary chain (cycle iff input was)
    std::vector<ElementaryChain> cycles;   // split-off simple elementary cycles
};

// Surgery of the simplification construction: repeated cover assignments
// U_i = U_j (smallest i, then smallest j) are resolved by swapping the two
// edge targets; the difference is a cycle inside one element, hence
// nullhomologous at scale.  Recursion runs until every piece carries an
// injective assignment.
inline SimplifyResult simplify(const ElementaryChain& e, const Cover& cover) {
    check_elementary_small(e, cover);
    SimplifyResult res;

    std::function<void(std::vector<VertexId>, bool)> process =
        [&](std::vector<VertexId> walk, bool top_level) {
            int m = int(walk.size()) - 1;
            std::vector<int> assign(m);
            for (int i = 0; i < m; ++i)
                assign[i] = cover.smallest_containing(make_element({walk[i], walk[i + 1]}).verts);
            int si = -1, sj = -1;
            for (int i = 0; i < m && si < 0; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (assign[i] == assign[j]) { si = i; sj = j; break; }
            if (si < 0) {
                ElementaryChain piece{walk, certify_simple(walk, cover)};
                if (top_level) res.simple_part = std::move(piece);
                else res.cycles.push_back(std::move(piece));
                return;
            }
            // continuing walk keeps the bridge edge (x_i, x_{j+1})
            std::vector<VertexId> cont(walk.begin(), walk.begin() + si + 1);
            cont.insert(cont.end(), walk.begin() + sj + 1, walk.end());
            // split cycle x_j -> x_{i+1} -> ... -> x_j
            std::vector<VertexId> cyc;
            cyc.push_back(walk[sj]);
            cyc.insert(cyc.end(), walk.begin() + si + 1, walk.begin() + sj + 1);
            process(std::move(cont), top_level);
            process(std::move(cyc), false);
        };
    process(e.walk, true);
    return res;
}

// Norm-controlled refinement: every small 1-simplex is replaced by a simple
// elementary fine-scale chain inside its cover element, so the result is
// homologous at the coarse scale and its 1-norm is at most norm1(c)*|V|.
inline RatChain refine(const RatChain& c, const Cover& cover_u, const Cover& cover_v) {
    if (c.empty()) return c;
    if (c.q != 1) throw precondition_error("refine applies to 1-chains");
    if (!is_small(c, cover_u)) throw precondition_error("chain is not small at the coarse scale");

    RatChain out;
    out.q = 1;
    for (const auto& [s, k] : c.terms) {
        if (s[0] == s[1]) continue; // a degenerate loop is nullhomologous in its element
        int ui = cover_u.smallest_containing(make_element({s[0], s[1]}).verts);
        const auto& elt = cover_u.elements[ui].verts;

        // Restriction of the fine cover to this element.
        Cover vres;
        for (const auto& ve : cover_v.elements) {
            std::vector<VertexId> inter;
            std::set_intersection(elt.begin(), elt.end(), ve.verts.begin(), ve.verts.end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) vres.elements.push_back(make_element(inter, ve.name));
        }

        // Breadth-first path from s[0] to s[1] in the fine-scale graph on elt.
        std::map<VertexId, VertexId> parent;
        std::queue<VertexId> bfs;
        bfs.push(s[0]);
        parent[s[0]] = s[0];
        while (!bfs.empty() && !parent.count(s[1])) {
            VertexId v = bfs.front();
            bfs.pop();
            for (VertexId w : elt) {
                if (w == v || parent.count(w)) continue;
                if (vres.smallest_containing(make_element({v, w}).verts) < 0) continue;
                parent[w] = v;
                bfs.push(w);
            }
        }
        if (!parent.count(s[1]))
            throw precondition_error("cover element " + std::to_string(ui) +
                                     " is disconnected at the fine scale");
        std::vector<VertexId> walk;
        for (VertexId v = s[1]; v != s[0]; v = parent[v]) walk.push_back(v);
        walk.push_back(s[0]);
        std::reverse(walk.begin(), walk.end());

        SimplifyResult sr = simplify(ElementaryChain{walk, std::nullopt}, vres);
        out = out + sr.simple_part.chain() * k;
    }
    if (out.empty()) out.q = 1;
    return out;
}

} // namespace scalehom
