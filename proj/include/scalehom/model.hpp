// Finite combinatorial models: a vertex set, named finite covers, an
// optional self-map, and the cover algebra (join, refinement, star
// refinement, pullback, sampling map).
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scalehom/errors.hpp"

namespace scalehom {

using VertexId = int;
using VertexMap = std::vector<VertexId>; // total: image of vertex i at index i

struct CoverElement {
    std::vector<VertexId> verts; // sorted, unique, nonempty
    std::string name;
    std::optional<std::pair<int, int>> parents; // set by join_covers

    bool contains(VertexId v) const {
        return std::binary_search(verts.begin(), verts.end(), v);
    }
    bool contains_all(const std::vector<VertexId>& sorted_vs) const {
        return std::includes(verts.begin(), verts.end(), sorted_vs.begin(), sorted_vs.end());
    }
};

struct Cover {
    std::vector<CoverElement> elements;

    int size() const { return int(elements.size()); }

    bool covers(int vertex_count) const {
        std::vector<char> seen(vertex_count, 0);
        for (const auto& e : elements)
            for (VertexId v : e.verts) {
                if (v < 0 || v >= vertex_count) return false;
                seen[v] = 1;
            }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }

    // Smallest element index containing all of the (sorted) vertex set, or -1.
    int smallest_containing(const std::vector<VertexId>& sorted_vs) const {
        for (int i = 0; i < size(); ++i)
            if (elements[i].contains_all(sorted_vs)) return i;
        return -1;
    }
};

inline CoverElement make_element(std::vector<VertexId> vs, std::string name = {}) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return CoverElement{std::move(vs), std::move(name), std::nullopt};
}

struct FiniteModel {
    std::vector<std::string> vertex_names;
    Cover cover;
    std::optional<VertexMap> map;

    int vertex_count() const { return int(vertex_names.size()); }

    void validate() const {
        if (!cover.covers(vertex_count()))
            throw input_error("cover does not cover the vertex set");
        for (const auto& e : cover.elements)
            if (e.verts.empty()) throw input_error("empty cover element");
        if (map) {
            if (int(map->size()) != vertex_count())
                throw input_error("self-map is not total on the vertex set");
            for (VertexId v : *map)
                if (v < 0 || v >= vertex_count())
                    throw input_error("self-map image outside the vertex set");
        }
    }
};

// Common refinement A v B: all nonempty pairwise intersections, each
// recording its parent indices.  One element per parent pair.
inline Cover join_covers(const Cover& a, const Cover& b) {
    Cover out;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            std::vector<VertexId> inter;
            std::set_intersection(a.elements[i].verts.begin(), a.elements[i].verts.end(),
                                  b.elements[j].verts.begin(), b.elements[j].verts.end(),
                                  std::back_inserter(inter));
            if (inter.empty()) continue;
            CoverElement e;
            e.verts = std::move(inter);
            e.parents = std::make_pair(i, j);
            out.elements.push_back(std::move(e));
        }
    return out;
}

// True iff every element of A is contained in some element of B.
inline bool refines(const Cover& a, const Cover& b) {
    for (const auto& ea : a.elements)
        if (b.smallest_containing(ea.verts) < 0) return false;
    return true;
}

// {f^{-1}(V) : V in B} with empty preimages dropped.
inline Cover pullback_cover(const VertexMap& f, const Cover& b) {
    Cover out;
    for (int j = 0; j < b.size(); ++j) {
        std::vector<VertexId> pre;
        for (VertexId v = 0; v < VertexId(f.size()); ++v)
            if (b.elements[j].contains(f[v])) pre.push_back(v);
        if (pre.empty()) continue;
        CoverElement e;
        e.verts = std::move(pre);
        e.name = b.elements[j].name;
        out.elements.push_back(std::move(e));
    }
    return out;
}

// Star refinement: for every U in A, the union of all A-elements meeting U
// lies inside a single element of B.
inline bool star_refines(const Cover& a, const Cover& b) {
    for (const auto& u : a.elements) {
        std::vector<VertexId> star = u.verts;
        for (const auto& u2 : a.elements) {
            bool meets = false;
            for (VertexId v : u2.verts)
                if (u.contains(v)) { meets = true; break; }
            if (!meets) continue;
            star.insert(star.end(), u2.verts.begin(), u2.verts.end());
        }
        std::sort(star.begin(), star.end());
        star.erase(std::unique(star.begin(), star.end()), star.end());
        if (b.smallest_containing(star) < 0) return false;
    }
    return true;
}

// The sampling map p: x -> choices[i] for the smallest index i with
// x in A[i].  Requires star_refines(A, B) and choices[i] in A[i].
inline VertexMap sampling_map(const Cover& a, const Cover& b, const std::vector<VertexId>& choices,
                              int vertex_count) {
    if (!star_refines(a, b))
        throw precondition_error("sampling map requires the fine cover to star-refine the coarse one");
    if (int(choices.size()) != a.size())
        throw precondition_error("one choice vertex per cover element required");
    for (int i = 0; i < a.size(); ++i)
        if (!a.elements[i].contains(choices[i]))
            throw precondition_error("choice vertex lies outside its cover element");
    VertexMap p(vertex_count, -1);
    for (VertexId v = 0; v < vertex_count; ++v) {
        for (int i = 0; i < a.size(); ++i)
            if (a.elements[i].contains(v)) { p[v] = choices[i]; break; }
        if (p[v] < 0) throw precondition_error("vertex not covered by the fine cover");
    }
    return p;
}

} // namespace scalehom
