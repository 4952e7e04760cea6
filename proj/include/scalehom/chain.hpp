// Ordered formal simplices and sparse chains over an exact coefficient
// field, with boundary, cone, norm, push-forward and the passage to the
// oriented quotient complex.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "scalehom/errors.hpp"
#include "scalehom/model.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

// An ordered tuple of vertices; repeats allowed.  Dimension = size - 1.
using Simplex = std::vector<VertexId>;

template <class K>
struct Chain {
    int q = -1; // homogeneous dimension; -1 while empty
    std::map<Simplex, K> terms;

    bool empty() const { return terms.empty(); }

    void add(const Simplex& s, const K& coeff) {
        if (is_zero(coeff)) return;
        if (terms.empty())
            q = int(s.size()) - 1;
        else if (int(s.size()) - 1 != q)
            throw precondition_error("chain terms must have equal dimension");
        auto it = terms.find(s);
        if (it == terms.end()) {
            terms.emplace(s, coeff);
        } else {
            it->second = it->second + coeff;
            if (is_zero(it->second)) terms.erase(it);
        }
        if (terms.empty()) q = -1;
    }

    Chain operator+(const Chain& o) const {
        Chain r = *this;
        for (const auto& [s, k] : o.terms) r.add(s, k);
        return r;
    }

    Chain operator-(const Chain& o) const {
        Chain r = *this;
        for (const auto& [s, k] : o.terms) r.add(s, K(0) - k);
        return r;
    }

    Chain operator*(const K& c) const {
        Chain r;
        if (is_zero(c)) return r;
        r.q = q;
        for (const auto& [s, k] : terms) {
            K v = k * c;
            if (!is_zero(v)) r.terms.emplace(s, v);
        }
        if (r.terms.empty()) r.q = -1;
        return r;
    }

    bool operator==(const Chain& o) const { return terms == o.terms; }
};

using RatChain = Chain<Rational>;

template <class K>
Chain<K> simplex_chain(const Simplex& s, const K& coeff = K(1)) {
    Chain<K> c;
    c.add(s, coeff);
    return c;
}

// Alternating face sum, extended linearly.  Dimension-0 chains have no
// boundary and are rejected.
template <class K>
Chain<K> boundary(const Chain<K>& c) {
    if (c.empty()) return {};
    if (c.q < 1) throw precondition_error("boundary of a dimension-0 chain");
    Chain<K> out;
    for (const auto& [s, k] : c.terms) {
        for (size_t j = 0; j < s.size(); ++j) {
            Simplex face;
            face.reserve(s.size() - 1);
            for (size_t i = 0; i < s.size(); ++i)
                if (i != j) face.push_back(s[i]);
            out.add(face, (j % 2 == 0) ? k : K(0) - k);
        }
    }
    if (out.empty() && !c.empty()) out.q = c.q - 1;
    return out;
}

// Cone over a: (x0 ... xq) -> (a x0 ... xq).  Satisfies
// boundary(cone(a,c)) + cone(a, boundary(c)) = c on every chain.
template <class K>
Chain<K> cone(VertexId a, const Chain<K>& c) {
    Chain<K> out;
    for (const auto& [s, k] : c.terms) {
        Simplex t;
        t.reserve(s.size() + 1);
        t.push_back(a);
        t.insert(t.end(), s.begin(), s.end());
        out.add(t, k);
    }
    return out;
}

inline Rational norm1(const RatChain& c) {
    Rational n(0);
    for (const auto& [s, k] : c.terms) n += abs(k);
    return n;
}

template <class K>
Chain<K> push_forward(const VertexMap& f, const Chain<K>& c) {
    Chain<K> out;
    for (const auto& [s, k] : c.terms) {
        Simplex t;
        t.reserve(s.size());
        for (VertexId v : s) t.push_back(f[v]);
        out.add(t, k);
    }
    return out;
}

inline bool is_small(const Simplex& s, const Cover& cover) {
    Simplex sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return cover.smallest_containing(sorted) >= 0;
}

template <class K>
bool is_small(const Chain<K>& c, const Cover& cover) {
    for (const auto& [s, k] : c.terms)
        if (!is_small(s, cover)) return false;
    return true;
}

// Sign of the permutation sorting s, or 0 when s has a repeated vertex.
inline int sort_sign(const Simplex& s, Simplex& sorted) {
    sorted = s;
    int sign = 1;
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j) {
            if (sorted[i] == sorted[j]) return 0;
            if (sorted[i] > sorted[j]) {
                std::swap(sorted[i], sorted[j]);
                sign = -sign;
            }
        }
    return sign;
}

// The chain map to the oriented quotient: repeated-vertex simplices die,
// others go to their sorted tuple with the permutation sign.  The result is
// again a Chain whose keys are strictly increasing tuples.
template <class K>
Chain<K> ordered_to_oriented(const Chain<K>& c) {
    Chain<K> out;
    for (const auto& [s, k] : c.terms) {
        Simplex sorted;
        int sign = sort_sign(s, sorted);
        if (sign == 0) continue;
        out.add(sorted, sign > 0 ? k : K(0) - k);
    }
    if (out.empty()) out.q = c.q;
    return out;
}

} // namespace scalehom
