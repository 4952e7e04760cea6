// Alexander-Spanier cochains at a fixed scale: sparse functions on small
// ordered tuples, with coboundary, evaluation against chains, pull-back and
// the sup norm.  Storing values only on small tuples is exactly working in
// the quotient by locally-zero cochains.
#pragma once

#include <map>
#include <set>
#include <vector>

#include "scalehom/chain.hpp"
#include "scalehom/errors.hpp"
#include "scalehom/model.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

// All scale-small ordered tuples of the given length, lexicographically
// sorted.  Tuples may repeat vertices.
inline std::vector<Simplex> small_tuples(const Cover& cover, int length) {
    std::set<Simplex> out;
    for (const auto& e : cover.elements) {
        Simplex t(length, 0);
        std::vector<size_t> idx(length, 0);
        while (true) {
            for (int i = 0; i < length; ++i) t[i] = e.verts[idx[i]];
            out.insert(t);
            int pos = length - 1;
            while (pos >= 0 && ++idx[pos] == e.verts.size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return {out.begin(), out.end()};
}

template <class K>
struct Cochain {
    int q = 0;
    Cover scale;
    std::map<Simplex, K> values; // only small tuples; absent keys read as 0

    K operator()(const Simplex& t) const {
        auto it = values.find(t);
        return it == values.end() ? K(0) : it->second;
    }

    void set(const Simplex& t, const K& v) {
        if (int(t.size()) != q + 1)
            throw precondition_error("cochain key has the wrong arity");
        if (!is_small(t, scale))
            throw precondition_error("cochain keys must be scale-small tuples");
        if (is_zero(v))
            values.erase(t);
        else
            values[t] = v;
    }

    Cochain operator+(const Cochain& o) const {
        Cochain r = *this;
        for (const auto& [t, v] : o.values) {
            K nv = r(t) + v;
            if (is_zero(nv)) r.values.erase(t);
            else r.values[t] = nv;
        }
        return r;
    }

    Cochain operator*(const K& c) const {
        Cochain r;
        r.q = q;
        r.scale = scale;
        if (is_zero(c)) return r;
        for (const auto& [t, v] : values) {
            K nv = v * c;
            if (!is_zero(nv)) r.values[t] = nv;
        }
        return r;
    }
};

using RatCochain = Cochain<Rational>;

// Standard alternating coboundary, materialized on all scale-small tuples.
template <class K>
Cochain<K> coboundary(const Cochain<K>& x) {
    Cochain<K> out;
    out.q = x.q + 1;
    out.scale = x.scale;
    for (const Simplex& t : small_tuples(x.scale, x.q + 2)) {
        K v(0);
        for (size_t j = 0; j < t.size(); ++j) {
            Simplex face;
            face.reserve(t.size() - 1);
            for (size_t i = 0; i < t.size(); ++i)
                if (i != j) face.push_back(t[i]);
            K term = x(face);
            if (j % 2 == 0) v = v + term;
            else v = v - term;
        }
        if (!is_zero(v)) out.values[t] = v;
    }
    return out;
}

// xi(c) = sum of coefficients times values.  The chain must be small at the
// cochain's scale; off-scale evaluation is undefined.
template <class K>
K evaluate(const Cochain<K>& x, const Chain<K>& c) {
    if (c.empty()) return K(0);
    if (c.q != x.q)
        throw precondition_error("cochain/chain dimension mismatch in evaluation");
    K out(0);
    for (const auto& [s, k] : c.terms) {
        if (!is_small(s, x.scale))
            throw precondition_error("chain is not small at the cochain's scale");
        out = out + k * x(s);
    }
    return out;
}

// (f#x)(t) = x(f(t)) for tuples small at the finer scale A; requires A to
// refine f^{-1}(B) so that images stay small at B.
template <class K>
Cochain<K> pull_back(const VertexMap& f, const Cochain<K>& x, const Cover& a) {
    if (!refines(a, pullback_cover(f, x.scale)))
        throw precondition_error("pull_back requires the source cover to refine f^{-1} of the target scale");
    Cochain<K> out;
    out.q = x.q;
    out.scale = a;
    for (const Simplex& t : small_tuples(a, x.q + 1)) {
        Simplex img;
        img.reserve(t.size());
        for (VertexId v : t) img.push_back(f[v]);
        K val = x(img);
        if (!is_zero(val)) out.values[t] = val;
    }
    return out;
}

inline Rational sup_norm(const RatCochain& x) {
    Rational m(0);
    for (const auto& [t, v] : x.values)
        if (abs(v) > m) m = abs(v);
    return m;
}

} // namespace scalehom
