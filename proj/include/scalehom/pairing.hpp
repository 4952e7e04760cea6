// The integral pairing between cohomology and homology at a fixed scale:
// evaluation of cocycle representatives on small cycles, the full pairing
// matrix, and the two constructive directions (potential, separating
// cocycle) behind nondegeneracy.
#pragma once

#include <string>
#include <vector>

#include "scalehom/chain.hpp"
#include "scalehom/cochain.hpp"
#include "scalehom/complex.hpp"
#include "scalehom/errors.hpp"
#include "scalehom/matrix.hpp"

namespace scalehom {

inline bool covers_equal(const Cover& a, const Cover& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (a.elements[i].verts != b.elements[i].verts) return false;
    return true;
}

template <class K>
bool is_cocycle_at_scale(const Cochain<K>& x) {
    return coboundary(x).values.empty();
}

// xi(c) for a cocycle representative and a small cycle representative.
// Independent of both representatives; bilinear.
inline Rational integral(const RatCochain& x, const RatChain& c) {
    if (!c.empty() && c.q != x.q)
        throw precondition_error("integral: dimension mismatch");
    if (!is_cocycle_at_scale(x))
        throw precondition_error("integral: representative is not a cocycle at this scale");
    if (!c.empty() && c.q >= 1 && !boundary(c).empty())
        throw precondition_error("integral: representative chain is not a cycle");
    if (c.empty()) return Rational(0);
    return evaluate(x, c);
}

struct PairingMatrix {
    Matrix m;
    Rational det;
    bool nondegenerate = false;
};

// M[i][j] = integral of the i-th cocycle representative over the j-th
// homology representative.  Square when dimensions agree; invertibility is
// nondegeneracy at this scale.
inline PairingMatrix pairing_matrix(const CohomologyBasis& cb, const HomologyBasis& hb) {
    if (cb.q != hb.q) throw precondition_error("pairing requires equal dimensions");
    if (!covers_equal(cb.cx->cover, hb.cx->cover))
        throw precondition_error("pairing requires a single scale");
    PairingMatrix pm;
    pm.m = Matrix(cb.dim(), hb.dim());
    for (int i = 0; i < cb.dim(); ++i)
        for (int j = 0; j < hb.dim(); ++j)
            pm.m.at(i, j) = evaluate(cb.reps[i], hb.reps[j]);
    if (pm.m.rows() == pm.m.cols()) {
        pm.det = (pm.m.rows() == 0) ? Rational(1) : determinant(pm.m);
        pm.nondegenerate = sgn(pm.det) != 0;
    }
    return pm;
}

// Ordered boundary matrix between small-tuple spaces: rows are the small
// q-tuples, columns the small (q+1)-tuples, entries the alternating face
// signs (repeated faces accumulate).
inline Matrix ordered_boundary_matrix(const std::vector<Simplex>& rows,
                                      const std::vector<Simplex>& cols) {
    std::map<Simplex, int> row_index;
    for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = int(i);
    Matrix m(int(rows.size()), int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        const Simplex& t = cols[j];
        for (size_t drop = 0; drop < t.size(); ++drop) {
            Simplex face;
            face.reserve(t.size() - 1);
            for (size_t i = 0; i < t.size(); ++i)
                if (i != drop) face.push_back(t[i]);
            m.at(row_index.at(face), int(j)) += (drop % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

// The higher-dimensional potential: given a q-cocycle x at scale whose
// integral vanishes over every homology class, produce a (q-1)-cochain h
// with delta h = x on scale-small tuples.  Built exactly as the
// construction: a canonical echelon basis {d_i} of the small boundaries
// with recorded fillings c_i, h(d_i) := x(c_i), zero off the pivot tuples.
inline RatCochain potential(const ScaleComplex& cx, const RatCochain& x) {
    int q = x.q;
    if (q < 1) throw precondition_error("potential requires dimension >= 1");
    if (!covers_equal(x.scale, cx.cover))
        throw precondition_error("potential: cochain scale differs from the complex");
    if (!is_cocycle_at_scale(x))
        throw precondition_error("potential: input is not a cocycle at this scale");

    HomologyBasis hb = homology(cx, q);
    for (int j = 0; j < hb.dim(); ++j) {
        Rational val = evaluate(x, hb.reps[j]);
        if (sgn(val) != 0)
            throw precondition_error("potential: nonvanishing integral on homology class " +
                                     std::to_string(j) + " (value " + to_string(val) + ")");
    }

    std::vector<Simplex> tq = small_tuples(cx.cover, q + 1);
    std::vector<Simplex> tqm1 = small_tuples(cx.cover, q);
    Matrix dord = ordered_boundary_matrix(tqm1, tq);
    ColumnEchelon ce = column_echelon(dord);

    RatCochain h;
    h.q = q - 1;
    h.scale = cx.cover;
    for (int i = 0; i < ce.echelon.cols(); ++i) {
        // filling c_i: combination of ordered q-simplices with d_i = boundary(c_i)
        RatChain filling;
        for (int k = 0; k < int(tq.size()); ++k)
            if (sgn(ce.companion.at(k, i)) != 0) filling.add(tq[k], ce.companion.at(k, i));
        Rational val = filling.empty() ? Rational(0) : evaluate(x, filling);
        if (sgn(val) != 0) h.values[tqm1[ce.pivot_rows[i]]] = val;
    }
    return h;
}

// A cocycle at scale with nonzero value on the given non-nullhomologous
// cycle: a functional vanishing on small boundaries and equal to 1 on c,
// assembled from the canonical cocycle representatives.
inline RatCochain separating_cocycle(const ScaleComplex& cx, const RatChain& c) {
    if (c.empty()) throw precondition_error("separating_cocycle: zero cycle");
    int q = c.q;
    if (q > cx.max_q) throw precondition_error("separating_cocycle: dimension above the complex");
    if (q >= 1 && !boundary(c).empty())
        throw precondition_error("separating_cocycle: input is not a cycle");
    HomologyBasis hb = homology(cx, q);
    std::vector<Rational> coords = hb.coordinates(c);
    bool zero = true;
    for (const auto& v : coords)
        if (sgn(v) != 0) { zero = false; break; }
    if (zero) throw precondition_error("separating_cocycle: input cycle is a boundary at this scale");

    CohomologyBasis cb = cohomology(cx, q);
    for (int i = 0; i < cb.dim(); ++i) {
        Rational val = evaluate(cb.reps[i], c);
        if (sgn(val) != 0) return cb.reps[i] * (1 / val);
    }
    throw precondition_error("separating_cocycle: pairing failed to separate the class");
}

} // namespace scalehom
