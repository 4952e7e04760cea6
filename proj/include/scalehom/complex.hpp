// Homology and cohomology at a fixed scale, computed on the oriented
// quotient of the small-tuple complex by exact rational elimination, plus
// the maps between scales: bonding, induced maps, contiguity and the
// single-scale endomorphism used for spectral analysis.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "scalehom/chain.hpp"
#include "scalehom/cochain.hpp"
#include "scalehom/errors.hpp"
#include "scalehom/matrix.hpp"
#include "scalehom/model.hpp"

namespace scalehom {

constexpr long kDefaultSimplexCap = 2'000'000;

// Oriented small simplices (strictly increasing vertex tuples) up to
// dimension max_q+1, with the boundary matrices between consecutive
// dimensions.  bnd[k] maps C_k to C_{k-1}; bnd[0] has zero rows.
struct ScaleComplex {
    Cover cover;
    int vertex_count = 0;
    int max_q = 0;
    std::vector<std::vector<Simplex>> simplices;
    std::vector<std::map<Simplex, int>> index;
    std::vector<Matrix> bnd;

    int dim_count(int k) const {
        return (k >= 0 && k < int(simplices.size())) ? int(simplices[k].size()) : 0;
    }

    // Oriented coordinate vector of a small chain (through the quotient map).
    std::vector<Rational> vector_of(const RatChain& c, int k) const {
        std::vector<Rational> v(dim_count(k), Rational(0));
        RatChain o = ordered_to_oriented(c);
        for (const auto& [s, coeff] : o.terms) {
            auto it = index[k].find(s);
            if (it == index[k].end())
                throw precondition_error("chain is not small at this scale");
            v[it->second] += coeff;
        }
        return v;
    }

    // Canonical section of the quotient map: an oriented vector read back as
    // an ordered chain on increasing tuples.
    RatChain chain_of(const std::vector<Rational>& v, int k) const {
        RatChain c;
        for (size_t i = 0; i < v.size(); ++i)
            if (sgn(v[i]) != 0) c.add(simplices[k][i], v[i]);
        if (c.empty()) c.q = k;
        return c;
    }
};

inline ScaleComplex build_complex(int vertex_count, const Cover& cover, int max_q,
                                  long simplex_cap = kDefaultSimplexCap) {
    if (max_q < 1) throw precondition_error("build_complex requires max_q >= 1");
    ScaleComplex cx;
    cx.cover = cover;
    cx.vertex_count = vertex_count;
    cx.max_q = max_q;
    long total = 0;
    for (int k = 0; k <= max_q + 1; ++k) {
        std::set<Simplex> found;
        for (const auto& e : cover.elements) {
            int n = int(e.verts.size());
            if (n < k + 1) continue;
            std::vector<int> idx(k + 1);
            for (int i = 0; i <= k; ++i) idx[i] = i;
            while (true) {
                Simplex s(k + 1);
                for (int i = 0; i <= k; ++i) s[i] = e.verts[idx[i]];
                found.insert(s);
                if (long(found.size()) + total > simplex_cap)
                    throw resource_cap_error("simplex cap exceeded while building the complex");
                int pos = k;
                while (pos >= 0 && idx[pos] == n - (k + 1 - pos)) --pos;
                if (pos < 0) break;
                ++idx[pos];
                for (int i = pos + 1; i <= k; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
        cx.simplices.emplace_back(found.begin(), found.end());
        total += long(found.size());
        std::map<Simplex, int> im;
        for (size_t i = 0; i < cx.simplices[k].size(); ++i) im[cx.simplices[k][i]] = int(i);
        cx.index.push_back(std::move(im));
    }
    cx.bnd.resize(max_q + 2);
    cx.bnd[0] = Matrix(0, cx.dim_count(0));
    for (int k = 1; k <= max_q + 1; ++k) {
        Matrix m(cx.dim_count(k - 1), cx.dim_count(k));
        for (int j = 0; j < cx.dim_count(k); ++j) {
            const Simplex& s = cx.simplices[k][j];
            for (size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face;
                face.reserve(s.size() - 1);
                for (size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                int row = cx.index[k - 1].at(face);
                m.at(row, j) += (drop % 2 == 0) ? 1 : -1;
            }
        }
        cx.bnd[k] = std::move(m);
    }
    // dd = 0, verified face by face.
    for (int k = 2; k <= max_q + 1; ++k) {
        if (cx.dim_count(k) == 0) continue;
        Matrix prod = cx.bnd[k - 1] * cx.bnd[k];
        if (!prod.is_zero())
            throw precondition_error("internal error: boundary matrices do not compose to zero");
    }
    return cx;
}

struct HomologyBasis {
    int q = 0;
    const ScaleComplex* cx = nullptr;
    Quotient quot;
    std::vector<RatChain> reps; // small cycles through the canonical section

    int dim() const { return quot.dim(); }

    std::vector<Rational> coordinates(const RatChain& cycle) const {
        if (!cycle.empty() && cycle.q != q)
            throw precondition_error("cycle dimension does not match the basis");
        return quot.coordinates(cx->vector_of(cycle, q));
    }
};

inline HomologyBasis homology(const ScaleComplex& cx, int q) {
    if (q < 0 || q > cx.max_q) throw precondition_error("homology dimension out of range");
    HomologyBasis hb;
    hb.q = q;
    hb.cx = &cx;
    Matrix cycles = kernel_basis(cx.bnd[q]);
    hb.quot = make_quotient(cx.bnd[q + 1], cycles);
    for (int j = 0; j < hb.quot.reps.cols(); ++j)
        hb.reps.push_back(cx.chain_of(hb.quot.reps.col(j), q));
    return hb;
}

struct CohomologyBasis {
    int q = 0;
    const ScaleComplex* cx = nullptr;
    Quotient quot;
    std::vector<RatCochain> reps; // alternating cocycle representatives

    int dim() const { return quot.dim(); }

    std::vector<Rational> coordinates(const RatCochain& x) const {
        if (x.q != q)
            throw precondition_error("cochain dimension does not match the basis");
        std::vector<Rational> v(cx->dim_count(q), Rational(0));
        for (int i = 0; i < cx->dim_count(q); ++i) v[i] = x(cx->simplices[q][i]);
        return quot.coordinates(v);
    }
};

// Alternating extension of an oriented cochain vector to ordered tuples.
inline RatCochain alternating_cochain(const ScaleComplex& cx, int q,
                                      const std::vector<Rational>& v) {
    RatCochain out;
    out.q = q;
    out.scale = cx.cover;
    for (size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        Simplex s = cx.simplices[q][i];
        Simplex perm = s;
        do {
            Simplex sorted;
            int sign = sort_sign(perm, sorted);
            out.values[perm] = sign > 0 ? v[i] : -v[i];
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

inline CohomologyBasis cohomology(const ScaleComplex& cx, int q) {
    if (q < 0 || q > cx.max_q) throw precondition_error("cohomology dimension out of range");
    CohomologyBasis cb;
    cb.q = q;
    cb.cx = &cx;
    Matrix delta_q = cx.bnd[q + 1].transpose();
    Matrix cocycles = kernel_basis(delta_q);
    Matrix cob = (q == 0) ? Matrix(cx.dim_count(0), 0) : cx.bnd[q].transpose();
    cb.quot = make_quotient(cob, cocycles);
    for (int j = 0; j < cb.quot.reps.cols(); ++j)
        cb.reps.push_back(alternating_cochain(cx, q, cb.quot.reps.col(j)));
    return cb;
}

// Restriction of a cochain to a finer scale (every A-small tuple is B-small).
inline RatCochain restrict_cochain(const RatCochain& x, const Cover& a) {
    if (!refines(a, x.scale))
        throw precondition_error("restriction requires a refinement of the cochain's scale");
    RatCochain out;
    out.q = x.q;
    out.scale = a;
    for (const Simplex& t : small_tuples(a, x.q + 1)) {
        Rational v = x(t);
        if (sgn(v) != 0) out.values[t] = v;
    }
    return out;
}

struct ScaleMap {
    int q = 0;
    std::string variance; // "homology" | "cohomology"
    Matrix m;
};

// Inclusion-induced map j: H_q(fine) -> H_q(coarse).
inline ScaleMap bonding(const HomologyBasis& fine, const HomologyBasis& coarse) {
    if (fine.q != coarse.q) throw precondition_error("bonding requires equal dimensions");
    if (!refines(fine.cx->cover, coarse.cx->cover))
        throw precondition_error("bonding requires the source cover to refine the target");
    Matrix m(coarse.dim(), fine.dim());
    for (int j = 0; j < fine.dim(); ++j)
        m.set_col(j, coarse.coordinates(fine.reps[j]));
    return {fine.q, "homology", std::move(m)};
}

// Restriction-induced map pi: H^q(coarse) -> H^q(fine).
inline ScaleMap bonding_cohomology(const CohomologyBasis& coarse, const CohomologyBasis& fine) {
    if (fine.q != coarse.q) throw precondition_error("bonding requires equal dimensions");
    if (!refines(fine.cx->cover, coarse.cx->cover))
        throw precondition_error("cohomology bonding requires the target cover to refine the source");
    Matrix m(fine.dim(), coarse.dim());
    for (int j = 0; j < coarse.dim(); ++j)
        m.set_col(j, fine.coordinates(restrict_cochain(coarse.reps[j], fine.cx->cover)));
    return {fine.q, "cohomology", std::move(m)};
}

namespace detail {

inline Matrix induced_homology_matrix(const VertexMap& f, const HomologyBasis& source,
                                      const HomologyBasis& target) {
    Matrix m(target.dim(), source.dim());
    for (int j = 0; j < source.dim(); ++j)
        m.set_col(j, target.coordinates(push_forward(f, source.reps[j])));
    return m;
}

} // namespace detail

// Matrix of f_*: H_q(A) -> H_q(B) for a vertex map carrying A-small tuples
// to B-small tuples (guaranteed by A refining f^{-1}B).
inline ScaleMap induced_map(const VertexMap& f, const HomologyBasis& source,
                            const HomologyBasis& target) {
    if (source.q != target.q) throw precondition_error("induced map requires equal dimensions");
    if (!refines(source.cx->cover, pullback_cover(f, target.cx->cover)))
        throw precondition_error("induced map requires the source cover to refine f^{-1} of the target");
    return {source.q, "homology", detail::induced_homology_matrix(f, source, target)};
}

// Matrix of f^*: H^q(B) -> H^q(A).
inline ScaleMap induced_cohomology_map(const VertexMap& f, const CohomologyBasis& target_scale_b,
                                       const CohomologyBasis& source_scale_a) {
    if (source_scale_a.q != target_scale_b.q)
        throw precondition_error("induced map requires equal dimensions");
    Matrix m(source_scale_a.dim(), target_scale_b.dim());
    for (int j = 0; j < target_scale_b.dim(); ++j)
        m.set_col(j, source_scale_a.coordinates(
                          pull_back(f, target_scale_b.reps[j], source_scale_a.cx->cover)));
    return {source_scale_a.q, "cohomology", std::move(m)};
}

struct ContiguityResult {
    bool contiguous = false;
    Simplex witness;      // failing tuple when not contiguous
    bool induced_equal = false;
};

// Checks the contiguity hypothesis (a single coarse element containing both
// images) on every small simplex up to the fine complex's top dimension and,
// when it holds, verifies that the two maps induce identical matrices.
inline ContiguityResult contiguity_equal(const VertexMap& f, const VertexMap& g,
                                         const ScaleComplex& cxa, const ScaleComplex& cxb) {
    ContiguityResult res;
    for (int k = 0; k < int(cxa.simplices.size()); ++k)
        for (const Simplex& s : cxa.simplices[k]) {
            std::vector<VertexId> both;
            both.reserve(2 * s.size());
            for (VertexId v : s) {
                both.push_back(f[v]);
                both.push_back(g[v]);
            }
            std::sort(both.begin(), both.end());
            both.erase(std::unique(both.begin(), both.end()), both.end());
            if (cxb.cover.smallest_containing(both) < 0) {
                res.witness = s;
                return res;
            }
        }
    res.contiguous = true;
    res.induced_equal = true;
    int top = std::min(cxa.max_q, cxb.max_q);
    for (int q = 0; q <= top; ++q) {
        HomologyBasis ha = homology(cxa, q);
        HomologyBasis hb = homology(cxb, q);
        Matrix mf = detail::induced_homology_matrix(f, ha, hb);
        Matrix mg = detail::induced_homology_matrix(g, ha, hb);
        if (!(mf == mg)) res.induced_equal = false;
    }
    return res;
}

// f_* (or f^*) projected to a single scale through the bonding map, the
// square matrix whose spectrum drives the entropy bounds.  Refuses when the
// bonding between the two scales is not invertible.
inline ScaleMap endomorphism(const VertexMap& f, const ScaleComplex& fine,
                             const ScaleComplex& coarse, int q, const std::string& variance) {
    if (!refines(fine.cover, coarse.cover))
        throw precondition_error("endomorphism requires nested scales (fine refines coarse)");
    if (variance == "homology") {
        HomologyBasis ha = homology(fine, q);
        HomologyBasis hb = homology(coarse, q);
        ScaleMap F = induced_map(f, ha, hb);
        ScaleMap J = bonding(ha, hb);
        auto Jinv = inverse(J.m);
        if (!Jinv)
            throw precondition_error("bonding map is not invertible at these scales; spectral analysis refused");
        return {q, "homology", *Jinv * F.m};
    }
    if (variance == "cohomology") {
        CohomologyBasis ca = cohomology(fine, q);
        CohomologyBasis cb = cohomology(coarse, q);
        ScaleMap F = induced_cohomology_map(f, cb, ca);
        ScaleMap P = bonding_cohomology(cb, ca);
        auto Pinv = inverse(P.m);
        if (!Pinv)
            throw precondition_error("cohomology bonding is not invertible at these scales; spectral analysis refused");
        return {q, "cohomology", *Pinv * F.m};
    }
    throw precondition_error("variance must be 'homology' or 'cohomology'");
}

} // namespace scalehom
