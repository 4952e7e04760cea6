// Exact spectral analysis of induced endomorphisms: characteristic and
// minimal polynomials, irreducible factors, the rational eigen-seed and the
// Q(lambda) eigenvector construction, and the two entropy lower bounds
// (log|lambda| on the locally connected pathway, log|lambda|/d in general).
#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "scalehom/errors.hpp"
#include "scalehom/factor.hpp"
#include "scalehom/matrix.hpp"
#include "scalehom/numberfield.hpp"
#include "scalehom/polynomial.hpp"
#include "scalehom/roots.hpp"

namespace scalehom {

// A nonzero vector whose minimal annihilator under M is exactly the given
// irreducible factor P of min_poly(M): any nonzero column of Q(M) where
// min_poly = Q*P.
inline std::vector<Rational> rational_eigen_seed(const Matrix& m, const RatPoly& p) {
    RatPoly mp = min_poly(m);
    auto [q, rem] = divmod(mp, p);
    if (!rem.is_zero())
        throw precondition_error("rational_eigen_seed: polynomial does not divide the minimal polynomial");
    Matrix qm = q.eval_matrix(m);
    for (int j = 0; j < qm.cols(); ++j) {
        std::vector<Rational> w = qm.col(j);
        for (const auto& x : w)
            if (sgn(x) != 0) return w;
    }
    throw precondition_error("rational_eigen_seed: Q(M) vanished unexpectedly");
}

struct FieldEigenvector {
    NumberFieldPtr field;
    std::vector<NumberFieldElement> mu; // mu_0 = 1, ..., mu_{d-1}
    std::vector<NumberFieldElement> z;  // eigenvector over Q(lambda)
};

// z := (M - lambda_2)...(M - lambda_d) w expanded through the synthetic
// division P(t)/(t - lambda), so z = sum_j mu_j M^{d-1-j} w with mu_0 = 1.
// Certifies (M - lambda) z = 0 exactly in Q(lambda).
inline FieldEigenvector eigenvector_over_field(const Matrix& m, const RatPoly& p,
                                               const std::vector<Rational>& w) {
    int d = p.degree();
    int n = m.rows();
    // Krylov rank check: {w, Mw, ..., M^{d-1}w} independent, P(M)w = 0.
    std::vector<std::vector<Rational>> krylov{w};
    for (int i = 1; i < d; ++i) krylov.push_back(m * krylov.back());
    Matrix km(n, d);
    for (int i = 0; i < d; ++i) km.set_col(i, krylov[i]);
    if (rank(km) != d)
        throw precondition_error("eigenvector_over_field: seed has a smaller annihilator than P");
    {
        Matrix pm = p.eval_matrix(m);
        std::vector<Rational> img = pm * w;
        for (const auto& x : img)
            if (sgn(x) != 0)
                throw precondition_error("eigenvector_over_field: P does not annihilate the seed");
    }

    FieldEigenvector out;
    out.field = std::make_shared<const NumberField>(p.monic());
    NumberFieldElement lambda = NumberFieldElement::generator(out.field);

    // synthetic division P(t) = (t - lambda) * sum b_j t^j
    std::vector<NumberFieldElement> b(d);
    b[d - 1] = NumberFieldElement(Rational(1));
    for (int j = d - 1; j >= 1; --j)
        b[j - 1] = NumberFieldElement(p.coeff(j)) + lambda * b[j];
    out.mu.resize(d);
    for (int j = 0; j < d; ++j) out.mu[j] = b[d - 1 - j];

    std::vector<std::vector<Rational>> powers{w}; // M^j w
    for (int j = 1; j < d; ++j) powers.push_back(m * powers.back());
    out.z.assign(n, NumberFieldElement());
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < n; ++i) out.z[i] = out.z[i] + b[j] * Rational(powers[j][i]);

    // certification: M z = lambda z in Q(lambda)
    for (int i = 0; i < n; ++i) {
        NumberFieldElement mz;
        for (int k = 0; k < n; ++k)
            if (sgn(m.at(i, k)) != 0) mz = mz + out.z[k] * m.at(i, k);
        if (!(mz == lambda * out.z[i]))
            throw precondition_error("eigenvector_over_field: certification (M-lambda)z=0 failed");
    }
    return out;
}

struct FactorReport {
    RatPoly factor;
    int multiplicity = 1;
    bool factored = true;             // false when the degree cap was hit
    int degree = 0;
    std::vector<std::string> root_moduli; // 12 significant digits, descending
    double max_modulus = 0.0;
    bool expanding = false;           // max modulus > 1
    double bound_locally_connected = 0.0; // log|lambda|
    double bound_general = 0.0;           // log|lambda| / d
};

struct SpectralReport {
    Matrix endomorphism;
    RatPoly characteristic;
    RatPoly minimal;
    std::vector<FactorReport> factors;
    bool vacuous = true;          // no factor with a root of modulus > 1
    double bound_locally_connected = 0.0;
    double bound_general = 0.0;
};

// Full spectral report for an endomorphism matrix: exact polynomials and
// factors, root moduli to 12 digits, and the entropy lower bounds.  Factors
// beyond the degree cap are marked unfactored and contribute no bound.
inline SpectralReport entropy_bounds(const Matrix& endo, int factor_cap = kDefaultFactorCap) {
    SpectralReport rep;
    rep.endomorphism = endo;
    rep.characteristic = char_poly(endo);
    rep.minimal = min_poly(endo);
    if (rep.characteristic.degree() < 1) return rep;

    std::vector<std::pair<RatPoly, int>> factors;
    bool capped = false;
    try {
        factors = factor_poly(rep.characteristic, factor_cap);
    } catch (const resource_cap_error&) {
        capped = true;
    }
    if (capped) {
        // keep square-free parts below the cap; mark the rest unfactored
        for (const auto& [part, mult] : squarefree_decomposition(rep.characteristic)) {
            if (part.degree() <= factor_cap) {
                for (const auto& fm : factor_poly(part, factor_cap))
                    factors.push_back({fm.first, fm.second * mult});
            } else {
                FactorReport fr;
                fr.factor = part;
                fr.multiplicity = mult;
                fr.factored = false;
                fr.degree = part.degree();
                rep.factors.push_back(std::move(fr));
            }
        }
    }

    for (const auto& [fac, mult] : factors) {
        FactorReport fr;
        fr.factor = fac;
        fr.multiplicity = mult;
        fr.degree = fac.degree();
        std::vector<mpf_class> moduli = root_moduli(fac);
        for (const auto& mo : moduli) fr.root_moduli.push_back(mpf_decimal_string(mo, 12));
        if (!moduli.empty()) {
            fr.max_modulus = moduli.front().get_d();
            if (moduli.front() > 1) {
                fr.expanding = true;
                fr.bound_locally_connected = std::log(fr.max_modulus);
                fr.bound_general = fr.bound_locally_connected / fr.degree;
                rep.vacuous = false;
                rep.bound_locally_connected =
                    std::max(rep.bound_locally_connected, fr.bound_locally_connected);
                rep.bound_general = std::max(rep.bound_general, fr.bound_general);
            }
        }
        rep.factors.push_back(std::move(fr));
    }
    return rep;
}

} // namespace scalehom
