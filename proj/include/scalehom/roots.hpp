// Root moduli of exact polynomials via Durand-Kerner iteration in
// high-precision floating complex arithmetic.  Floating values appear only
// here, to report |lambda|; all algebra stays exact elsewhere.
#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "scalehom/errors.hpp"
#include "scalehom/polynomial.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

struct ComplexMP {
    mpf_class re, im;

    ComplexMP(int prec = 256) : re(0, prec), im(0, prec) {}
    ComplexMP(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}

    ComplexMP operator+(const ComplexMP& o) const { return {re + o.re, im + o.im}; }
    ComplexMP operator-(const ComplexMP& o) const { return {re - o.re, im - o.im}; }
    ComplexMP operator*(const ComplexMP& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexMP operator/(const ComplexMP& o) const {
        mpf_class d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    mpf_class abs2() const { return re * re + im * im; }
    mpf_class abs() const { return sqrt(abs2()); }
};

// All root moduli of a squarefree polynomial, 256-bit Durand-Kerner,
// descending order.  Accuracy far exceeds the 12 reported digits for the
// desk-scale degrees (cap 8) this library handles.
inline std::vector<mpf_class> root_moduli(const RatPoly& poly, int prec = 256) {
    int n = poly.degree();
    if (n < 1) return {};
    std::vector<ComplexMP> coeff(n + 1, ComplexMP(prec));
    for (int i = 0; i <= n; ++i) coeff[i].re = mpf_class(poly.c[i], prec) / mpf_class(poly.leading(), prec);

    auto eval = [&](const ComplexMP& z) {
        ComplexMP v(prec);
        for (int i = n; i >= 0; --i) v = v * z + coeff[i];
        return v;
    };

    // Cauchy bound scaling for the start points.
    mpf_class bound(1, prec);
    for (int i = 0; i < n; ++i) {
        mpf_class a = abs(coeff[i].re);
        if (a + 1 > bound) bound = a + 1;
    }
    std::vector<ComplexMP> z(n, ComplexMP(prec));
    ComplexMP seed(prec);
    seed.re = mpf_class("0.4", prec) * bound;
    seed.im = mpf_class("0.9", prec) * bound;
    ComplexMP cur(prec);
    cur.re = 1;
    for (int i = 0; i < n; ++i) {
        cur = cur * seed;
        z[i] = cur;
    }

    mpf_class eps(1, prec);
    mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec / 2 + 20);
    for (int iter = 0; iter < 500; ++iter) {
        mpf_class worst(0, prec);
        for (int i = 0; i < n; ++i) {
            ComplexMP denom(prec);
            denom.re = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom = denom * (z[i] - z[j]);
            ComplexMP delta = eval(z[i]) / denom;
            z[i] = z[i] - delta;
            mpf_class d = delta.abs();
            if (d > worst) worst = d;
        }
        if (worst < eps) break;
    }

    // Residual sanity: the iteration must actually have converged.
    for (int i = 0; i < n; ++i) {
        if (eval(z[i]).abs() > mpf_class(1e-30, prec) * (bound + 1))
            throw precondition_error("root iteration failed to converge");
    }

    std::vector<mpf_class> moduli;
    for (int i = 0; i < n; ++i) moduli.push_back(z[i].abs());
    std::sort(moduli.begin(), moduli.end(), [](const mpf_class& a, const mpf_class& b) { return a > b; });
    return moduli;
}

inline std::string mpf_decimal_string(const mpf_class& x, int digits = 12) {
    mp_exp_t exp10 = 0;
    std::string mant = x.get_str(exp10, 10, digits);
    if (mant.empty() || mant == "-") return "0";
    bool neg = mant[0] == '-';
    if (neg) mant.erase(0, 1);
    std::string out = neg ? "-" : "";
    if (exp10 <= 0) out += "0." + std::string(-exp10, '0') + mant;
    else if (static_cast<size_t>(exp10) >= mant.size()) out += mant + std::string(exp10 - mant.size(), '0');
    else out += mant.substr(0, exp10) + "." + mant.substr(exp10);
    return out;
}

} // namespace scalehom
