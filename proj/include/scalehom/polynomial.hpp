// Exact univariate polynomials over the rationals: arithmetic, gcd,
// characteristic polynomial (Berkowitz, division-free) and minimal
// polynomial (Krylov with exact elimination).
#pragma once

#include <string>
#include <vector>

#include "scalehom/errors.hpp"
#include "scalehom/matrix.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

// Coefficients low to high; no stored leading zeros; empty = zero poly.
struct RatPoly {
    std::vector<Rational> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { normalize(); }

    static RatPoly from_ints(const std::vector<long>& v) {
        std::vector<Rational> r;
        for (long x : v) r.emplace_back(x);
        return RatPoly(std::move(r));
    }

    void normalize() {
        while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }
    Rational leading() const { return c.empty() ? Rational(0) : c.back(); }
    Rational coeff(int i) const {
        return (i >= 0 && i < int(c.size())) ? c[i] : Rational(0);
    }

    bool operator==(const RatPoly& o) const { return c == o.c; }

    RatPoly operator+(const RatPoly& o) const {
        std::vector<Rational> r(std::max(c.size(), o.c.size()), Rational(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
        return RatPoly(std::move(r));
    }

    RatPoly operator-(const RatPoly& o) const {
        std::vector<Rational> r(std::max(c.size(), o.c.size()), Rational(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
        return RatPoly(std::move(r));
    }

    RatPoly operator*(const RatPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<Rational> r(c.size() + o.c.size() - 1, Rational(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        return RatPoly(std::move(r));
    }

    RatPoly operator*(const Rational& k) const {
        std::vector<Rational> r = c;
        for (auto& x : r) x *= k;
        return RatPoly(std::move(r));
    }

    RatPoly monic() const {
        if (is_zero()) return {};
        return *this * (1 / leading());
    }

    RatPoly derivative() const {
        if (degree() < 1) return {};
        std::vector<Rational> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rational(long(i));
        return RatPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational v(0);
        for (int i = degree(); i >= 0; --i) v = v * x + c[i];
        return v;
    }

    Matrix eval_matrix(const Matrix& m) const {
        int n = m.rows();
        Matrix v(n, n);
        for (int i = degree(); i >= 0; --i) {
            v = v * m;
            for (int d = 0; d < n; ++d) v.at(d, d) += c[i];
        }
        return v;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (sgn(c[i]) == 0) continue;
            if (!s.empty()) s += sgn(c[i]) > 0 ? " + " : " - ";
            else if (sgn(c[i]) < 0) s += "-";
            Rational a = abs(c[i]);
            bool unit = a == 1 && i > 0;
            if (!unit) s += scalehom::to_string(a);
            if (i > 0) {
                if (!unit) s += "*";
                s += "t";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }
};

// Quotient and remainder; divisor must be nonzero.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw precondition_error("polynomial division by zero");
    RatPoly rem = a;
    std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1), Rational(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        Rational f = rem.leading() / b.leading();
        q[shift] = f;
        for (int i = 0; i <= b.degree(); ++i) rem.c[i + shift] -= f * b.c[i];
        rem.normalize();
    }
    return {RatPoly(std::move(q)), rem};
}

inline bool divides(const RatPoly& d, const RatPoly& a) {
    return divmod(a, d).second.is_zero();
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

inline RatPoly lcm(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RatPoly g = gcd(a, b);
    return divmod(a * b, g).first.monic();
}

// Exact characteristic polynomial by the Berkowitz iteration (monic).
inline RatPoly char_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("char_poly of a non-square matrix");
    int n = m.rows();
    std::vector<Rational> p{Rational(1)}; // descending coefficients
    for (int r = 1; r <= n; ++r) {
        // Toeplitz column entries t_0..t_r for the leading r x r block.
        std::vector<Rational> t(r + 1, Rational(0));
        t[0] = 1;
        t[1] = -m.at(r - 1, r - 1);
        if (r >= 2) {
            std::vector<Rational> s(r - 1);
            for (int i = 0; i < r - 1; ++i) s[i] = m.at(i, r - 1);
            for (int k = 2; k <= r; ++k) {
                Rational dot(0);
                for (int i = 0; i < r - 1; ++i) dot += m.at(r - 1, i) * s[i];
                t[k] = -dot;
                if (k < r) {
                    std::vector<Rational> ns(r - 1, Rational(0));
                    for (int i = 0; i < r - 1; ++i)
                        for (int j = 0; j < r - 1; ++j) ns[i] += m.at(i, j) * s[j];
                    s = std::move(ns);
                }
            }
        }
        std::vector<Rational> np(r + 1, Rational(0));
        for (int i = 0; i <= r; ++i)
            for (int j = 0; j < int(p.size()); ++j)
                if (i - j >= 0 && i - j <= r) np[i] += t[i - j] * p[j];
        p = std::move(np);
    }
    std::vector<Rational> low(p.rbegin(), p.rend());
    return RatPoly(std::move(low));
}

// Exact minimal polynomial: least common multiple of the Krylov minimal
// polynomials of the standard basis vectors.
inline RatPoly min_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw precondition_error("min_poly of a non-square matrix");
    int n = m.rows();
    if (n == 0) return RatPoly({Rational(1)});
    RatPoly result({Rational(1)});
    for (int s = 0; s < n && result.degree() < n; ++s) {
        std::vector<Rational> v(n, Rational(0));
        v[s] = 1;
        std::vector<std::vector<Rational>> krylov{v};
        while (true) {
            std::vector<Rational> next = m * krylov.back();
            int k = int(krylov.size());
            Matrix kmat(n, k);
            for (int j = 0; j < k; ++j) kmat.set_col(j, krylov[j]);
            auto dep = solve(kmat, next);
            if (dep) {
                std::vector<Rational> coeffs(k + 1, Rational(0));
                for (int j = 0; j < k; ++j) coeffs[j] = -(*dep)[j];
                coeffs[k] = 1;
                result = lcm(result, RatPoly(std::move(coeffs)));
                break;
            }
            krylov.push_back(std::move(next));
        }
    }
    return result.monic();
}

} // namespace scalehom
