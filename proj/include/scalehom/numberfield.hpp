// Arithmetic in Q(lambda) = Q[t]/(P) for an irreducible P: elements are
// residue polynomials, so equality with zero is an exact syntactic test.
// This is the computational content of the Diophantine dichotomy: a sum
// of algebraic numbers is decided zero or nonzero exactly, never by a
// floating threshold.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "scalehom/errors.hpp"
#include "scalehom/polynomial.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

struct NumberField {
    RatPoly modulus; // irreducible monic, degree d >= 1

    explicit NumberField(RatPoly p) : modulus(std::move(p)) {
        if (modulus.degree() < 1 || !(modulus.leading() == 1))
            throw precondition_error("number field needs a monic modulus of degree >= 1");
    }
    int degree() const { return modulus.degree(); }
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

class NumberFieldElement {
public:
    NumberFieldElement() = default;
    explicit NumberFieldElement(const Rational& r) : poly_({r}) { poly_.normalize(); }
    NumberFieldElement(NumberFieldPtr field, RatPoly residue)
        : field_(std::move(field)), poly_(std::move(residue)) {
        reduce();
    }

    static NumberFieldElement generator(NumberFieldPtr field) {
        return NumberFieldElement(std::move(field), RatPoly({Rational(0), Rational(1)}));
    }

    const NumberFieldPtr& field() const { return field_; }
    const RatPoly& residue() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    bool is_rational() const { return poly_.degree() <= 0; }

    NumberFieldElement operator+(const NumberFieldElement& o) const {
        return NumberFieldElement(join(*this, o), poly_ + o.poly_);
    }
    NumberFieldElement operator-(const NumberFieldElement& o) const {
        return NumberFieldElement(join(*this, o), poly_ - o.poly_);
    }
    NumberFieldElement operator*(const NumberFieldElement& o) const {
        return NumberFieldElement(join(*this, o), poly_ * o.poly_);
    }
    NumberFieldElement operator*(const Rational& k) const {
        return NumberFieldElement(field_, poly_ * k);
    }

    NumberFieldElement inverse() const {
        if (is_zero()) throw precondition_error("inverse of zero in the number field");
        if (is_rational()) return NumberFieldElement(field_, RatPoly({1 / poly_.coeff(0)}));
        // extended Euclid against the modulus
        RatPoly r0 = field_->modulus, r1 = poly_;
        RatPoly t0, t1({Rational(1)});
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            RatPoly t2 = t0 - q * t1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.degree() != 0)
            throw precondition_error("modulus is not irreducible: inverse failed");
        return NumberFieldElement(field_, t0 * (1 / r0.coeff(0)));
    }

    bool operator==(const NumberFieldElement& o) const { return poly_ == o.poly_; }

    std::string to_string() const {
        if (poly_.is_zero()) return "0";
        std::string s;
        for (int i = 0; i <= poly_.degree(); ++i) {
            const Rational c = poly_.coeff(i);
            if (sgn(c) == 0) continue;
            if (!s.empty()) s += sgn(c) > 0 ? " + " : " - ";
            else if (sgn(c) < 0) s += "-";
            Rational a = abs(c);
            bool unit = a == 1 && i > 0;
            if (!unit) s += scalehom::to_string(a);
            if (i > 0) {
                if (!unit) s += "*";
                s += "L";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    NumberFieldPtr field_;
    RatPoly poly_;

    static NumberFieldPtr join(const NumberFieldElement& a, const NumberFieldElement& b) {
        if (a.field_ && b.field_ && a.field_ != b.field_ &&
            !(a.field_->modulus == b.field_->modulus))
            throw precondition_error("mixed number fields in arithmetic");
        return a.field_ ? a.field_ : b.field_;
    }

    void reduce() {
        if (field_ && poly_.degree() >= field_->degree()) poly_ = divmod(poly_, field_->modulus).second;
        poly_.normalize();
    }
};

inline bool is_zero(const NumberFieldElement& x) { return x.is_zero(); }

struct ZeroTestResult {
    bool zero = false;
    NumberFieldElement value;
};

// S = sum mu_j * C_j computed exactly in Q(lambda); the decision is exact
// (residue polynomial identically zero), with the nonzero value returned.
inline ZeroTestResult exact_integral_zero_test(const std::vector<NumberFieldElement>& mu,
                                               const std::vector<Integer>& c) {
    if (mu.size() != c.size())
        throw precondition_error("exact_integral_zero_test: length mismatch");
    NumberFieldElement s;
    for (size_t j = 0; j < mu.size(); ++j) s = s + mu[j] * Rational(c[j]);
    return {s.is_zero(), s};
}

} // namespace scalehom
