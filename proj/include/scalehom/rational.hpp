// Exact rational scalars (GMP-backed) with the "p/q" string convention
// used by every serialized interface.
#pragma once

#include <gmpxx.h>

#include <string>

#include "scalehom/errors.hpp"

namespace scalehom {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw input_error("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw input_error("bad rational literal '" + text + "' (expected p or p/q)");
    if (text.find('/') != std::string::npos) {
        auto den = text.substr(text.find('/') + 1);
        if (den.empty() || den == "0" || den.find_first_not_of("0123456789") != std::string::npos)
            throw input_error("bad rational literal '" + text + "' (expected p or p/q)");
    }
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

// Decimal rendering with a fixed number of significant digits (round to
// nearest); used for human-readable report columns next to the exact value.
inline std::string decimal_string(const Rational& x, int digits = 12) {
    mpf_class f(x, 64 + 4 * digits);
    mp_exp_t exp10 = 0;
    std::string mant = f.get_str(exp10, 10, digits);
    if (mant.empty() || mant == "-") return "0";
    bool neg = mant[0] == '-';
    if (neg) mant.erase(0, 1);
    std::string out = neg ? "-" : "";
    if (exp10 <= 0) {
        out += "0." + std::string(-exp10, '0') + mant;
    } else if (static_cast<size_t>(exp10) >= mant.size()) {
        out += mant + std::string(exp10 - mant.size(), '0');
    } else {
        out += mant.substr(0, exp10) + "." + mant.substr(exp10);
    }
    return out;
}

} // namespace scalehom
