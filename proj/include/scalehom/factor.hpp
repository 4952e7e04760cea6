// Exact factorization over the rationals, desk scale: Yun square-free
// decomposition, Berlekamp factorization modulo a small prime, linear
// Hensel lifting to a Mignotte-bound modulus, and subset recombination with
// exact trial division.  Every output is certified by multiplying back.
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scalehom/errors.hpp"
#include "scalehom/polynomial.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

using IntPoly = std::vector<Integer>; // low -> high, no leading zeros
using FpPoly = std::vector<long>;     // coefficients in [0, p)

namespace fpoly {

inline void normalize(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const FpPoly& a) { return int(a.size()) - 1; }

inline FpPoly mul(const FpPoly& a, const FpPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    normalize(r);
    return r;
}

inline long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return ((t % p) + p) % p;
}

inline std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b, long p) {
    FpPoly rem = a, q;
    normalize(rem);
    if (b.empty()) throw precondition_error("mod-p division by zero");
    long binv = inv_mod(b.back(), p);
    if (degree(rem) >= degree(b)) q.assign(degree(rem) - degree(b) + 1, 0);
    while (degree(rem) >= degree(b)) {
        int shift = degree(rem) - degree(b);
        long f = (rem.back() * binv) % p;
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i)
            rem[i + shift] = ((rem[i + shift] - f * b[i]) % p + p) % p;
        normalize(rem);
    }
    return {q, rem};
}

inline FpPoly gcd(FpPoly a, FpPoly b, long p) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        FpPoly r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        long inv = inv_mod(a.back(), p);
        for (auto& x : a) x = (x * inv) % p;
    }
    return a;
}

// s*a + t*b = 1 for coprime a, b.
inline std::pair<FpPoly, FpPoly> bezout(const FpPoly& a, const FpPoly& b, long p) {
    FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    normalize(r0);
    normalize(r1);
    auto sub_mul = [&](const FpPoly& x, const FpPoly& q, const FpPoly& y) {
        FpPoly qy = mul(q, y, p);
        FpPoly r(std::max(x.size(), qy.size()), 0);
        for (size_t i = 0; i < x.size(); ++i) r[i] = x[i];
        for (size_t i = 0; i < qy.size(); ++i) r[i] = ((r[i] - qy[i]) % p + p) % p;
        normalize(r);
        return r;
    };
    while (!r1.empty()) {
        FpPoly q = divmod(r0, r1, p).first;
        FpPoly r2 = sub_mul(r0, q, r1);
        FpPoly s2 = sub_mul(s0, q, s1);
        FpPoly t2 = sub_mul(t0, q, t1);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (degree(r0) != 0) throw precondition_error("bezout of non-coprime polynomials");
    long inv = inv_mod(r0[0], p);
    for (auto& x : s0) x = (x * inv) % p;
    for (auto& x : t0) x = (x * inv) % p;
    return {s0, t0};
}

inline FpPoly derivative(const FpPoly& a, long p) {
    FpPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back((long(i) % p) * a[i] % p);
    normalize(r);
    return r;
}

inline FpPoly powmod(FpPoly base, Integer e, const FpPoly& f, long p) {
    FpPoly r{1};
    base = divmod(base, f, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = divmod(mul(r, base, p), f, p).second;
        base = divmod(mul(base, base, p), f, p).second;
        e >>= 1;
    }
    return r;
}

// Berlekamp factorization of a monic squarefree polynomial mod p into monic
// irreducibles, deterministically (gcd splits over all residues).
inline std::vector<FpPoly> berlekamp(const FpPoly& f, long p) {
    int n = degree(f);
    if (n <= 1) return {f};
    // Frobenius matrix: column i holds x^{ip} mod f.
    std::vector<FpPoly> cols(n);
    cols[0] = {1};
    FpPoly xp = powmod(FpPoly{0, 1}, Integer(p), f, p);
    for (int i = 1; i < n; ++i) cols[i] = divmod(mul(cols[i - 1], xp, p), f, p).second;
    // Nullspace of (Q - I) by Gaussian elimination mod p.
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= degree(cols[j]); ++i) m[i][j] = cols[j][i];
        m[j][j] = ((m[j][j] - 1) % p + p) % p;
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pr = -1;
        for (int i = row; i < n; ++i)
            if (m[i][col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[row], m[pr]);
        long inv = inv_mod(m[row][col], p);
        for (int j = 0; j < n; ++j) m[row][j] = (m[row][j] * inv) % p;
        for (int i = 0; i < n; ++i) {
            if (i == row || m[i][col] == 0) continue;
            long f2 = m[i][col];
            for (int j = 0; j < n; ++j) m[i][j] = ((m[i][j] - f2 * m[row][j]) % p + p) % p;
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<FpPoly> basis;
    std::vector<int> is_pivot(n, -1);
    for (size_t i = 0; i < pivot_col.size(); ++i) is_pivot[pivot_col[i]] = int(i);
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j] >= 0) continue;
        FpPoly v(n, 0);
        v[j] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = ((-m[int(i)][j]) % p + p) % p;
        normalize(v);
        basis.push_back(v);
    }
    // The nullity of (Q - I) equals the number of irreducible factors.
    size_t r = basis.size();
    std::vector<FpPoly> factors{f};
    for (const FpPoly& v : basis) {
        if (factors.size() >= r) break;
        if (degree(v) < 1) continue;
        for (long s = 0; s < p && factors.size() < r; ++s) {
            FpPoly vs = v;
            if (vs.empty()) vs.push_back(0);
            vs[0] = ((vs[0] - s) % p + p) % p;
            normalize(vs);
            std::vector<FpPoly> next;
            for (const FpPoly& g : factors) {
                if (degree(g) <= 1) { next.push_back(g); continue; }
                FpPoly d = gcd(g, vs, p);
                if (degree(d) > 0 && degree(d) < degree(g)) {
                    next.push_back(d);
                    next.push_back(divmod(g, d, p).first);
                } else {
                    next.push_back(g);
                }
            }
            factors = std::move(next);
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

} // namespace fpoly

namespace ipoly {

inline void normalize(IntPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int degree(const IntPoly& a) { return int(a.size()) - 1; }

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

inline IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Integer& m) {
    IntPoly r = mul(a, b);
    for (auto& x : r) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    normalize(r);
    return r;
}

inline Integer content(const IntPoly& a) {
    Integer g(0);
    for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

inline IntPoly primitive(IntPoly a) {
    normalize(a);
    if (a.empty()) return a;
    Integer g = content(a);
    if (sgn(a.back()) < 0) g = -g;
    for (auto& x : a) x /= g;
    return a;
}

// Exact division test: a / d in Z[t] if it exists.
inline std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& d) {
    if (d.empty()) return std::nullopt;
    IntPoly rem = a, q(std::max<size_t>(1, a.size()) , Integer(0));
    normalize(rem);
    while (degree(rem) >= degree(d)) {
        Integer lead = rem.back();
        if (!mpz_divisible_p(lead.get_mpz_t(), d.back().get_mpz_t())) return std::nullopt;
        Integer f = lead / d.back();
        int shift = degree(rem) - degree(d);
        q[shift] = f;
        for (size_t i = 0; i < d.size(); ++i) rem[i + shift] -= f * d[i];
        normalize(rem);
    }
    if (!rem.empty()) return std::nullopt;
    normalize(q);
    return q;
}

// Balanced representative in (-m/2, m/2].
inline Integer balanced(Integer x, const Integer& m) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    if (x * 2 > m) x -= m;
    return x;
}

inline IntPoly balanced_poly(IntPoly a, const Integer& m) {
    for (auto& x : a) x = balanced(x, m);
    normalize(a);
    return a;
}

inline FpPoly to_fp(const IntPoly& a, long p) {
    FpPoly r;
    for (const auto& x : a) {
        Integer v = x % p;
        if (v < 0) v += p;
        r.push_back(long(v.get_si()));
    }
    fpoly::normalize(r);
    return r;
}

inline IntPoly from_fp(const FpPoly& a) {
    IntPoly r;
    for (long x : a) r.emplace_back(x);
    return r;
}

} // namespace ipoly

namespace detail {

// Linear Hensel lift of a two-factor splitting f = G*H (G monic) from mod p
// to mod p^e; the Bezout pair stays fixed mod p.
inline std::pair<IntPoly, IntPoly> hensel_pair(const IntPoly& f, const FpPoly& g0,
                                               const FpPoly& h0, long p, int e) {
    auto [s, t] = fpoly::bezout(g0, h0, p);
    IntPoly G = ipoly::from_fp(g0), H = ipoly::from_fp(h0);
    Integer pk(p);
    for (int k = 1; k < e; ++k) {
        Integer pk1 = pk * p;
        IntPoly gh = ipoly::mul(G, H);
        IntPoly err(std::max(f.size(), gh.size()), Integer(0));
        for (size_t i = 0; i < f.size(); ++i) err[i] += f[i];
        for (size_t i = 0; i < gh.size(); ++i) err[i] -= gh[i];
        for (auto& x : err) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pk1.get_mpz_t());
        ipoly::normalize(err);
        IntPoly delta_int;
        for (auto& x : err) delta_int.push_back(x / pk);
        FpPoly delta = ipoly::to_fp(delta_int, p);
        auto [q, u] = fpoly::divmod(fpoly::mul(delta, t, p), g0, p);
        FpPoly v = fpoly::mul(delta, s, p);
        {
            FpPoly qh = fpoly::mul(q, h0, p);
            if (qh.size() > v.size()) v.resize(qh.size(), 0);
            for (size_t i = 0; i < qh.size(); ++i) v[i] = (v[i] + qh[i]) % p;
            fpoly::normalize(v);
        }
        if (G.size() < u.size() + 0) G.resize(u.size(), Integer(0));
        for (size_t i = 0; i < u.size(); ++i) G[i] += pk * u[i];
        if (H.size() < v.size()) H.resize(v.size(), Integer(0));
        for (size_t i = 0; i < v.size(); ++i) H[i] += pk * v[i];
        for (auto& x : G) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pk1.get_mpz_t());
        for (auto& x : H) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pk1.get_mpz_t());
        ipoly::normalize(G);
        ipoly::normalize(H);
        pk = pk1;
    }
    return {G, H};
}

// Lift the full modular factorization f = lc * prod(facs) mod p to mod p^e.
// Returns monic factors mod p^e.
inline std::vector<IntPoly> hensel_all(const IntPoly& f, const std::vector<FpPoly>& facs,
                                       long p, const Integer& pe, int e) {
    if (facs.size() == 1) {
        // monic version of f mod p^e
        Integer lc = f.back() % pe;
        if (lc < 0) lc += pe;
        Integer lcinv;
        if (mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), pe.get_mpz_t()) == 0)
            throw precondition_error("leading coefficient not invertible in Hensel lift");
        IntPoly r = f;
        for (auto& x : r) {
            x *= lcinv;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pe.get_mpz_t());
        }
        ipoly::normalize(r);
        return {r};
    }
    size_t mid = facs.size() / 2;
    FpPoly g0{1}, h0 = ipoly::to_fp(IntPoly{f.back()}, p);
    for (size_t i = 0; i < mid; ++i) g0 = fpoly::mul(g0, facs[i], p);
    for (size_t i = mid; i < facs.size(); ++i) h0 = fpoly::mul(h0, facs[i], p);
    auto [G, H] = hensel_pair(f, g0, h0, p, e);
    std::vector<FpPoly> left(facs.begin(), facs.begin() + mid);
    std::vector<FpPoly> right(facs.begin() + mid, facs.end());
    std::vector<IntPoly> out = hensel_all(G, left, p, pe, e);
    std::vector<IntPoly> out2 = hensel_all(H, right, p, pe, e);
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

} // namespace detail

// Factor a primitive squarefree integer polynomial into primitive
// irreducibles over Z (Zassenhaus recombination).
inline std::vector<IntPoly> factor_primitive_squarefree(IntPoly f) {
    std::vector<IntPoly> out;
    ipoly::normalize(f);
    if (ipoly::degree(f) <= 1) {
        if (ipoly::degree(f) >= 1) out.push_back(f);
        return out;
    }
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                                  47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    long p = 0;
    FpPoly fmodp;
    for (long cand : primes) {
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), cand)) continue;
        FpPoly fp = ipoly::to_fp(f, cand);
        FpPoly g = fpoly::gcd(fp, fpoly::derivative(fp, cand), cand);
        if (fpoly::degree(g) == 0) { p = cand; fmodp = fp; break; }
    }
    if (p == 0) throw precondition_error("no usable prime for modular factorization");

    long linv = fpoly::inv_mod(fmodp.back(), p);
    FpPoly fmonic = fmodp;
    for (auto& x : fmonic) x = (x * linv) % p;
    std::vector<FpPoly> facs = fpoly::berlekamp(fmonic, p);
    if (facs.size() == 1) {
        out.push_back(f);
        return out;
    }

    // Mignotte-style bound: |g_i| <= 2^deg * ||f||_2, times |lc| for the
    // recombination candidates; modulus must exceed twice that.
    Integer norm2sq(0);
    for (const auto& c : f) norm2sq += c * c;
    Integer norm2;
    mpz_sqrt(norm2.get_mpz_t(), norm2sq.get_mpz_t());
    norm2 += 1;
    Integer bound = norm2 * abs(f.back());
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), ipoly::degree(f));
    Integer pe(p);
    int e = 1;
    while (pe <= bound * 2) { pe *= p; ++e; }

    std::vector<IntPoly> lifted = detail::hensel_all(f, facs, p, pe, e);

    std::vector<int> avail(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) avail[i] = int(i);
    IntPoly rest = f;

    std::function<bool(size_t)> try_size = [&](size_t s) -> bool {
        std::vector<int> comb(s);
        std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t start) -> bool {
            if (pos == s) {
                IntPoly cand{rest.back()};
                for (size_t i = 0; i < s; ++i) cand = ipoly::mul_mod(cand, lifted[avail[comb[i]]], pe);
                cand = ipoly::balanced_poly(cand, pe);
                cand = ipoly::primitive(cand);
                auto quot = ipoly::divide_exact(rest, cand);
                if (quot && ipoly::degree(cand) >= 1) {
                    out.push_back(cand);
                    rest = ipoly::primitive(*quot);
                    std::vector<int> na;
                    for (size_t i = 0; i < avail.size(); ++i)
                        if (std::find(comb.begin(), comb.end(), int(i)) == comb.end())
                            na.push_back(avail[i]);
                    avail = std::move(na);
                    return true;
                }
                return false;
            }
            for (size_t i = start; i < avail.size(); ++i) {
                comb[pos] = int(i);
                if (rec(pos + 1, i + 1)) return true;
            }
            return false;
        };
        return rec(0, 0);
    };

    size_t s = 1;
    while (2 * s <= avail.size()) {
        if (!try_size(s)) ++s;
    }
    if (ipoly::degree(rest) >= 1) out.push_back(rest);
    return out;
}

constexpr int kDefaultFactorCap = 8;

// Yun square-free decomposition of a monic rational polynomial:
// list of (square-free monic part, multiplicity).
inline std::vector<std::pair<RatPoly, int>> squarefree_decomposition(const RatPoly& f) {
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly w = f.monic();
    if (w.degree() < 1) return out;
    RatPoly d = w.derivative();
    RatPoly g = gcd(w, d);
    RatPoly wi = divmod(w, g).first;
    RatPoly yi = divmod(d, g).first;
    int i = 1;
    while (wi.degree() >= 1) {
        RatPoly zi = yi - wi.derivative();
        RatPoly gi = gcd(wi, zi);
        if (gi.degree() >= 1) out.push_back({gi.monic(), i});
        wi = divmod(wi, gi).first;
        yi = divmod(zi, gi).first;
        ++i;
    }
    return out;
}

// Full factorization into monic rational irreducibles with multiplicities;
// degree capped (desk scale).  Certified by exact multiplication.
inline std::vector<std::pair<RatPoly, int>> factor_poly(const RatPoly& p,
                                                        int degree_cap = kDefaultFactorCap) {
    if (p.degree() < 1) throw precondition_error("factor_poly requires degree >= 1");
    if (p.degree() > degree_cap)
        throw resource_cap_error("factor_poly: degree " + std::to_string(p.degree()) +
                                 " above cap " + std::to_string(degree_cap));
    std::vector<std::pair<RatPoly, int>> out;
    for (const auto& [part, mult] : squarefree_decomposition(p)) {
        // scale to a primitive integer polynomial
        Integer den(1);
        for (const auto& c : part.c) {
            Integer d = c.get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
        IntPoly ip;
        for (const auto& c : part.c) {
            Rational scaled = c * Rational(den);
            ip.push_back(scaled.get_num());
        }
        ip = ipoly::primitive(ip);
        for (const IntPoly& fac : factor_primitive_squarefree(ip)) {
            std::vector<Rational> rc;
            for (const auto& x : fac) rc.emplace_back(x);
            out.push_back({RatPoly(std::move(rc)).monic(), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i)
            if (a.first.c[i] != b.first.c[i]) return a.first.c[i] < b.first.c[i];
        return a.second < b.second;
    });
    // merge equal factors
    std::vector<std::pair<RatPoly, int>> merged;
    for (auto& fm : out) {
        if (!merged.empty() && merged.back().first == fm.first) merged.back().second += fm.second;
        else merged.push_back(fm);
    }
    // certification
    RatPoly check({Rational(1)});
    for (const auto& [fac, mult] : merged)
        for (int i = 0; i < mult; ++i) check = check * fac;
    check = check * p.leading();
    if (!(check == p))
        throw precondition_error("internal error: factorization failed certification");
    return merged;
}

} // namespace scalehom
