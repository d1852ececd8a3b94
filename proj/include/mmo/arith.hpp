#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mmo {

// Exact scalars. No floating point is used anywhere on a solve path;
// doubles appear only in diagnostics (timings, approximate roots).
using BigInt = mpz_class;
using BigRat = mpq_class;
using IntVec = std::vector<BigInt>;
using RatVec = std::vector<BigRat>;

// <x>_m: representative of x mod m in [0, m-1]. Correct for negative x.
// Throws std::invalid_argument for m < 2.
BigInt mod_reduce(const BigInt& x, const BigInt& m);

// floor(x/m). This is the unique integer lambda with
// |2x - 2m*lambda - (m-1)| < m, and mod_reduce(x,m) = x - m*floor_div(x,m).
BigInt floor_div(const BigInt& x, const BigInt& m);

// Representative of x mod m in (-m/2, m/2].
BigInt centered(const BigInt& x, const BigInt& m);

struct Bezout {
    BigInt g;  // gcd(p, q)
    BigInt u;  // u*p + v*q = g
    BigInt v;
};

// Extended Euclid for p, q > 0.
Bezout ext_gcd(const BigInt& p, const BigInt& q);

BigInt inf_norm(const IntVec& v);
BigInt l2_norm_sq(const IntVec& v);
BigRat inf_norm(const RatVec& v);
// Squared Euclidean norm; kept squared so values stay rational.
BigRat l2_norm_sq(const RatVec& v);

// a/b for b | a, as a single exact limb-level division.
inline BigInt divexact(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline BigInt floor_rat(const BigRat& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), mpq_numref(x.get_mpq_t()), mpq_denref(x.get_mpq_t()));
    return q;
}

// Nearest integer with half-up tie break: round(1/2) = 1, round(-1/2) = 0.
inline BigInt round_half_up(const BigRat& x) {
    BigInt n = 2 * x.get_num() + x.get_den();
    BigInt q;
    BigInt d = 2 * x.get_den();
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline BigInt dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline BigRat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    BigRat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec to_rat(const IntVec& v) {
    RatVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

}  // namespace mmo
