#include "mmo/arith.hpp"

namespace mmo {

namespace {

void require_modulus(const BigInt& m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2, got " + m.get_str());
}

}  // namespace

BigInt mod_reduce(const BigInt& x, const BigInt& m) {
    require_modulus(m);
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt floor_div(const BigInt& x, const BigInt& m) {
    require_modulus(m);
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return q;
}

BigInt centered(const BigInt& x, const BigInt& m) {
    BigInt r = mod_reduce(x, m);
    if (2 * r > m) r -= m;
    return r;
}

Bezout ext_gcd(const BigInt& p, const BigInt& q) {
    if (p <= 0 || q <= 0) throw std::invalid_argument("ext_gcd requires positive arguments");
    Bezout out;
    mpz_gcdext(out.g.get_mpz_t(), out.u.get_mpz_t(), out.v.get_mpz_t(), p.get_mpz_t(),
               q.get_mpz_t());
    return out;
}

BigInt inf_norm(const IntVec& v) {
    BigInt best = 0;
    for (const auto& x : v) {
        BigInt a = abs(x);
        if (a > best) best = a;
    }
    return best;
}

BigInt l2_norm_sq(const IntVec& v) {
    BigInt s = 0;
    for (const auto& x : v) s += x * x;
    return s;
}

BigRat inf_norm(const RatVec& v) {
    BigRat best = 0;
    for (const auto& x : v) {
        BigRat a = abs(x);
        if (a > best) best = a;
    }
    return best;
}

BigRat l2_norm_sq(const RatVec& v) {
    BigRat s = 0;
    for (const auto& x : v) s += x * x;
    return s;
}

}  // namespace mmo
