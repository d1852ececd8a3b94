#pragma once

#include "mmo/arith.hpp"

namespace mmo {

enum class PolyBasis { monomial, binomial };

// Integer-coefficient polynomial, least degree first. In the binomial basis
// the value is sum_k coeffs[k] * binom(x, k), which is an integer for every
// integer x. An empty coefficient vector is the zero polynomial.
struct Poly {
    IntVec coeffs;
    PolyBasis basis = PolyBasis::monomial;

    Poly() = default;
    explicit Poly(IntVec c, PolyBasis b = PolyBasis::monomial)
        : coeffs(std::move(c)), basis(b) {}

    // Index of the last nonzero coefficient; -1 for the zero polynomial.
    int degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (coeffs[i] != 0) return static_cast<int>(i);
        return -1;
    }

    BigInt coeff(std::size_t k) const { return k < coeffs.size() ? coeffs[k] : BigInt(0); }

    bool is_zero() const { return degree() < 0; }
};

// binom(x, k) by the product formula with exact division; valid for any
// integer x, including negative arguments.
BigInt binomial(const BigInt& x, unsigned k);

BigInt eval(const Poly& poly, const BigInt& x);

// <eval(poly, x)>_m
BigInt eval_reduced(const Poly& poly, const BigInt& x, const BigInt& m);

// h(x) = <f(x)>_p + <g(x)>_q, the observed mixed sum; range [0, p+q-2].
BigInt mmo_eval(const Poly& f, const Poly& g, const BigInt& p, const BigInt& q, const BigInt& x);

// Convert a binomial-basis polynomial of degree K into a monomial-basis
// polynomial over Z_m that agrees with it mod m at every integer argument.
// Requires gcd(m, K!) = 1; otherwise throws std::domain_error.
Poly binomial_to_monomial_mod(const Poly& c, const BigInt& m);

// Map every coefficient to its representative in (-m/2, m/2]. Evaluation
// mod m is unchanged.
Poly centered_coeffs(const Poly& poly, const BigInt& m);

}  // namespace mmo
