#include "mmo/poly.hpp"

namespace mmo {

BigInt binomial(const BigInt& x, unsigned k) {
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= x - (i - 1);
        // a product of i consecutive integers is divisible by i!
        mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), i);
    }
    return result;
}

BigInt eval(const Poly& poly, const BigInt& x) {
    if (poly.basis == PolyBasis::monomial) {
        BigInt acc = 0;
        for (std::size_t i = poly.coeffs.size(); i-- > 0;) acc = acc * x + poly.coeffs[i];
        return acc;
    }
    BigInt acc = 0;
    for (std::size_t k = 0; k < poly.coeffs.size(); ++k) {
        if (poly.coeffs[k] == 0) continue;
        acc += poly.coeffs[k] * binomial(x, static_cast<unsigned>(k));
    }
    return acc;
}

BigInt eval_reduced(const Poly& poly, const BigInt& x, const BigInt& m) {
    return mod_reduce(eval(poly, x), m);
}

BigInt mmo_eval(const Poly& f, const Poly& g, const BigInt& p, const BigInt& q, const BigInt& x) {
    return eval_reduced(f, x, p) + eval_reduced(g, x, q);
}

Poly binomial_to_monomial_mod(const Poly& c, const BigInt& m) {
    if (c.basis != PolyBasis::binomial)
        throw std::invalid_argument("binomial_to_monomial_mod: input not in binomial basis");
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");

    const int deg = c.degree();
    const std::size_t n = deg < 0 ? 1 : static_cast<std::size_t>(deg) + 1;

    IntVec out(n, BigInt(0));
    // falling(x) = x(x-1)...(x-k+1), extended one factor per step
    IntVec falling{BigInt(1)};
    BigInt factorial = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            factorial *= static_cast<unsigned long>(k);
            falling.insert(falling.begin(), BigInt(0));
            for (std::size_t j = 0; j + 1 < falling.size(); ++j)
                falling[j] -= BigInt(static_cast<long>(k) - 1) * falling[j + 1];
        }
        if (c.coeff(k) == 0) continue;
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), factorial.get_mpz_t(), m.get_mpz_t()) == 0)
            throw std::domain_error("binomial_to_monomial_mod: " + factorial.get_str() +
                                    "! is not invertible mod " + m.get_str());
        BigInt scale = mod_reduce(c.coeff(k) * inv, m);
        for (std::size_t j = 0; j <= k; ++j)
            out[j] = mod_reduce(out[j] + scale * falling[j], m);
    }
    return Poly(std::move(out), PolyBasis::monomial);
}

Poly centered_coeffs(const Poly& poly, const BigInt& m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    IntVec out;
    out.reserve(poly.coeffs.size());
    for (const auto& c : poly.coeffs) out.push_back(centered(c, m));
    return Poly(std::move(out), poly.basis);
}

}  // namespace mmo
