#include "mmo/rng.hpp"

namespace mmo {

BigInt SeededRng::bits(unsigned nbits) {
    BigInt value = 0;
    unsigned remaining = nbits;
    while (remaining >= 64) {
        mpz_mul_2exp(value.get_mpz_t(), value.get_mpz_t(), 64);
        value += BigInt(static_cast<unsigned long>(next_u64()));
        remaining -= 64;
    }
    if (remaining > 0) {
        mpz_mul_2exp(value.get_mpz_t(), value.get_mpz_t(), remaining);
        value += BigInt(static_cast<unsigned long>(next_u64() >> (64 - remaining)));
    }
    return value;
}

BigInt SeededRng::below(const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("SeededRng::below: bound must be positive");
    if (bound == 1) return 0;
    const unsigned nbits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
    // 2^nbits < 2*bound, so each draw accepts with probability > 1/2
    for (;;) {
        BigInt v = bits(nbits);
        if (v < bound) return v;
    }
}

BigInt SeededRng::in_range(const BigInt& lo, const BigInt& hi) {
    if (lo > hi) throw std::invalid_argument("SeededRng::in_range: empty range");
    return lo + below(hi - lo + 1);
}

namespace {

constexpr unsigned kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                     41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// SplitMix64; fixed constants, used only to derive Miller-Rabin bases.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

bool is_probable_prime(const BigInt& n, unsigned rounds) {
    if (n < 2) return false;
    for (unsigned p : kSmallPrimes) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    // n - 1 = d * 2^s with d odd
    BigInt d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    std::uint64_t state = mpz_get_ui(n.get_mpz_t());  // low bits of n seed the base stream
    const BigInt n1 = n - 1;
    const BigInt span = n - 3;  // n > 97 here, so the base range [2, n-2] is nonempty
    for (unsigned r = 0; r < rounds; ++r) {
        BigInt a = 2 + BigInt(static_cast<unsigned long>(splitmix64(state))) % span;
        BigInt x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = mod_reduce(x * x, n);
            if (x == n1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

BigInt next_probable_prime(BigInt n) {
    if (n <= 2) return 2;
    if (mpz_even_p(n.get_mpz_t())) n += 1;
    while (!is_probable_prime(n)) n += 2;
    return n;
}

}  // namespace mmo
