#pragma once

#include "mmo/arith.hpp"

#include <cstdint>
#include <random>

namespace mmo {

// Deterministic 64-bit-seeded generator. The raw stream is std::mt19937_64,
// whose output sequence is fixed by the C++ standard, so runs are replicable
// across platforms. Big integers are assembled most-significant-word first
// from successive outputs, with rejection sampling for non-power-of-two
// bounds.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 2^nbits).
    BigInt bits(unsigned nbits);

    // Uniform in [0, bound), bound >= 1.
    BigInt below(const BigInt& bound);

    // Uniform in [lo, hi], inclusive.
    BigInt in_range(const BigInt& lo, const BigInt& hi);

private:
    std::mt19937_64 eng_;
};

// Miller-Rabin with bases derived deterministically from the candidate, so
// the verdict does not depend on the GMP build.
bool is_probable_prime(const BigInt& n, unsigned rounds = 40);

// Smallest probable prime >= n.
BigInt next_probable_prime(BigInt n);

}  // namespace mmo
