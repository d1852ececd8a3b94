#pragma once

#include "mmo/poly.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mmo {

struct MmoParams {
    unsigned alpha = 1;    // degree bound, >= 1
    unsigned bits = 32;    // bit length of p and q, >= 4
    unsigned K = 1;        // arguments drawn from [1, floor(min(p,q)^(1/K))]
    unsigned c = 2;        // number of observation points, >= 1
    bool affine = false;   // include constant coefficients
    bool composite_moduli = false;  // odd coprime composites instead of primes
    bool points_from_zero = false;  // sample from [0, w) instead of [1, w]
    std::uint64_t seed = 0;
};

// Ground truth for experiments: two moduli and the secret polynomials.
// Non-constant coefficients are stored centered (|r_k| < p/2, |t_k| < q/2);
// in affine mode the constant terms are kept in the standard range [0, m).
struct MmoInstance {
    BigInt p, q;
    Poly f, g;
    bool affine = false;

    unsigned alpha() const {
        std::size_t n = std::max(f.coeffs.size(), g.coeffs.size());
        return n > 0 ? static_cast<unsigned>(n - 1) : 0;
    }
};

struct Observation {
    BigInt x, h;
};

// The solver's only input besides the public parameters: the pairs
// (x_i, h(x_i)) together with p, q and the degree bound.
struct ObservationSet {
    BigInt p, q;
    unsigned alpha = 0;
    bool affine = false;
    std::vector<Observation> points;

    std::size_t c() const { return points.size(); }
};

// Deterministic instance generation: p != q coprime of the requested bit
// length with gcd(p, K!) = gcd(q, K!) = 1, coefficients uniform in their
// ranges, c distinct arguments from the K-th-root interval.
// Throws std::invalid_argument when the interval cannot supply c points.
std::pair<MmoInstance, ObservationSet> generate(const MmoParams& params);

// Evaluate the instance at the given distinct points, in input order.
ObservationSet observe(const MmoInstance& inst, const std::vector<BigInt>& points);

// JSON files with all big integers as decimal strings.
void save_instance(const MmoInstance& inst, const std::string& path);
MmoInstance load_instance(const std::string& path);
void save_observations(const ObservationSet& obs, const std::string& path);
ObservationSet load_observations(const std::string& path);

std::string instance_to_json(const MmoInstance& inst);
MmoInstance instance_from_json(const std::string& text);
std::string observations_to_json(const ObservationSet& obs);
ObservationSet observations_from_json(const std::string& text);

}  // namespace mmo
