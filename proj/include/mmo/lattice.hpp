#pragma once

#include "mmo/instance.hpp"
#include "mmo/matrix.hpp"

#include <string>
#include <vector>

namespace mmo {

// Matrix of powers of the observation points: entry (k-1, i) = x_i^k for
// k = 1..alpha. In affine mode an all-ones row (k = 0) is prepended, so the
// matrix has alpha+1 rows. Points must be pairwise distinct.
IntMatrix vandermonde(const std::vector<BigInt>& points, unsigned alpha, bool affine);

// Which redundant block of c columns was removed from the lattice basis.
// The two blocks are proportional with ratio -p/q, so the smaller-magnitude
// one is dropped without changing any infinity norm of a lattice vector.
enum class DeletedBlock { third, fourth };

// Everything the solver needs: the exact rational system and its integral
// scaling. Row vector conventions throughout: a solution x of length
// 2*(block+c) satisfies h = x * constraint and ||x * embedding - offset|| < 1/2
// in the infinity norm.
struct LatticeSystem {
    BigInt p, q;
    BigInt mu1, mu2;  // mu1*p + mu2*q = 1
    unsigned alpha = 0;
    bool affine = false;
    std::size_t block = 0;  // coefficient block size: alpha, or alpha+1 in affine mode
    std::size_t c = 0;

    IntVec h;                // observed values
    IntMatrix powers;        // vandermonde block, block x c
    IntMatrix constraint;    // 2(block+c) x c, h = x * constraint
    RatMatrix embedding;     // 2(block+c) square block-diagonal normalization
    IntMatrix kernel;        // (2 block + c) rows spanning the left kernel of constraint
    RatMatrix lattice_full;  // kernel * embedding
    RatMatrix lattice;       // lattice_full minus the redundant column block (square)
    IntVec particular;       // one integer solution of h = x * constraint
    RatVec offset;           // block-wise centering vector
    RatVec target_full;      // offset - particular * embedding
    RatVec target;           // target_full minus the deleted coordinates
    DeletedBlock deleted = DeletedBlock::fourth;

    BigInt scale;  // 2pq, clears every denominator

    // Scaled forms of the full system; the solver's close-vector search runs
    // here, so that a residual below scale/2 = pq certifies a valid
    // decomposition at every observation point.
    IntMatrix basis_scaled_full;  // scale * lattice_full
    IntVec target_scaled_full;   // scale * target_full

    // Scaled forms of the square system. Lattice vectors keep their infinity
    // norm under the block deletion, so volume and shortest-vector questions
    // live here.
    IntMatrix basis_scaled_square;  // scale * lattice
    IntVec target_scaled_square;    // scale * target

    std::size_t dim() const { return 2 * block + c; }
    std::size_t ambient() const { return 2 * (block + c); }
    // First column index of the deleted block in the full (ambient) space.
    std::size_t deleted_start() const {
        return deleted == DeletedBlock::third ? 2 * block : 2 * block + c;
    }
};

// Assemble the full system for an observation set. Requires gcd(p,q) = 1 and
// at least one point. A candidate with scaled residual infinity norm < p*q
// satisfies the coefficient bounds and the rounding constraints of the
// smaller modulus at every point.
LatticeSystem build_system(const ObservationSet& J);

// max(p,q)^c / (pq)^alpha, the volume of the square lattice basis.
// In affine mode pass the block size (alpha + 1) for alpha.
BigRat volume_closed_form(const BigInt& p, const BigInt& q, unsigned alpha, std::size_t c);

// Exact floor/ceil bracket of vol^(1/d), plus a double for reporting.
struct RootBracket {
    BigInt lo, hi;
    double approx = 0.0;
};

// Upper bound on the infinity-norm shortest vector of a lattice of the
// given volume and dimension.
RootBracket minkowski_bound(const BigRat& vol, unsigned d);

// True when max(p,q)^c/(pq)^alpha > 2^(2 alpha + c): the close vector is then
// likely to be unique.
bool gaussian_uniqueness_predicate(const BigInt& p, const BigInt& q, unsigned alpha,
                                   std::size_t c);

struct ProjectedVolume {
    BigRat vol_sq;         // q^(2(c-alpha-1)) / det(B B^t), kept squared to stay rational
    double approx_log2 = 0.0;  // log2 of the (un-squared) volume
    // The source states the smallness heuristic in two variants; both are
    // reported and neither is corrected.
    bool heuristic_c_minus_alpha = false;    // K(c-alpha)   > alpha(alpha+1)/2
    bool heuristic_c_minus_alpha_1 = false;  // K(c-alpha-1) > alpha(alpha+1)/2
};

// Volume of the lattice that remains after the short binomial-polynomial
// sublattice is projected out; valid in the small-argument regime with
// q the larger modulus and K > alpha. Throws if the binomial matrix of the
// points is rank deficient.
ProjectedVolume projected_volume(const std::vector<BigInt>& points, unsigned alpha,
                                 const BigInt& q, unsigned K);

// Structured-text dump of every matrix and vector, for cross-implementation
// debugging. Rationals are written as "num/den" strings.
void dump_system(const LatticeSystem& sys, const std::string& path);

}  // namespace mmo
