#pragma once

#include "mmo/matrix.hpp"

#include <cstdint>

namespace mmo {

// LLL output together with its exact Gram-Schmidt data.
struct ReducedBasis {
    IntMatrix basis;      // reduced rows
    IntMatrix transform;  // unimodular U with U * input = basis
    BigRat eps;

    // Gram-Schmidt data of the reduced rows: mu(i,j) for j < i, and the
    // squared norms ||b*_i||^2. Exact rationals derived from the all-integer
    // reduction state.
    RatMatrix mu;
    RatVec gs_norm_sq;

    std::size_t dim() const { return basis.rows(); }
    std::size_t ambient() const { return basis.cols(); }
};

// Exact LLL reduction with parameter eps in (1/4, 1). On output
// |mu(i,j)| <= 1/2 for all j < i and every consecutive pair satisfies
// ||b*_i||^2 + mu(i,i-1)^2 ||b*_{i-1}||^2 >= eps ||b*_{i-1}||^2.
// Uses the all-integer Gram representation, so no rounding ever occurs.
// Throws std::invalid_argument if the rows are linearly dependent.
ReducedBasis lll(const IntMatrix& basis, const BigRat& eps = BigRat(3, 4));

enum class CvpStatus {
    proved_within_budget,  // the bounded candidate set was fully enumerated
    budget_exhausted,      // search stopped early; result is best found
};

struct CvpResult {
    IntVec coeffs;       // with respect to the reduced basis rows
    IntVec lattice_vec;  // sum_i coeffs[i] * basis row i
    RatVec residual;     // target - lattice_vec
    BigRat residual_inf;
    BigRat residual_l2_sq;
    std::uint64_t nodes = 0;
    CvpStatus status = CvpStatus::budget_exhausted;
};

// Nearest-plane rounding against the reduced basis; the residual has all
// Gram-Schmidt coordinates in [-1/2, 1/2]. Rounding is half-up on exact
// rationals, so results are reproducible. Euclidean error is within 2^(d/2)
// of the true closest distance.
CvpResult babai_nearest_plane(const ReducedBasis& rb, const RatVec& target);

struct RefineOptions {
    std::uint64_t node_budget = 1'000'000;
    // Extra per-coordinate cap on top of the sqrt(d)*2^((i-1)/2) bounds;
    // 0 means no extra cap.
    BigInt coord_cap = 0;
    // When false, drop the per-coordinate box and let the exact partial-norm
    // pruning alone bound the search. A completed search is then a true
    // infinity-norm CVP over the whole lattice; the box can exclude the
    // optimum when a reduced vector is much shorter than the rest.
    bool use_coordinate_box = true;
};

// Improve a CVP result in the infinity norm: depth-first search over
// start + sum C_i a_i with |C_i| <= min(ceil(sqrt(d) 2^((i-1)/2)), cap),
// pruned by exact partial-norm bounds. Never returns a worse vector than
// `start`. Status reports whether the full candidate set was covered.
CvpResult cvp_infinity_refine(const ReducedBasis& rb, const RatVec& target,
                              const CvpResult& start, const RefineOptions& opts = {});

struct SvProbe {
    BigRat length;  // infinity norm of `witness`
    bool exact;     // true when `length` is the exact lattice minimum
    IntVec witness;
};

// Infinity-norm shortest-vector probe. Exact enumeration when the dimension
// is at most exact_dim_limit (guarded by an internal node cap); otherwise the
// best reduced row is reported as an upper bound.
SvProbe shortest_vector_probe(const ReducedBasis& rb, std::size_t exact_dim_limit = 14);

}  // namespace mmo
