#pragma once

#include "mmo/lattice.hpp"
#include "mmo/reduction.hpp"

#include <functional>
#include <optional>
#include <string>

namespace mmo {

enum class Uniqueness { unique, unknown, not_unique, not_checked };

const char* to_string(Uniqueness u);

struct SolveOptions {
    BigRat eps = BigRat(3, 4);
    std::uint64_t refine_budget = 1'000'000;
    BigInt coord_cap = 0;  // optional cap on refinement coordinates, 0 = none
    bool check_uniqueness = false;
    std::size_t svp_exact_dim_limit = 14;
};

struct SolverOutcome {
    Poly f, g;  // candidate polynomials, centered coefficients
    std::vector<bool> match_mask;
    bool full_match = false;
    // Scaled residual infinity norm < p*q: the candidate then satisfies the
    // coefficient bounds and the rounding constraints of the smaller modulus
    // at every observation point.
    bool residual_within_threshold = false;
    std::optional<bool> truth_match;  // set when the instance is known
    Uniqueness uniqueness = Uniqueness::not_checked;
    BigInt residual_inf_scaled;
    std::uint64_t refine_nodes = 0;
    CvpStatus refine_status = CvpStatus::budget_exhausted;
    double lll_ms = 0.0, cvp_ms = 0.0;
};

// End-to-end solve: build the lattice system, reduce, round with nearest
// plane, refine in the infinity norm, and read the candidate coefficients
// out of x' = x0 + w * kernel. Verification against J is by direct
// re-evaluation. A system with no vector inside the threshold is reported
// as a failed outcome, not an exception. When `truth` is given, truth_match
// compares coefficients mod p / mod q; in affine mode the comparison is up
// to the inherent constant shift.
SolverOutcome solve(const ObservationSet& J, const SolveOptions& opts = {},
                    const MmoInstance* truth = nullptr);

// Indirect success test on the scaled lattice. Threshold 2pq is the scaled
// image of 1: a nonzero lattice vector below it is a witness that two
// decompositions within the solve threshold may coexist.
//   - exact probe:  unique when >= 2pq, otherwise not_unique;
//   - row bound:    not_unique when the witness row is < 2pq, else unknown.
Uniqueness uniqueness_check(const LatticeSystem& sys, const SolveOptions& opts = {});
Uniqueness uniqueness_from_probe(const SvProbe& probe, const BigInt& scale);

struct ErrorScanSummary {
    std::uint64_t total = 0;
    std::uint64_t zero = 0;
    std::vector<BigInt> distinct_errors;  // sorted; capped at 4096 values
    bool distinct_overflow = false;

    double zero_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(zero) / static_cast<double>(total);
    }
};

// Compare the interpolation h~ built from (f_hat, g_hat) against the true h
// of the instance for x = 0, stride, 2*stride, ... below range_end. The sink,
// when given, receives (x, h, h~) per sample.
ErrorScanSummary interpolation_error(
    const MmoInstance& inst, const Poly& f_hat, const Poly& g_hat, const BigInt& range_end,
    const BigInt& stride = 1,
    const std::function<void(const BigInt&, const BigInt&, const BigInt&)>& sink = nullptr);

// Exact expected number of coefficient pairs matching a random observed
// vector, by full enumeration of all (pq)^alpha pairs with zero constant
// terms. Guarded to at most 10^7 pairs. The result provably satisfies
// E >= (pq)^alpha / (p+q-1)^c.
BigRat expected_collisions_bruteforce(const BigInt& p, const BigInt& q, unsigned alpha,
                                      const std::vector<BigInt>& points);

std::string outcome_to_json(const SolverOutcome& outcome);

}  // namespace mmo
