#pragma once

#include "mmo/solver.hpp"

#include <iosfwd>
#include <vector>

namespace mmo {

struct SweepSpec {
    std::vector<unsigned> bits_grid{48};
    std::vector<unsigned> alpha_grid{1};
    std::vector<unsigned> c_grid;  // empty: use c = 2*alpha per cell
    std::vector<unsigned> K_grid{1};
    unsigned trials = 1;
    std::uint64_t seed_base = 0;
    std::uint64_t refine_budget = 1'000'000;
    bool affine = false;
    bool check_uniqueness = false;
    unsigned jobs = 1;
    bool with_timings = false;  // timing column breaks byte-identical reruns
};

struct SweepCell {
    unsigned bits = 0, alpha = 0, c = 0, K = 0;
    unsigned trials = 0;
    unsigned truth_matches = 0;   // ground-truth recovery count
    unsigned j_matches = 0;       // decomposition valid on every observation
    unsigned within_threshold = 0;
    unsigned uniq_unique = 0, uniq_unknown = 0, uniq_not_unique = 0, uniq_not_checked = 0;
    // per monomial degree k = 1..alpha: trials where both coefficients of
    // degree k were recovered exactly
    std::vector<unsigned> degree_recovered;
    double mean_solve_ms = 0.0;
};

struct SweepReport {
    SweepSpec spec;
    std::vector<SweepCell> cells;
};

// Run every (bits, alpha, c, K) cell of the grid, `trials` seeded instances
// each. Trials are independent tasks; the per-trial seed is seed_base plus a
// global trial index fixed by grid order, so any --jobs value yields the
// same report.
SweepReport run_sweep(const SweepSpec& spec);

// Schema-stable CSV; reruns with identical seeds are byte-identical unless
// timings were requested.
void write_csv(const SweepReport& report, std::ostream& out);

}  // namespace mmo
