#pragma once

#include "mmo/instance.hpp"

#include <utility>

namespace mmo {

// Built-in worked example in the small-argument regime: 128-bit moduli,
// degree 6 with constant terms, K = 8, ten observation points drawn from
// [0, 2^16). Used by the example-sec4 CLI command and the test suites.
const MmoInstance& worked_example_instance();

// The ten published (x, h(x)) reference observations for the instance.
const ObservationSet& worked_example_observations();

// The near-solution coefficient vectors reported alongside the example.
// Any correct run produces *a* nearby decomposition; this particular one is
// kept only as reference data, not as an expected output.
std::pair<Poly, Poly> worked_example_reported_reconstruction();

constexpr unsigned worked_example_K = 8;

}  // namespace mmo
