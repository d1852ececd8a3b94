"""Exact lattice solver for sums of two reduced polynomial evaluations."""

from mmo_lattice._core import (
    CvpResult,
    LatticeSystem,
    MmoInstance,
    MmoParams,
    Observation,
    ObservationSet,
    Poly,
    ReducedBasis,
    SolverOutcome,
    babai_nearest_plane,
    binomial,
    binomial_to_monomial_mod,
    build_system,
    centered,
    centered_coeffs,
    cvp_infinity_refine,
    dump_system,
    eval_poly,
    eval_reduced,
    expected_collisions_bruteforce,
    ext_gcd,
    floor_div,
    gaussian_uniqueness_predicate,
    generate,
    interpolation_error,
    lll,
    load_instance,
    load_observations,
    minkowski_bound,
    mmo_eval,
    mod_reduce,
    observe,
    projected_volume,
    save_instance,
    save_observations,
    shortest_vector_probe,
    solve,
    uniqueness_check,
    vandermonde,
    volume_closed_form,
    worked_example_instance,
    worked_example_observations,
    worked_example_reported_reconstruction,
)

__all__ = [name for name in dir() if not name.startswith("_")]
