"""Exact shadowing and limit-shadowing experiments.

Distances and tolerances are ``fractions.Fraction``; anywhere a tolerance is
expected an ``int``, a ``Fraction`` or a string such as ``"1/4"`` is accepted.
"""

from ._shadowlab import (
    ChainComponents,
    ChainGraph,
    Point,
    PseudoOrbit,
    RunReport,
    System,
    VerificationReport,
    chain_recurrent_vertices,
    cr_localization,
    derive_limit_schedule,
    find_chain,
    find_shadows,
    from_orbit,
    limit_shadow_construct,
    odometer_shadow_modulus,
    pointed_gamma,
    refinement_check,
    run_experiment,
    scc,
    shadow_defect,
    slimit_counterexample,
    thick_shadow_report,
    verify_no_shadow,
)

__all__ = [
    "ChainComponents",
    "ChainGraph",
    "Point",
    "PseudoOrbit",
    "RunReport",
    "System",
    "VerificationReport",
    "chain_recurrent_vertices",
    "cr_localization",
    "derive_limit_schedule",
    "find_chain",
    "find_shadows",
    "from_orbit",
    "limit_shadow_construct",
    "odometer_shadow_modulus",
    "pointed_gamma",
    "refinement_check",
    "run_experiment",
    "scc",
    "shadow_defect",
    "slimit_counterexample",
    "thick_shadow_report",
    "verify_no_shadow",
]
