"""Pseudo-spectral simulation of the spectrally truncated cubic wave equation
on the d-torus with randomized initial data.

The heavy lifting lives in the compiled extension ``supwave._supwave``; this
package re-exports its public surface.
"""

from ._supwave import (  # noqa: F401
    DistKind,
    DistributionSpec,
    EnsembleSpec,
    ExponentBundle,
    FilterSpec,
    FourierField,
    PhaseState,
    SetMembershipRecord,
    SolverConfig,
    TrajectoryRecord,
    canonical_index,
    chi_profile,
    cubic_term,
    energy,
    evolve,
    free_evolve,
    from_physical,
    lp_norm,
    make_base_pair,
    nonlinear_component,
    pair_norm,
    project_high,
    project_low,
    read_snapshot,
    residual_untruncated,
    sample_pair,
    set_quantities,
    smooth_filter,
    sobolev_norm,
    to_physical,
    validate_exponents,
    write_snapshot,
)

__all__ = [name for name in dir() if not name.startswith("_")]
