"""Graded roots, reduced Heegaard Floer homology of Brieskorn spheres, and
surgery obstructions."""

from hfroots.errors import CapExceeded, InvalidInput, StabilizationError
from hfroots.seifert import (
    DeltaSequence,
    DiophantineSolution,
    SeifertParams,
    TauSequence,
    delta_at,
    delta_sequence,
    n0,
    solve_diophantine,
    tau_from_delta,
)
from hfroots.roots import (
    GradedRoot,
    HRedSummary,
    delta_cond_probe,
    h_red,
    merge,
    refine,
    root_from_tau,
    u_power_nonzero,
)

__version__ = "0.1.0"
