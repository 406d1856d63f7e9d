"""Finite-stage computations on inductive systems of building blocks A(n, (a+1)n)."""

from ._razak import (
    BlockElement,
    BuildingBlock,
    ConnectingMap,
    RazakError,
    Tower,
    Trace,
    apply_map,
    build_successor,
    build_tower,
    canonical_h,
    certify_no_projection,
    eig_density,
    eval_trace,
    herm_spectrum,
    make_block,
    psi_embed,
    pushforward_trace,
    random_element,
    run_cli,
    simplicity_witness,
    trace_norm,
    trace_unique_rate,
    validate_element,
    zero_element,
)

__all__ = [
    "BlockElement",
    "BuildingBlock",
    "ConnectingMap",
    "RazakError",
    "Tower",
    "Trace",
    "apply_map",
    "build_successor",
    "build_tower",
    "canonical_h",
    "certify_no_projection",
    "eig_density",
    "eval_trace",
    "herm_spectrum",
    "make_block",
    "psi_embed",
    "pushforward_trace",
    "random_element",
    "run_cli",
    "simplicity_witness",
    "trace_norm",
    "trace_unique_rate",
    "validate_element",
    "zero_element",
]
