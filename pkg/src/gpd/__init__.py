"""Hybrid generic pipe dreams and their exact polynomial invariants."""

from .poly import (
    ContextMismatchError,
    ExactDivisionError,
    ParseError,
    Polynomial,
    Var,
    alphabet,
    parse,
)
from .grid import (
    InvalidDreamError,
    PipeDream,
    Tile,
    connectivity,
    count_dreams,
    crossing_flip,
    enumerate_dreams,
    mirror,
    parse_dream,
    pipe_numbering,
    serialize,
    validate,
    weight,
)
from .schubert import (
    base_case,
    class_of_e,
    compute_by_recurrence,
    double_schubert_oracle,
    generic_polynomial,
    min_extension,
    schubert_sum,
)
from .flux import (
    component_class,
    conservation_check,
    dream_flux_labels,
    flux_grid,
    reconstruct_dream,
    reduced_flux_table,
    variety_equations,
)
from .yangbaxter import cluster_sum, forced_tile, verify_ybe

__all__ = [
    "ContextMismatchError",
    "ExactDivisionError",
    "InvalidDreamError",
    "ParseError",
    "PipeDream",
    "Polynomial",
    "Tile",
    "Var",
    "alphabet",
    "base_case",
    "class_of_e",
    "cluster_sum",
    "component_class",
    "compute_by_recurrence",
    "connectivity",
    "conservation_check",
    "count_dreams",
    "crossing_flip",
    "double_schubert_oracle",
    "dream_flux_labels",
    "enumerate_dreams",
    "flux_grid",
    "forced_tile",
    "generic_polynomial",
    "min_extension",
    "mirror",
    "parse",
    "parse_dream",
    "pipe_numbering",
    "reconstruct_dream",
    "reduced_flux_table",
    "schubert_sum",
    "serialize",
    "validate",
    "variety_equations",
    "verify_ybe",
    "weight",
]
