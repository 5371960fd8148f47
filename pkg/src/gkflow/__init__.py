"""Generalized Greene-Kleitman duality for labelled posets, computed by min-cost flow."""

from .corollaries import build_classical_instance, build_localized_instance
from .network import build_network
from .poset import (
    CompatRelation,
    Instance,
    Labeling,
    Partition,
    Poset,
    asc,
    classify_sequence,
    conjugate,
    desc,
    semi_overlapping,
    transitive_closure,
    validate_instance,
)
from .solver import DualityResult, run, solve

__all__ = [
    "CompatRelation",
    "DualityResult",
    "Instance",
    "Labeling",
    "Partition",
    "Poset",
    "asc",
    "build_classical_instance",
    "build_localized_instance",
    "build_network",
    "classify_sequence",
    "conjugate",
    "desc",
    "run",
    "semi_overlapping",
    "solve",
    "transitive_closure",
    "validate_instance",
]
