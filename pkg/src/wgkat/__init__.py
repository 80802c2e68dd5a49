"""Decide bisimilarity of weighted GKAT programs over exact semirings."""

from .semiring import (
    INF,
    NEG_INF,
    SEMIRINGS,
    Semiring,
    SemiringError,
    get_semiring,
)
from .syntax import Signature, atoms, parse, pretty, size_bound
from .semantics import derivative, ee, explore
from .equivalence import bisimilar, decide, equivalent, normal_form

__all__ = [
    "INF",
    "NEG_INF",
    "SEMIRINGS",
    "Semiring",
    "SemiringError",
    "Signature",
    "atoms",
    "bisimilar",
    "decide",
    "derivative",
    "ee",
    "equivalent",
    "explore",
    "get_semiring",
    "normal_form",
    "parse",
    "pretty",
    "size_bound",
]
