"""Topological public announcement logic."""

from ._core import (
    Formula,
    Model,
    ModelFormatError,
    ParseError,
    UnsupportedOperator,
    axiom_count,
    backward_induction,
    check_axiom,
    interval_example,
    muddy,
    parse,
    reduce,
    run,
)

__all__ = [
    "Formula",
    "Model",
    "ModelFormatError",
    "ParseError",
    "UnsupportedOperator",
    "axiom_count",
    "backward_induction",
    "check_axiom",
    "interval_example",
    "muddy",
    "parse",
    "reduce",
    "run",
]
