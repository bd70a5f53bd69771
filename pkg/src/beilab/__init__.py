"""Binomial edge ideals of graphs: Groebner bases, minimal free resolutions,
regularity of powers, and d-/quadratic-sequence checks over prime fields."""

from .bei import (
    BinomialEdgeIdeal,
    TheoremReport,
    betti_power,
    build_bei,
    reg_power,
    stabilization_probe,
    verify_theorem,
)
from .graph import Graph, make_family
from .groebner import GroebnerBasis, buchberger
from .ideal import Ideal, colon_element, eliminate, ideal_equal, intersect, power
from .poly import DEFAULT_PRIME, FieldElement, MonomialOrder, Polynomial, Ring, bei_ring
from .resolution import BettiTable, BudgetExceeded, koszul_tor_oracle, minimal_resolution, regularity
from .sequences import Poset, PosetSequence, is_d_sequence, is_quadratic_sequence, related_ideals

__all__ = [
    "BettiTable", "BinomialEdgeIdeal", "BudgetExceeded", "DEFAULT_PRIME", "FieldElement", "Graph",
    "GroebnerBasis", "Ideal", "MonomialOrder", "Polynomial", "Poset", "PosetSequence", "Ring",
    "TheoremReport", "bei_ring", "betti_power", "buchberger", "build_bei", "colon_element",
    "eliminate", "ideal_equal", "intersect", "is_d_sequence", "is_quadratic_sequence",
    "koszul_tor_oracle", "make_family", "minimal_resolution", "power", "reg_power", "regularity",
    "related_ideals", "stabilization_probe", "verify_theorem",
]
