"""Symmetric polynomial systems over finite fields: arithmetic, counting and verification."""

from .fields import QQ, CapExceeded, FieldSpec, field_of_order, make_field, normal_element
from .multipoly import MPoly, PolyRing, elementary, from_elementary, to_elementary
from .unipoly import Lambda, UniPoly, factor, pattern, subdisc, subresultant
from .systems import SymmetricSystem, check_assumption
from .counting import BoundParams, Predicate, count_points
from .patterns import PatternFrame, PolyFamily, census
from .rscodes import RSCode, TailPoly, bounds_report, good_zero_search

__version__ = "0.1.0"

__all__ = [
    "QQ", "CapExceeded", "FieldSpec", "field_of_order", "make_field", "normal_element",
    "MPoly", "PolyRing", "elementary", "from_elementary", "to_elementary",
    "Lambda", "UniPoly", "factor", "pattern", "subdisc", "subresultant",
    "SymmetricSystem", "check_assumption",
    "BoundParams", "Predicate", "count_points",
    "PatternFrame", "PolyFamily", "census",
    "RSCode", "TailPoly", "bounds_report", "good_zero_search",
]
