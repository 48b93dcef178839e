"""Exact rational polyhedra: simplex LP, Fourier-Motzkin, vertices, containment."""

from .core import EQ, LE, Halfspace, Polytope, frac, frac_str, nonneg_orthant
from .dd import DoubleDescription
from .fm import DEFAULT_ROW_CAP, fm_eliminate
from .geometry import (
    Containment,
    ccw_order,
    check_bounded,
    contains,
    cross_section,
    hull_2d,
    is_empty,
    remove_redundant,
    same_set,
    vertices,
    with_vertices,
)
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LPResult, lp_max_value, lp_solve

__all__ = [
    "EQ", "LE", "Halfspace", "Polytope", "frac", "frac_str", "nonneg_orthant",
    "DoubleDescription", "DEFAULT_ROW_CAP", "fm_eliminate",
    "Containment", "ccw_order", "check_bounded", "contains", "cross_section", "hull_2d",
    "is_empty", "remove_redundant", "same_set", "vertices", "with_vertices",
    "INFEASIBLE", "OPTIMAL", "UNBOUNDED", "LPResult", "lp_max_value", "lp_solve",
]
