"""Exact-arithmetic engine for the six-parameter GKP recurrence.

Triangles, row generating polynomials, EGF closed forms, residue-limit
row-polynomial evaluation, parameter degeneracies, and OEIS cross-checks.
"""

__version__ = "0.1.0"

from .params import (  # noqa: F401
    InvolutionKind,
    ParamTuple,
    RecType,
    TypeIDerived,
    apply_involution,
    classify,
    derived_type_i,
)
