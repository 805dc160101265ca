"""Detection and closed forms for parameter degeneracies.

Distinct parameter tuples can generate identical triangles.  Four families
exhaust the phenomenon: a trivial kernel, a binomial family scaled by a
falling product, a pure diagonal product, and a left-column product.
Detection is by exact pattern solving on the six coefficients; comparing
triangles entrywise (`same_numbers`) is kept as the independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .errors import NotDegenerate
from .params import ParamTuple
from .exact import triangle
from .rationals import rat_str

F0 = Fraction(0)
F1 = Fraction(1)


class DegTag(Enum):
    TRIVIAL_KERNEL = "trivial-kernel"
    BINOMIAL_SCALED = "binomial-scaled"
    DIAGONAL_PRODUCT = "diagonal-product"
    LEFT_COLUMN = "left-column"
    NON_DEGENERATE = "non-degenerate"


@dataclass(frozen=True)
class DegClass:
    """Degeneracy class tag plus the invariant parameters shared by the family.

    BINOMIAL_SCALED keeps (alpha, G=a+g, H=a'+b'+g'); DIAGONAL_PRODUCT keeps
    (L=a'+b', gamma'); LEFT_COLUMN keeps (M=a+g, alpha).  The remaining
    parameters are free within each family and never change the triangle.
    """

    tag: DegTag
    invariants: tuple  # of (name, Fraction)

    def invariant(self, name: str) -> Fraction:
        for key, val in self.invariants:
            if key == name:
                return val
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {"tag": self.tag.value, "invariants": {k: rat_str(v) for k, v in self.invariants}}


def degeneracy_class(p: ParamTuple) -> DegClass:
    """Classify, in the documented precedence, which degenerate family p sits in.

    Precedence: TRIVIAL_KERNEL > BINOMIAL_SCALED > DIAGONAL_PRODUCT > LEFT_COLUMN.
    """
    a, b, g, ap, bp, gp = p.as_tuple()
    G = a + g
    H = ap + bp + gp
    if G == 0 and H == 0:
        return DegClass(DegTag.TRIVIAL_KERNEL, ())
    if G != 0:
        rho = (b - a) / G
        if ap == -rho * H and bp == rho * H + a * H / G:
            return DegClass(
                DegTag.BINOMIAL_SCALED,
                (("alpha", a), ("G", G), ("H", H)),
            )
    if b == -a and g == -a:
        return DegClass(
            DegTag.DIAGONAL_PRODUCT,
            (("L", ap + bp), ("gamma_p", gp)),
        )
    if ap == 0 and gp == -bp:
        return DegClass(
            DegTag.LEFT_COLUMN,
            (("M", a + g), ("alpha", a)),
        )
    return DegClass(DegTag.NON_DEGENERATE, ())


def degenerate_value(c: DegClass, n: int, k: int) -> Fraction:
    """Closed-form |n k| for a degenerate class, exact."""
    if c.tag is DegTag.NON_DEGENERATE:
        raise NotDegenerate("no closed form for a non-degenerate tuple")
    if n < 0 or k < 0 or k > n:
        raise IndexError(f"need 0 <= k <= n, got n={n}, k={k}")
    if c.tag is DegTag.TRIVIAL_KERNEL:
        return F1 if (n, k) == (0, 0) else F0
    if c.tag is DegTag.BINOMIAL_SCALED:
        a, G, H = (c.invariant(x) for x in ("alpha", "G", "H"))
        prod = F1
        for j in range(n):
            prod *= G + a * j
        ratio = F1 if k == 0 else (H / G) ** k
        return comb(n, k) * ratio * prod
    if c.tag is DegTag.DIAGONAL_PRODUCT:
        if k != n:
            return F0
        L, gp = c.invariant("L"), c.invariant("gamma_p")
        prod = F1
        for j in range(1, n + 1):
            prod *= gp + L * j
        return prod
    # LEFT_COLUMN
    if k != 0:
        return F0
    M, a = c.invariant("M"), c.invariant("alpha")
    prod = F1
    for j in range(n):
        prod *= M + a * j
    return prod


def same_numbers(p1: ParamTuple, p2: ParamTuple, depth: int) -> bool:
    """Entrywise-exact triangle comparison, the oracle behind the class predicates."""
    return triangle(p1, depth).rows == triangle(p2, depth).rows


def sample_family_member(c: DegClass, free: dict) -> ParamTuple:
    """Construct a tuple in the family of c with the given free parameters.

    Free parameters by tag: BINOMIAL_SCALED needs 'rho'; DIAGONAL_PRODUCT
    needs 'alpha' and 'alpha_p'; LEFT_COLUMN needs 'beta' and 'beta_p';
    TRIVIAL_KERNEL needs 'alpha', 'beta', 'alpha_p', 'beta_p'.
    """
    fr = {k: Fraction(v) for k, v in free.items()}
    if c.tag is DegTag.BINOMIAL_SCALED:
        a, G, H = (c.invariant(x) for x in ("alpha", "G", "H"))
        rho = fr["rho"]
        return ParamTuple(a, a + rho * G, G - a, -rho * H, rho * H + a * H / G, H - a * H / G)
    if c.tag is DegTag.DIAGONAL_PRODUCT:
        L, gp = c.invariant("L"), c.invariant("gamma_p")
        a, ap = fr["alpha"], fr["alpha_p"]
        return ParamTuple(a, -a, -a, -ap, L + ap, gp)
    if c.tag is DegTag.LEFT_COLUMN:
        M, a = c.invariant("M"), c.invariant("alpha")
        b, bp = fr["beta"], fr["beta_p"]
        return ParamTuple(a, b, M - a, F0, bp, -bp)
    if c.tag is DegTag.TRIVIAL_KERNEL:
        a, b, ap, bp = fr["alpha"], fr["beta"], fr["alpha_p"], fr["beta_p"]
        return ParamTuple(a, b, -a, ap, bp, -ap - bp)
    raise NotDegenerate("no family to sample from")
