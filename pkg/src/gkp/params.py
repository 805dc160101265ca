"""Parameter tuples, PDE-type classification, and the parameter involutions.

The recurrence

    |n k| = (alpha*n + beta*k + gamma)   |n-1, k|
          + (alpha'*n + beta'*k + gamma')|n-1, k-1|  + delta_{n0} delta_{k0}

is governed by six exact rational coefficients.  Which of beta, beta'
vanish splits the associated PDEs into four types; Type I admits a
reduced parameterization (r, r', s, s', sigma) after rescaling both
variables.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import NotTypeI
from .rationals import rat_str, to_fraction


@dataclass(frozen=True)
class ParamTuple:
    """The six recurrence coefficients (alpha, beta, gamma; alpha', beta', gamma')."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    alpha_p: Fraction
    beta_p: Fraction
    gamma_p: Fraction

    @classmethod
    def of(cls, alpha, beta, gamma, alpha_p, beta_p, gamma_p) -> "ParamTuple":
        return cls(*(to_fraction(v) for v in (alpha, beta, gamma, alpha_p, beta_p, gamma_p)))

    @classmethod
    def from_strings(cls, items) -> "ParamTuple":
        vals = list(items)
        if len(vals) != 6:
            raise ValueError(f"expected 6 rationals, got {len(vals)}")
        return cls.of(*vals)

    def as_tuple(self) -> tuple:
        return (self.alpha, self.beta, self.gamma, self.alpha_p, self.beta_p, self.gamma_p)

    def to_strings(self) -> list:
        """Serialize as the 6-element array of 'p/q' strings, order (a,b,g,a',b',g')."""
        return [rat_str(v) for v in self.as_tuple()]

    def __str__(self) -> str:
        a, b, g, ap, bp, gp = self.to_strings()
        return f"({a},{b},{g};{ap},{bp},{gp})"


class RecType(Enum):
    """PDE type by the zero-pattern of (beta, beta')."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


def classify(p: ParamTuple) -> RecType:
    """Type I: beta*beta' != 0; II: beta' = 0 only; III: beta = 0 only; IV: both zero."""
    if p.beta != 0:
        return RecType.I if p.beta_p != 0 else RecType.II
    return RecType.III if p.beta_p != 0 else RecType.IV


@dataclass(frozen=True)
class TypeIDerived:
    """Reduced Type-I parameters: r = a/b, r' = a'/b', s = (a+g)/b, s' = -1-(a'+g')/b'."""

    r: Fraction
    rp: Fraction
    s: Fraction
    sp: Fraction
    sigma: int  # sgn(beta * beta'), +1 or -1


def derived_type_i(p: ParamTuple) -> TypeIDerived:
    if classify(p) is not RecType.I:
        raise NotTypeI(f"beta*beta' = 0 for {p}")
    return TypeIDerived(
        r=p.alpha / p.beta,
        rp=p.alpha_p / p.beta_p,
        s=(p.alpha + p.gamma) / p.beta,
        sp=Fraction(-1) - (p.alpha_p + p.gamma_p) / p.beta_p,
        sigma=1 if p.beta * p.beta_p > 0 else -1,
    )


class InvolutionKind(Enum):
    """The five tabulated triangle involutions.

    STAR            |n k| -> |n n-k|
    SIGNED_STAR     |n k| -> (-1)^n |n n-k|
    ALT_K           |n k| -> (-1)^k |n k|
    ALT_N_MINUS_K   |n k| -> (-1)^(n-k) |n k|
    ALT_N           |n k| -> (-1)^n |n k|
    """

    STAR = "star"
    SIGNED_STAR = "signed-star"
    ALT_K = "alt-k"
    ALT_N_MINUS_K = "alt-n-minus-k"
    ALT_N = "alt-n"


def apply_involution(kind: InvolutionKind, p: ParamTuple) -> ParamTuple:
    """Parameter action of each involution; applying twice returns p.

    The index-reversal rows follow from rewriting the recurrence for the
    transformed numbers; the sign rows just flip one or both coefficient
    blocks.  SIGNED_STAR composes the plain reversal with the all-sign
    flip, which is the unique sign-twisted reversal that squares to the
    identity (the (-1)^k variant squares to the all-sign flip instead).
    """
    a, b, g, ap, bp, gp = p.as_tuple()
    if kind is InvolutionKind.STAR:
        return ParamTuple(ap + bp, -bp, gp, a + b, -b, g)
    if kind is InvolutionKind.SIGNED_STAR:
        return ParamTuple(-ap - bp, bp, -gp, -a - b, b, -g)
    if kind is InvolutionKind.ALT_K:
        return ParamTuple(a, b, g, -ap, -bp, -gp)
    if kind is InvolutionKind.ALT_N_MINUS_K:
        return ParamTuple(-a, -b, -g, ap, bp, gp)
    if kind is InvolutionKind.ALT_N:
        return ParamTuple(-a, -b, -g, -ap, -bp, -gp)
    raise ValueError(f"unknown involution {kind!r}")


def involution_sign(kind: InvolutionKind, n: int, k: int) -> int:
    """Sign the involution attaches to entry (n, k) of the source triangle."""
    if kind is InvolutionKind.STAR:
        return 1
    if kind is InvolutionKind.SIGNED_STAR:
        return -1 if n % 2 else 1
    if kind is InvolutionKind.ALT_K:
        return -1 if k % 2 else 1
    if kind is InvolutionKind.ALT_N_MINUS_K:
        return -1 if (n - k) % 2 else 1
    if kind is InvolutionKind.ALT_N:
        return -1 if n % 2 else 1
    raise ValueError(f"unknown involution {kind!r}")


def involution_reverses(kind: InvolutionKind) -> bool:
    """Whether the involution sends (n, k) to (n, n-k)."""
    return kind in (InvolutionKind.STAR, InvolutionKind.SIGNED_STAR)
