"""Exact triangle generation, row polynomials, and the Type-IV closed forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import NotTypeIV
from .params import ParamTuple, RecType, classify
from .rationals import rat_str

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial with exact rational coefficients, index = degree."""

    coeffs: tuple

    @classmethod
    def of(cls, coeffs) -> "Poly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Fraction) -> Fraction:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.of(
            [
                (self.coeffs[i] if i < len(self.coeffs) else ZERO)
                + (other.coeffs[i] if i < len(other.coeffs) else ZERO)
                for i in range(n)
            ]
        )

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(Fraction(-1))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.of([])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly.of(out)

    def scale(self, c: Fraction) -> "Poly":
        return Poly.of([c * a for a in self.coeffs])

    def deriv(self) -> "Poly":
        return Poly.of([i * a for i, a in enumerate(self.coeffs)][1:])

    def to_strings(self) -> list:
        return [rat_str(c) for c in self.coeffs]


@dataclass(frozen=True)
class Triangle:
    """Rows 0..N of the recurrence; row n holds |n 0| .. |n n| (k > n entries are 0)."""

    params: ParamTuple
    rows: tuple

    @property
    def depth(self) -> int:
        return len(self.rows) - 1

    def value(self, n: int, k: int) -> Fraction:
        if n < 0 or k < 0 or k > n:
            return ZERO
        return self.rows[n][k]

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.to_strings(),
            "rows": [[rat_str(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Triangle":
        params = ParamTuple.from_strings(data["params"])
        rows = tuple(tuple(Fraction(v) for v in row) for row in data["rows"])
        return cls(params, rows)


def triangle(p: ParamTuple, depth: int) -> Triangle:
    """Compute rows 0..depth of the recurrence exactly.

    Out-of-range entries (n < 0, k < 0, k > n) are 0; k > n is provable by
    induction from row 0 = [1], so those entries are never stored.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    a, b, g, ap, bp, gp = p.as_tuple()
    rows = [(ONE,)]
    prev = rows[0]
    for n in range(1, depth + 1):
        an_g = a * n + g
        apn_gp = ap * n + gp
        row = []
        for k in range(n + 1):
            left = prev[k] if k < n else ZERO
            diag = prev[k - 1] if k >= 1 else ZERO
            val = ZERO
            if left:
                val += (an_g + b * k) * left
            if diag:
                val += (apn_gp + bp * k) * diag
            row.append(val)
        prev = tuple(row)
        rows.append(prev)
    return Triangle(p, tuple(rows))


def row_poly(t: Triangle, n: int) -> Poly:
    """Row generating polynomial P_n(x) = sum_k |n k| x^k."""
    if not 0 <= n <= t.depth:
        raise IndexError(f"row {n} not in computed range 0..{t.depth}")
    return Poly.of(t.rows[n])


def row_poly_product_type_iv(p: ParamTuple, n: int) -> Poly:
    """P_n(x) = prod_{k=1..n} (k*alpha + gamma + (k*alpha' + gamma') x) for Type IV."""
    if classify(p) is not RecType.IV:
        raise NotTypeIV(f"{p} is not Type IV")
    if n < 0:
        raise ValueError("n must be >= 0")
    out = Poly.of([ONE])
    for k in range(1, n + 1):
        out = out * Poly.of([k * p.alpha + p.gamma, k * p.alpha_p + p.gamma_p])
    return out


@lru_cache(maxsize=None)
def stirling_cycle(n: int, t: int) -> int:
    """Unsigned Stirling numbers of the first kind, c(n,t)=(n-1)c(n-1,t)+c(n-1,t-1)."""
    if n < 0 or t < 0:
        raise ValueError("arguments must be >= 0")
    if n == 0:
        return 1 if t == 0 else 0
    if t == 0:
        return 0
    return (n - 1) * stirling_cycle(n - 1, t) + stirling_cycle(n - 1, t - 1)


def _pow0(base: Fraction, e: int) -> Fraction:
    # 0**0 = 1 by convention; exponents here are always >= 0 when reached.
    if e == 0:
        return ONE
    return base**e


def coeff_type_iv(p: ParamTuple, n: int, k: int) -> Fraction:
    """Type-IV coefficient via the double sum over Stirling cycle numbers.

    |n k| = sum_{t,s} c(n,t) C(t,s) C(n-t,k-s) (a+g)^(t-s) (a'+g')^s a^(n-t+s-k) a'^(k-s),
    with the 0^0 = 1 convention in all four powers.
    """
    if classify(p) is not RecType.IV:
        raise NotTypeIV(f"{p} is not Type IV")
    if not 0 <= k <= n:
        raise IndexError(f"need 0 <= k <= n, got n={n}, k={k}")
    a, _, g, ap, _, gp = p.as_tuple()
    total = ZERO
    for t in range(n + 1):
        c_nt = stirling_cycle(n, t)
        if c_nt == 0:
            continue
        for s in range(k + 1):
            if s > t or k - s > n - t:
                continue
            term = Fraction(c_nt * comb(t, s) * comb(n - t, k - s))
            term *= _pow0(a + g, t - s) * _pow0(ap + gp, s)
            term *= _pow0(a, n - t + s - k) * _pow0(ap, k - s)
            total += term
    return total
