"""Truncated univariate power series over exact rationals or mpmath floats.

A series of order N stores coefficients c_0..c_N; binary operations
truncate to the smaller order.  The coefficient field is duck-typed:
Fraction gives exact arithmetic, mpmath.mpf gives high-precision
floating point (precision controlled by the ambient mpmath context).
Rational constants are injected as Fraction and coerce cleanly into
either field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadConstantTerm, DivByNonUnit, NotReversible

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients c_0..c_N of a power series truncated at order N."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n <= self.order else _ZERO

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.order:
            return self
        return TruncSeries(self.coeffs[: order + 1])

    def map(self, fn) -> "TruncSeries":
        return TruncSeries(tuple(fn(c) for c in self.coeffs))


def series(coeffs, order: int | None = None) -> TruncSeries:
    """Build a series from an iterable, optionally zero-padded to `order`.

    Padding uses the zero of the coefficient field when one can be derived.
    """
    cs = list(coeffs)
    if order is not None:
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        zero = cs[0] * 0 if cs else _ZERO
        cs.extend([zero] * (order + 1 - len(cs)))
    return TruncSeries(tuple(cs))


def constant(c, order: int) -> TruncSeries:
    return series([c], order)


def identity(order: int) -> TruncSeries:
    return series([_ZERO, _ONE], order)


def _common(a: TruncSeries, b: TruncSeries):
    n = min(a.order, b.order)
    return n, a.coeffs[: n + 1], b.coeffs[: n + 1]


def add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    n, ca, cb = _common(a, b)
    return TruncSeries(tuple(x + y for x, y in zip(ca, cb)))


def sub(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    # x + (-y) rather than x - y: Fraction.__sub__(mpf) is not supported
    # by mpmath while Fraction.__add__(mpf) is, and mixed-field series
    # (Fraction zeros inside float series) do occur.
    n, ca, cb = _common(a, b)
    return TruncSeries(tuple(x + (-y) for x, y in zip(ca, cb)))


def scale(a: TruncSeries, c) -> TruncSeries:
    return a.map(lambda x: c * x)


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    n, ca, cb = _common(a, b)
    out = [_ZERO] * (n + 1)
    for i, x in enumerate(ca):
        if x == 0:
            continue
        for j in range(n + 1 - i):
            y = cb[j]
            if y == 0:
                continue
            out[i + j] += x * y
    return TruncSeries(tuple(out))


def div(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy quotient; requires b(0) != 0."""
    n, ca, cb = _common(a, b)
    if cb[0] == 0:
        raise DivByNonUnit("division by a series with zero constant term")
    inv0 = 1 / cb[0]
    out = []
    for m in range(n + 1):
        acc = ca[m]
        for i in range(m):
            y = out[i] * cb[m - i]
            if y != 0:
                acc = acc + (-y)
        out.append(acc * inv0)
    return TruncSeries(tuple(out))


def arith(a: TruncSeries, b: TruncSeries, op: str) -> TruncSeries:
    if op == "add":
        return add(a, b)
    if op == "sub":
        return sub(a, b)
    if op == "mul":
        return mul(a, b)
    if op == "div":
        return div(a, b)
    raise ValueError(f"unknown op {op!r}")


def deriv(a: TruncSeries) -> TruncSeries:
    if a.order == 0:
        return TruncSeries((_ZERO,))
    return TruncSeries(tuple((i + 1) * c for i, c in enumerate(a.coeffs[1:])))


def integrate(a: TruncSeries, const=_ZERO) -> TruncSeries:
    out = [const]
    out.extend(Fraction(1, i + 1) * c for i, c in enumerate(a.coeffs))
    return TruncSeries(tuple(out[: a.order + 2]))


def _field_zero(coeffs):
    acc = _ZERO
    for c in coeffs:
        acc = acc + c * 0
    return acc


def exp(f: TruncSeries) -> TruncSeries:
    """Formal exponential; requires f(0) = 0."""
    if f.coeffs[0] != 0:
        raise BadConstantTerm("exp needs zero constant term")
    n = f.order
    out = [1 + _field_zero(f.coeffs)]  # one in the coefficient field
    for m in range(1, n + 1):
        acc = _ZERO
        for k in range(1, m + 1):
            fk = f.coeffs[k]
            if fk == 0:
                continue
            acc += k * fk * out[m - k]
        out.append(Fraction(1, m) * acc)
    return TruncSeries(tuple(out))


def log(f: TruncSeries) -> TruncSeries:
    """Formal logarithm; requires f(0) = 1."""
    if f.coeffs[0] != 1:
        raise BadConstantTerm("log needs constant term 1")
    return integrate(div(deriv(f), f), _ZERO).truncate(f.order)


def pow_(f: TruncSeries, e) -> TruncSeries:
    """f**e for rational (or field-scalar) e; requires f(0) = 1.

    Integer powers of non-unit series are handled by repeated multiplication.
    """
    if isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1):
        k = int(e)
        if k >= 0:
            acc = constant(1 + _field_zero(f.coeffs), f.order)
            base = f
            while k:
                if k & 1:
                    acc = mul(acc, base)
                base = mul(base, base)
                k >>= 1
            return acc
    if f.coeffs[0] != 1:
        raise BadConstantTerm("pow needs constant term 1 (or an integer exponent >= 0)")
    return exp(scale(log(f), e))


def elem(f: TruncSeries, op: str, e=None) -> TruncSeries:
    if op == "exp":
        return exp(f)
    if op == "log":
        return log(f)
    if op == "pow":
        if e is None:
            raise ValueError("pow needs an exponent")
        return pow_(f, e)
    raise ValueError(f"unknown op {op!r}")


def compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """f(g(z)) to the common order; requires g(0) = 0."""
    if g.coeffs[0] != 0:
        raise BadConstantTerm("compose needs g(0) = 0")
    n = min(f.order, g.order)
    gt = g.truncate(n)
    acc = constant(f[n], n)
    for i in range(n - 1, -1, -1):
        acc = mul(acc, gt)
        acc = TruncSeries((acc.coeffs[0] + f[i],) + acc.coeffs[1:])
    return acc


def reversion(f: TruncSeries) -> TruncSeries:
    """Compositional inverse g with f(g) = g(f) = z, via Newton order-doubling.

    Requires f(0) = 0 and f'(0) != 0.
    """
    if f.coeffs[0] != 0 or f.order < 1 or f.coeffs[1] == 0:
        raise NotReversible("reversion needs f(0) = 0 and f'(0) != 0")
    n = f.order
    inv_f1 = 1 / f.coeffs[1]
    g = TruncSeries((inv_f1 * 0, inv_f1))
    fp = series(deriv(f).coeffs, n)
    order = 1
    while order < n:
        order = min(2 * order + 1, n)
        g = series(g.coeffs, order)
        err = sub(compose(f.truncate(order), g), identity(order))
        corr = div(err, compose(fp.truncate(order), g))
        g = sub(g, corr)
    return g


def lagrange_reversion(f: TruncSeries) -> TruncSeries:
    """Reversion by Lagrange inversion: [z^n] g = (1/n) [z^{n-1}] (z/f)^n.

    Independent cross-check oracle for `reversion`.
    """
    if f.coeffs[0] != 0 or f.order < 1 or f.coeffs[1] == 0:
        raise NotReversible("reversion needs f(0) = 0 and f'(0) != 0")
    n = f.order
    shifted = TruncSeries(f.coeffs[1:] + (_ZERO,))  # f/z, a unit series
    u = div(constant(_ONE + f.coeffs[1] * 0, n), shifted)  # z/f
    out = [_ZERO]
    p = constant(_ONE + f.coeffs[1] * 0, n)
    for m in range(1, n + 1):
        p = mul(p, u)
        out.append(Fraction(1, m) * p[m - 1])
    return TruncSeries(tuple(out))


def binom_frac(a: Fraction, k: int) -> Fraction:
    """Generalized binomial coefficient C(a, k) for rational a, integer k >= 0."""
    if k < 0:
        return _ZERO
    num = _ONE
    for i in range(k):
        num *= a - i
    return num / _fact(k)


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def tree_exponent_poly(nu: int, order: int) -> TruncSeries:
    """Q_nu(z) = sum_{k=1..nu-1} C(nu-1, k) (-z)^k / k (empty for nu = 1)."""
    coeffs = [_ZERO] * (order + 1)
    for k in range(1, nu):
        if k > order:
            break
        coeffs[k] = Fraction((-1) ** k, k) * binom_frac(Fraction(nu - 1), k)
    return TruncSeries(tuple(coeffs))


@dataclass(frozen=True)
class TreeFunctionFamily:
    """T_nu = compositional inverse of z * exp(Q_nu(z)); T_1 is the identity."""

    nu: int
    order: int
    series: TruncSeries


def tree_function(nu: int, order: int) -> TreeFunctionFamily:
    if nu < 1 or order < 1:
        raise ValueError("need nu >= 1 and order >= 1")
    q = tree_exponent_poly(nu, order)
    inv = mul(identity(order), exp(q))
    return TreeFunctionFamily(nu=nu, order=order, series=reversion(inv))
