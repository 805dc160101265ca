"""Numeric evaluation of the residue-limit row-polynomial formulas.

P_n(x0) is obtained as the n-th derivative of a bracketed function at the
evaluation point, computed by expanding everything as a truncated series
in the shift t = z - x0 over arbitrary-precision floats and reading off
n! * [t^n].  The ratio ((z-x0)/(Ginv(z)-Ginv(x0)))^(n+1) is a unit series
in t because (Ginv)'(x0) != 0 throughout the validity window.

For Type I with integer r >= 0 an alternative route goes through the
truncated power part of the inverse series (its log term stripped), with
the logarithm re-centered as log(1 + u(t)); both routes must agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from . import series as S
from .egf import GenSeries, ginv_local_factor
from .errors import DomainError, NotApplicable, PrecisionLoss
from .params import ParamTuple, RecType, TypeIDerived, classify, derived_type_i

_GUARD_TERMS = 10  # extra t-orders carried past the n needed


@dataclass(frozen=True)
class ResidueJob:
    """One evaluation of P_n at rational x0 in (0,1), Types I-III only."""

    params: ParamTuple
    n: int
    x0: Fraction
    precision: int | None = None  # decimal digits; default max(50, 10n)

    def working_digits(self) -> int:
        if self.precision is not None:
            return self.precision
        return max(50, 10 * self.n)


@dataclass(frozen=True)
class ResidueResult:
    value: str  # decimal string at working precision
    error_estimate: str
    digits: int

    def as_mpf(self):
        return mpf(self.value)


def q0_series(d: TypeIDerived, order: int) -> GenSeries:
    """Power part of the Type-I inverse series when r is a nonnegative integer.

    Q0(X) = sum_{k in Z0, k != r} sigma^k C(-1-r'+r, k) X^(k-r)/(k-r); the
    excluded index carries the log term whose coefficient normalizes the
    alternative row-polynomial form.
    """
    if not (d.r.denominator == 1 and d.r >= 0):
        raise NotApplicable("the alternative form needs r in {0, 1, 2, ...}")
    a = -1 - d.rp + d.r
    terms = []
    for k in range(order + 1):
        if k == d.r:
            continue
        sgn = 1 if (d.sigma == 1 or k % 2 == 0) else -1
        c = sgn * S.binom_frac(a, k)
        if c:
            terms.append((k - d.r, c / (k - d.r)))
    return GenSeries(terms=tuple(terms), log_coeff=Fraction(0), trunc_order=order)


def row_poly_residue(job: ResidueJob, tol: float = 1e-30) -> ResidueResult:
    """Evaluate P_n(x0) by the limit-of-derivative formula for the job's type.

    Runs at the working precision and again at double precision; the
    difference is the error estimate, and exceeding `tol` (relative)
    raises PrecisionLoss.
    """
    digits = job.working_digits()
    lo = _evaluate(job, digits)
    hi = _evaluate(job, 2 * digits)
    with mp.workdps(2 * digits):
        est = abs(lo - hi) / max(1, abs(hi))
        if est > mpf(tol):
            raise PrecisionLoss(f"estimated relative error {mp.nstr(est, 5)} exceeds {tol}")
        return ResidueResult(value=mp.nstr(hi, 2 * digits), error_estimate=mp.nstr(est, 5), digits=digits)


def row_poly_residue_alt(job: ResidueJob, tol: float = 1e-30) -> ResidueResult:
    """Type-I alternative form routed through the truncated power part.

    Needs r in Z0 and a nonvanishing log coefficient sigma^r C(-1-r'+r, r).
    """
    digits = job.working_digits()
    lo = _evaluate_alt(job, digits)
    hi = _evaluate_alt(job, 2 * digits)
    with mp.workdps(2 * digits):
        est = abs(lo - hi) / max(1, abs(hi))
        if est > mpf(tol):
            raise PrecisionLoss(f"estimated relative error {mp.nstr(est, 5)} exceeds {tol}")
        return ResidueResult(value=mp.nstr(hi, 2 * digits), error_estimate=mp.nstr(est, 5), digits=digits)


def _as_mpf(q: Fraction):
    return mpf(q.numerator) / q.denominator


def _check_point(job: ResidueJob) -> None:
    if not Fraction(0) < job.x0 < Fraction(1):
        raise DomainError("x0 must lie in (0, 1)")
    if job.n < 0:
        raise ValueError("n must be >= 0")


def _ratio_power(p: ParamTuple, base_point, n: int, order: int) -> S.TruncSeries:
    """((t) / (Ginv(base+t) - Ginv(base)))^(n+1) as a unit t-series."""
    g1, U = ginv_local_factor(p, base_point, order)
    if U.coeffs[0] == 0 or g1 == 0:
        raise DomainError("inverse series has vanishing derivative at the point")
    return S.scale(S.pow_(U, -(n + 1)), (1 / g1) ** (n + 1))


def _evaluate(job: ResidueJob, digits: int):
    rec = classify(job.params)
    if rec is RecType.IV:
        raise NotApplicable("Type IV rows come from the product formula, not a residue limit")
    _check_point(job)
    p, n = job.params, job.n
    order = n + _GUARD_TERMS
    with mp.workdps(digits):
        xv = _as_mpf(job.x0)
        a, b, g, ap, bp, gp = (_as_mpf(v) for v in p.as_tuple())
        if rec is RecType.I:
            d = derived_type_i(p)
            X = d.sigma * (bp / b) * xv
            if not 0 < X < 1:
                raise DomainError("rescaled point must lie in (0, 1) for Type I")
            r, rp, s, sp = (_as_mpf(v) for v in (d.r, d.rp, d.s, d.sp))
            eta = s + sp + 1 + rp - r
            kernel = S.mul(
                S.pow_(S.series([mpf(1), 1 / X], order), s - r - 1),
                S.pow_(S.series([mpf(1), d.sigma / (1 + d.sigma * X)], order), -eta),
            )
            kernel = S.scale(kernel, X ** (s - r - 1) * (1 + d.sigma * X) ** (-eta))
            kernel = S.mul(kernel, _ratio_power(p, X, n, order))
            pref = (1 + d.sigma * X) ** (n * (r - rp) + s + sp) / X ** (s + r * n)
            return b**n * pref * factorial(n) * kernel[n]
        if rec is RecType.II:
            kernel = S.mul(
                S.pow_(S.series([mpf(1), 1 / xv], order), g / b - 1),
                S.exp(S.series([mpf(0), gp / b], order)),
            )
            kernel = S.scale(kernel, xv ** (g / b - 1) * mp.exp(gp * xv / b))
            kernel = S.mul(kernel, _ratio_power(p, xv, n, order))
            pref = mp.exp(-((n + 1) * ap + gp) * xv / b) / (b * xv ** (((n + 1) * a + g) / b))
            return pref * factorial(n) * kernel[n]
        # Type III; the z-exponential carries -g/(b'z), matching the contour
        # form (the displayed limit formula flips that sign by a typo).
        recip_dec = S.sub(S.pow_(S.series([mpf(1), 1 / xv], order), -1), S.constant(mpf(1), order))
        kernel = S.mul(
            S.pow_(S.series([mpf(1), 1 / xv], order), gp / bp - 1),
            S.exp(S.scale(recip_dec, -g / (bp * xv))),
        )
        kernel = S.scale(kernel, xv ** (gp / bp - 1) * mp.exp(-g / (bp * xv)))
        kernel = S.mul(kernel, _ratio_power(p, xv, n, order))
        pref = mp.exp(((n + 1) * a + g) / (bp * xv)) / (bp * xv ** (1 + ((n + 1) * ap + gp) / bp))
        return pref * factorial(n) * kernel[n]


def _q0_shift_series(d: TypeIDerived, X, n: int, order: int, digits: int) -> S.TruncSeries:
    """t-series of Q0(X+t) - Q0(X) from the truncated k-sum, to `order`."""
    r_int = int(d.r)
    a = -1 - d.rp + d.r
    # Tail terms decay like X^k (coefficients grow at most polynomially in k):
    # keep going until X^k n^... is far below the working precision.
    kmax = r_int + order + 10
    bound = mpf(10) ** (-(digits + 15))
    coeffs = [mpf(0)] * (order + 1)
    k = 0
    abin = Fraction(1)  # C(a, k), updated incrementally
    while True:
        if k > kmax and abs(_as_mpf(abin)) * X ** (k - r_int) * (k + 2) ** (order + 1) < bound:
            break
        if k != r_int and abin != 0:
            sgn = 1 if (d.sigma == 1 or k % 2 == 0) else -1
            c0 = sgn * _as_mpf(abin) / (k - r_int)
            # [t^m] (X+t)^(k-r) = C(k-r, m) X^(k-r-m)
            bc = mpf(1)
            for m in range(1, order + 1):
                bc = bc * (k - r_int - m + 1) / m
                if bc == 0:
                    break
                coeffs[m] += c0 * bc * X ** (k - r_int - m)
        k += 1
        abin = abin * (a - (k - 1)) / k
        if k > kmax + 2000:
            raise PrecisionLoss("power-part tail did not decay; point too close to 1")
    return S.TruncSeries(tuple(coeffs))


def _evaluate_alt(job: ResidueJob, digits: int):
    p, n = job.params, job.n
    if classify(p) is not RecType.I:
        raise NotApplicable("the alternative form applies to Type I only")
    _check_point(job)
    d = derived_type_i(p)
    if not (d.r.denominator == 1 and d.r >= 0):
        raise NotApplicable("the alternative form needs r in {0, 1, 2, ...}")
    a = -1 - d.rp + d.r
    log_coeff = S.binom_frac(a, int(d.r)) * (1 if (d.sigma == 1 or int(d.r) % 2 == 0) else -1)
    if log_coeff == 0:
        raise NotApplicable("log coefficient vanishes; the inverse series has no log term")
    order = n + _GUARD_TERMS
    with mp.workdps(digits):
        b, bp = _as_mpf(p.beta), _as_mpf(p.beta_p)
        xv = _as_mpf(job.x0)
        X = d.sigma * (bp / b) * xv
        if not 0 < X < 1:
            raise DomainError("rescaled point must lie in (0, 1) for Type I")
        r, rp, s, sp = (_as_mpf(v) for v in (d.r, d.rp, d.s, d.sp))
        eta = s + sp + 1 + rp - r
        cl = _as_mpf(log_coeff)
        dq = _q0_shift_series(d, X, n, order, digits)
        # 1 + u(t) = (1 + t/X) exp(dQ0 / c_log); lam = log(1 + u) has lam(0) = 0
        one_plus_u = S.mul(S.series([mpf(1), 1 / X], order), S.exp(S.scale(dq, 1 / cl)))
        lam = S.log(one_plus_u)
        lam1 = lam.coeffs[1]
        if lam1 == 0:
            raise DomainError("re-centered logarithm is degenerate at the point")
        lam_unit = S.TruncSeries(tuple(c / lam1 for c in lam.coeffs[1:] + (mpf(0),)))
        kernel = S.mul(
            S.pow_(S.series([mpf(1), 1 / X], order), s - r - 1),
            S.pow_(S.series([mpf(1), d.sigma / (1 + d.sigma * X)], order), -eta),
        )
        kernel = S.scale(kernel, X ** (s - r - 1) * (1 + d.sigma * X) ** (-eta))
        kernel = S.mul(kernel, S.scale(S.pow_(lam_unit, -(n + 1)), (1 / lam1) ** (n + 1)))
        sgn_r = 1 if (d.sigma == 1 or (int(d.r) * (n + 1)) % 2 == 0) else -1
        pref = (1 + d.sigma * X) ** (n * (r - rp) + s + sp) / X ** (s + r * n)
        pref = pref * sgn_r * _as_mpf(S.binom_frac(a, int(d.r))) ** (-(n + 1))
        return b**n * pref * factorial(n) * kernel[n]
