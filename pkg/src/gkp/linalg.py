"""Exact rational linear algebra: RREF solve with particular + nullspace."""
from __future__ import annotations

from fractions import Fraction

from .errors import Infeasible

F0 = Fraction(0)
F1 = Fraction(1)


def rref(rows: list) -> tuple:
    """Reduce augmented rows [a_1..a_m | b] in place; return (matrix, pivot_cols).

    Raises Infeasible on an inconsistent row (0 = nonzero).
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) - 1
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = F1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [v - factor * w for v, w in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    for i in range(row, len(m)):
        if m[i][ncols] != 0:
            raise Infeasible("inconsistent linear system")
    return m[:row], pivots


def solve_affine(rows: list) -> tuple:
    """(particular, nullspace_basis, rank) for the augmented system rows.

    particular sets all free variables to 0; basis vectors span the
    solution space of the homogeneous part.
    """
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0]) - 1
    reduced, pivots = rref(rows)
    particular = [F0] * ncols
    for r, col in zip(reduced, pivots):
        particular[col] = r[ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [F0] * ncols
        vec[fc] = F1
        for r, col in zip(reduced, pivots):
            vec[col] = -r[fc]
        basis.append(vec)
    return particular, basis, len(pivots)


def rank_of(rows: list) -> int:
    """Rank of the coefficient part (ignores the augmented column consistency)."""
    if not rows:
        return 0
    stripped = [list(r[:-1]) + [F0] for r in rows]
    reduced, pivots = rref(stripped)
    return len(pivots)
