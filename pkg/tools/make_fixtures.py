#!/usr/bin/env python3
"""Regenerate the packaged OEIS b-file fixtures from independent formulas.

Every fixture is computed WITHOUT the six-parameter recurrence so that the
offline verification suite still cross-checks two genuinely different
routes.  Sources per sequence:

  A007318  binomial coefficients           comb(n, k)
  A132393  Stirling cycle numbers          coefficients of x(x+1)...(x+n-1)
  A008277  Stirling subset numbers         inclusion-exclusion sum / k!
  A019538  surjection counts               inclusion-exclusion sum
  A008292  Eulerian, 1-based               explicit alternating sum
  A173018  Eulerian, 0-based               explicit alternating sum
  A008279  falling factorials (injections) n! / (n-k)!
  A094587  permutation coefficients        n! / k!
  A008297  Lah numbers (signed)            (-1)^n n!/k! C(n-1, k-1)
  A105278  Lah numbers (unsigned)          n!/k! C(n-1, k-1)
  A008517  second-order Eulerian           solved from the Stirling-subset
           identity {x over x-n} = sum_k T(n,k) C(x+n-1-k, 2n), validated
           against brute-force Stirling-permutation descent counts (n <= 6)
           and the (2n-1)!! row sums.

Run from the repository root:  python tools/make_fixtures.py
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial
from pathlib import Path

DEPTH = 12
OUT = Path(__file__).resolve().parent.parent / "src" / "gkp" / "fixtures"


def stirling_subset(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    total = sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))
    q, r = divmod(total, factorial(k))
    assert r == 0
    return q


def surjections(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))


def eulerian(n: int, k: int) -> int:
    # number of permutations of n with k descents
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k >= n:
        return 0
    return sum((-1) ** j * comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 1))


def stirling_cycle_row(n: int) -> list:
    # x (x+1) ... (x+n-1) expanded; canonical definition of the cycle numbers
    coeffs = [1]
    for j in range(n):
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d] += c * j
            nxt[d + 1] += c
        coeffs = nxt
    return coeffs  # coeffs[k] = c(n, k)


def stirling_permutations(n: int):
    """All Stirling permutations of order n (pairs 11..nn, inner entries larger)."""
    if n == 0:
        yield ()
        return
    for base in stirling_permutations(n - 1):
        for pos in range(len(base) + 1):
            yield base[:pos] + (n, n) + base[pos:]


def second_order_eulerian_bruteforce(n: int) -> list:
    counts = [0] * max(n, 1)
    for perm in stirling_permutations(n):
        desc = sum(1 for i in range(len(perm) - 1) if perm[i] > perm[i + 1])
        counts[desc] += 1
    return counts


def second_order_eulerian_row(n: int) -> list:
    """Row [T(n,0), ..., T(n,n-1)] from the Stirling-subset connection."""
    rows = []
    for x in range(n + 1, 3 * n + 2):
        coeff = [Fraction(comb(x + n - 1 - k, 2 * n)) for k in range(n)]
        rhs = Fraction(stirling_subset(x, x - n))
        rows.append(coeff + [rhs])
    from gkp.linalg import solve_affine

    particular, basis, rank = solve_affine(rows)
    assert rank == n and not basis, f"underdetermined at n={n}"
    out = [int(v) for v in particular]
    assert all(v == int(v) for v in particular)
    dfact = 1
    for j in range(1, 2 * n, 2):
        dfact *= j
    assert sum(out) == dfact, f"row sum != (2n-1)!! at n={n}"
    return out


SEQUENCES = {
    "A007318": {
        "layout": (0, 0, 0),
        "rows": lambda: [[comb(n, k) for k in range(n + 1)] for n in range(DEPTH + 1)],
        "comment": "binomial coefficients C(n,k), rows n=0..%d" % DEPTH,
    },
    "A132393": {
        "layout": (0, 0, 0),
        "rows": lambda: [stirling_cycle_row(n)[: n + 1] + [0] * max(0, n + 1 - len(stirling_cycle_row(n))) for n in range(DEPTH + 1)],
        "comment": "unsigned Stirling cycle numbers, rows n=0..%d" % DEPTH,
    },
    "A008277": {
        "layout": (1, 1, 0),
        "rows": lambda: [[stirling_subset(n, k) for k in range(1, n + 1)] for n in range(1, DEPTH + 1)],
        "comment": "Stirling subset numbers S(n,k), rows n=1..%d, k=1..n" % DEPTH,
    },
    "A019538": {
        "layout": (1, 1, 0),
        "rows": lambda: [[surjections(n, k) for k in range(1, n + 1)] for n in range(1, DEPTH + 1)],
        "comment": "surjection counts k! S(n,k), rows n=1..%d, k=1..n" % DEPTH,
    },
    "A008292": {
        "layout": (1, 0, -1),
        "rows": lambda: [[eulerian(n, k) for k in range(n)] for n in range(1, DEPTH + 1)],
        "comment": "Eulerian numbers, rows n=1..%d with k=1..n (1-based columns)" % DEPTH,
    },
    "A173018": {
        "layout": (0, 0, 0),
        "rows": lambda: [[eulerian(n, k) for k in range(n + 1)] for n in range(DEPTH + 1)],
        "comment": "Eulerian numbers, full rows n=0..%d, k=0..n" % DEPTH,
    },
    "A008279": {
        "layout": (0, 0, 0),
        "rows": lambda: [[factorial(n) // factorial(n - k) for k in range(n + 1)] for n in range(DEPTH + 1)],
        "comment": "falling factorials n!/(n-k)!, rows n=0..%d" % DEPTH,
    },
    "A094587": {
        "layout": (0, 0, 0),
        "rows": lambda: [[factorial(n) // factorial(k) for k in range(n + 1)] for n in range(DEPTH + 1)],
        "comment": "permutation coefficients n!/k!, rows n=0..%d" % DEPTH,
    },
    "A008297": {
        "layout": (1, 1, 0),
        "rows": lambda: [
            [(-1) ** n * (factorial(n) // factorial(k)) * comb(n - 1, k - 1) for k in range(1, n + 1)]
            for n in range(1, DEPTH + 1)
        ],
        "comment": "Lah numbers (signed), rows n=1..%d, k=1..n" % DEPTH,
    },
    "A105278": {
        "layout": (1, 1, 0),
        "rows": lambda: [
            [(factorial(n) // factorial(k)) * comb(n - 1, k - 1) for k in range(1, n + 1)]
            for n in range(1, DEPTH + 1)
        ],
        "comment": "Lah numbers (unsigned), rows n=1..%d, k=1..n" % DEPTH,
    },
    "A008517": {
        "layout": (1, 0, -1),
        "rows": lambda: [second_order_eulerian_row(n) for n in range(1, DEPTH + 1)],
        "comment": "second-order Eulerian numbers, rows n=1..%d (1-based columns)" % DEPTH,
    },
}


def main() -> None:
    for n in range(1, 7):
        assert second_order_eulerian_row(n) == second_order_eulerian_bruteforce(n), n
    print("second-order Eulerian identity validated against brute force (n <= 6)")
    OUT.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for anum, spec in sorted(SEQUENCES.items()):
        rows = spec["rows"]()
        flat = [v for row in rows for v in row]
        lines = [f"# {anum} fixture: {spec['comment']}", "# generated by tools/make_fixtures.py"]
        lines.extend(f"{i} {v}" for i, v in enumerate(flat))
        name = f"b{anum[1:]}.txt"
        (OUT / name).write_text("\n".join(lines) + "\n")
        ro, ko, ke = spec["layout"]
        manifest[anum] = {"file": name, "row_offset": ro, "k_offset": ko, "k_end_offset": ke}
        print(f"{anum}: {len(flat)} values -> {name}")
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"manifest: {len(manifest)} sequences")


if __name__ == "__main__":
    main()
