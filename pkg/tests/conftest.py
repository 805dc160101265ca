from __future__ import annotations

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gkp.params import ParamTuple, RecType, classify


def small_fraction(rng: random.Random, lo: int = -4, hi: int = 4, dens=(1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def random_tuple(rng: random.Random, rec_type: RecType | None = None) -> ParamTuple:
    """Random small-rational tuple, optionally forced to a given type."""
    while True:
        vals = [small_fraction(rng) for _ in range(6)]
        p = ParamTuple(*vals)
        if rec_type is None:
            return p
        if rec_type is RecType.II:
            p = ParamTuple(vals[0], vals[1] or Fraction(1), vals[2], vals[3], Fraction(0), vals[5])
        elif rec_type is RecType.III:
            p = ParamTuple(vals[0], Fraction(0), vals[2], vals[3], vals[4] or Fraction(1), vals[5])
        elif rec_type is RecType.IV:
            p = ParamTuple(vals[0], Fraction(0), vals[2], vals[3], Fraction(0), vals[5])
        else:
            p = ParamTuple(vals[0], vals[1] or Fraction(1), vals[2], vals[3], vals[4] or Fraction(2), vals[5])
        if classify(p) is rec_type:
            return p


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
