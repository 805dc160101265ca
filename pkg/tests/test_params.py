from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gkp.errors import NotTypeI
from gkp.params import (
    InvolutionKind,
    ParamTuple,
    RecType,
    apply_involution,
    classify,
    derived_type_i,
)

from conftest import random_tuple

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
tuples = st.builds(ParamTuple, *([rationals] * 6))


@pytest.mark.parametrize(
    "vals,expected",
    [
        ((0, 1, 1, 1, -1, 0), RecType.I),
        ((0, 1, 0, 0, 0, 1), RecType.II),
        ((0, 0, 1, 0, 1, 0), RecType.III),
        ((0, 0, 1, 0, 0, 1), RecType.IV),
    ],
)
def test_classify(vals, expected):
    assert classify(ParamTuple.of(*vals)) is expected


def test_derived_type_i_examples():
    d = derived_type_i(ParamTuple.of(0, 1, 1, 1, -1, 0))
    assert (d.r, d.rp, d.s, d.sp, d.sigma) == (0, -1, 1, 0, -1)
    d = derived_type_i(ParamTuple.of(1, 1, -1, 1, 1, -1))
    assert (d.r, d.rp, d.s, d.sp, d.sigma) == (1, 1, 0, -1, 1)
    with pytest.raises(NotTypeI):
        derived_type_i(ParamTuple.of(0, 1, 0, 0, 0, 1))


def test_involution_examples():
    star = apply_involution(InvolutionKind.STAR, ParamTuple.of(0, 1, 1, 1, -1, 0))
    assert star == ParamTuple.of(0, 1, 0, 1, -1, 1)
    altk = apply_involution(InvolutionKind.ALT_K, ParamTuple.of(0, 1, 0, 0, 0, 1))
    assert altk == ParamTuple.of(0, 1, 0, 0, 0, -1)
    altn = apply_involution(InvolutionKind.ALT_N, ParamTuple.of(1, 0, -1, 0, 0, 1))
    assert altn == ParamTuple.of(-1, 0, 1, 0, 0, -1)


@given(tuples, st.sampled_from(list(InvolutionKind)))
def test_involutions_square_to_identity(p, kind):
    assert apply_involution(kind, apply_involution(kind, p)) == p


@given(tuples)
def test_star_type_behavior(p):
    mapping = {RecType.I: RecType.I, RecType.II: RecType.III, RecType.III: RecType.II, RecType.IV: RecType.IV}
    assert classify(apply_involution(InvolutionKind.STAR, p)) is mapping[classify(p)]


@given(rationals, rationals, rationals)
def test_self_dual_family_is_star_fixed(a, b, g):
    p = ParamTuple(a, b, g, a + b, -b, g)
    assert apply_involution(InvolutionKind.STAR, p) == p


def test_serialization_round_trip(rng: random.Random):
    for _ in range(30):
        p = random_tuple(rng)
        assert ParamTuple.from_strings(p.to_strings()) == p
    assert ParamTuple.of("1/2", 1, "-3/4", 0, 2, -1).alpha == Fraction(1, 2)
    with pytest.raises(ValueError):
        ParamTuple.from_strings(["1", "2", "3"])
    with pytest.raises(ValueError):
        ParamTuple.of("x", 1, 1, 1, 1, 1)
