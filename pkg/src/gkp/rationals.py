"""Exact-rational parsing and serialization helpers ("p/q" strings)."""
from __future__ import annotations

from fractions import Fraction



def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' / 'p' string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rat_str(q: Fraction) -> str:
    """Serialize a Fraction as 'p' for integers, else 'p/q'."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
