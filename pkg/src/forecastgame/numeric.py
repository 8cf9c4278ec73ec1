"""Numeric modes and scalar handling.

All game arithmetic runs on one of two scalar domains, fixed per game:
exact rationals (``fractions.Fraction``) or IEEE-754 doubles. Exact mode
is the correctness reference; float mode exists for speed and for
observing rounding behavior. Values never cross domains inside a game.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]


class NumericMode(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"

    def scalar(self, value: Scalar | int | str) -> Scalar:
        """Coerce ``value`` into this mode's domain.

        Exact mode refuses floats outright: a binary double silently
        smuggled into a rational computation would poison every exact
        assertion downstream.
        """
        if self is NumericMode.EXACT:
            if isinstance(value, float):
                raise TypeError(
                    "exact mode does not accept floats; pass a Fraction, "
                    "int, or a decimal/rational string"
                )
            return Fraction(value)
        return float(value)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", a decimal string, or scientific notation exactly.

    Decimals are read as exact rationals ("0.1" -> 1/10, "1e-6" ->
    1/1000000); no binary rounding is involved.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def scalar_to_json(value: Scalar) -> str | float:
    """Exact scalars serialize as "p/q" strings, floats as JSON numbers."""
    if isinstance(value, float):
        return value
    return str(Fraction(value))


def scalar_from_json(value: str | float | int) -> Scalar:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, bool):  # bool is an int; never a scalar
        raise TypeError("boolean is not a scalar")
    return float(value)
