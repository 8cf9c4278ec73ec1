"""Variance sequences and the v_n / n^2 series bookkeeping.

Built-in forecasters are oblivious sequences: a power law c * n**p with
rational c >= 0 and integer p, or a finite sequence loaded from a file.
The interesting dial is whether the sum of v_n / n^2 diverges; the
power-law classifier answers analytically, file data is never classified
(divergence is a tail property a finite prefix cannot decide).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

from .numeric import parse_rational


class SequenceExhausted(Exception):
    """Asked for a variance beyond the end of a file-backed sequence."""


class NegativeVariance(Exception):
    """A variance below zero (malformed file or spec)."""


class Divergence(enum.Enum):
    DIVERGENT = "divergent"
    CONVERGENT = "convergent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PowerLaw:
    """v_n = coefficient * n**exponent, exact for all n >= 1."""

    coefficient: Fraction
    exponent: int

    def __post_init__(self) -> None:
        if self.coefficient < 0:
            raise NegativeVariance(
                f"power-law coefficient {self.coefficient} < 0"
            )

    def variance_at(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("rounds are 1-based")
        return self.coefficient * Fraction(n) ** self.exponent


@dataclass(frozen=True)
class FromFile:
    """Finite variance sequence read from a text file."""

    path: str
    values: tuple[Fraction, ...]

    def variance_at(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("rounds are 1-based")
        if n > len(self.values):
            raise SequenceExhausted(
                f"{self.path} has {len(self.values)} variances, round {n} requested"
            )
        return self.values[n - 1]


ForecasterSpec = Union[PowerLaw, FromFile]


def load_variance_file(path: str | Path) -> FromFile:
    """Parse a variance file: one rational or decimal literal per line.

    Blank lines are skipped; '#' starts a comment (whole line or trailing).
    Decimals are parsed exactly as rationals.
    """
    values = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            value = parse_rational(text)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
        if value < 0:
            raise NegativeVariance(f"{path}:{lineno}: variance {value} < 0")
        values.append(value)
    return FromFile(path=str(path), values=tuple(values))


def variance_at(spec: ForecasterSpec, n: int) -> Fraction:
    return spec.variance_at(n)


def kolmogorov_partial_sum(spec: ForecasterSpec, horizon: int) -> Fraction:
    """Sum of v_n / n^2 for n = 1..horizon, exact."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    return sum(
        (spec.variance_at(n) / Fraction(n * n) for n in range(1, horizon + 1)),
        start=Fraction(0),
    )


def classify_divergence(spec: ForecasterSpec) -> Divergence:
    """Does the v_n / n^2 series diverge?

    Power law: the terms are c * n**(p-2), a p-series that diverges
    exactly when p - 2 >= -1, i.e. p >= 1 (and c > 0). File-backed data
    is Unknown on principle.
    """
    if isinstance(spec, PowerLaw):
        if spec.coefficient == 0:
            return Divergence.CONVERGENT
        if spec.exponent >= 1:
            return Divergence.DIVERGENT
        return Divergence.CONVERGENT
    return Divergence.UNKNOWN
