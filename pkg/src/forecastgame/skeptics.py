"""Deterministic Skeptic strategies.

Each strategy is a pure function of what Skeptic legally sees before
moving: the round number, his current capital, the announced variance,
and the trace so far. The library covers both branches of the game's
dichotomy: the threshold-avoider dodges triggers at a margin cost, the
momentum and negative-V players walk into the sign and punishment rules,
and zero/replay exist for baselines and regression fixtures.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .numeric import Scalar
from .protocol import RoundRecord, SkepticMove


class ScriptExhausted(Exception):
    """Replay script is shorter than the game."""


@dataclass(frozen=True, slots=True)
class SkepticView:
    """Read-only snapshot handed to a strategy before round n."""

    n: int
    capital_before: Scalar
    variance: Scalar
    history: Sequence[RoundRecord]


SkepticStrategy = Callable[[SkepticView], SkepticMove]


class ScheduleKind(enum.Enum):
    CONSTANT = "const"
    GEOMETRIC = "geo"


@dataclass(frozen=True)
class EpsilonSchedule:
    """Positive margin sequence: eps (constant) or eps * ratio**n."""

    kind: ScheduleKind
    eps: Fraction
    ratio: Fraction | None = None

    def __post_init__(self) -> None:
        if not self.eps > 0:
            raise ValueError("eps must be > 0")
        if self.kind is ScheduleKind.GEOMETRIC:
            if self.ratio is None or not 0 < self.ratio < 1:
                raise ValueError("geometric schedule needs 0 < ratio < 1")
        elif self.ratio is not None:
            raise ValueError("constant schedule takes no ratio")

    @classmethod
    def constant(cls, eps: Fraction) -> "EpsilonSchedule":
        return cls(ScheduleKind.CONSTANT, eps)

    @classmethod
    def geometric(cls, eps: Fraction, ratio: Fraction) -> "EpsilonSchedule":
        return cls(ScheduleKind.GEOMETRIC, eps, ratio)

    def value_at(self, n: int) -> Fraction:
        if self.kind is ScheduleKind.CONSTANT:
            return self.eps
        return self.eps * self.ratio**n


def zero_next(view: SkepticView) -> SkepticMove:
    """Null adversary: never stakes anything."""
    return SkepticMove(0, 0)


def avoider_next(view: SkepticView, schedule: EpsilonSchedule) -> SkepticMove:
    """Smallest quadratic stake that dodges the trigger, plus a margin.

    Staying untriggered needs capital + V*(n^2 - v) > 1; when n^2 > v the
    cheapest such V is (1 - capital)/(n^2 - v) and the schedule supplies
    the strict-inequality margin. When n^2 <= v no stake moves the payoff
    at |x| = n upward, the trigger cannot be dodged, and zero stakes
    minimize the round's loss.
    """
    n, capital = view.n, view.capital_before
    gap = n * n - view.variance
    if gap > 0:
        base = (1 - capital) / gap
        if base < 0:
            base = 0
        return SkepticMove(0, base + schedule.value_at(n))
    return SkepticMove(0, 0)


def momentum_next(view: SkepticView, m: Scalar) -> SkepticMove:
    """Constant linear stake; exercises the sign-exploitation path."""
    return SkepticMove(m, 0)


def negative_v_next(view: SkepticView, v_stake: Scalar) -> SkepticMove:
    """Constant negative quadratic stake (legal only in the modified variant)."""
    return SkepticMove(0, v_stake)


def replay_next(view: SkepticView, script: Sequence[SkepticMove]) -> SkepticMove:
    """Move n of a fixed script."""
    if view.n > len(script):
        raise ScriptExhausted(
            f"script has {len(script)} moves, round {view.n} requested"
        )
    return SkepticMove(*script[view.n - 1])


def make_zero() -> SkepticStrategy:
    return zero_next


def make_avoider(schedule: EpsilonSchedule) -> SkepticStrategy:
    return lambda view: avoider_next(view, schedule)


def make_momentum(m: Scalar) -> SkepticStrategy:
    return lambda view: momentum_next(view, m)


def make_negative_v(v_stake: Scalar) -> SkepticStrategy:
    if not v_stake < 0:
        raise ValueError("negative-V strategy needs v_stake < 0")
    return lambda view: negative_v_next(view, v_stake)


def make_replay(script: Sequence[SkepticMove]) -> SkepticStrategy:
    frozen = tuple(SkepticMove(*move) for move in script)
    return lambda view: replay_next(view, frozen)
