"""Core betting protocol: moves, capital accounting, round transitions.

One round of the unbounded-forecasting game: Forecaster announces a
variance v, Skeptic stakes a linear amount M and a quadratic amount V,
Reality picks the outcome x, and Skeptic's capital moves by
``M*x + V*(x**2 - v)``. Capital starts at 1. Skeptic is bankrupt the
first time capital goes negative; the state records that round and never
un-records it.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

from .numeric import NumericMode, Scalar

import enum


class ProtocolVariant(enum.Enum):
    STANDARD = "standard"  # quadratic stake must be >= 0
    MODIFIED = "modified"  # quadratic stake may be any real


class ProtocolError(Exception):
    """Base for violations of the game rules."""


class NegativeQuadraticStake(ProtocolError):
    """Quadratic stake below zero under the standard variant."""


class GameOver(ProtocolError):
    """A round was applied to a finished game."""


class NegativeVariance(ProtocolError):
    """Forecast variance below zero."""


class ForecastMove(NamedTuple):
    variance: Scalar


class SkepticMove(NamedTuple):
    stake_linear: Scalar
    stake_quadratic: Scalar


class RealityMove(NamedTuple):
    outcome: Scalar


@dataclass(frozen=True, slots=True)
class GameState:
    """State between rounds; ``round`` is the next round to play (1-based)."""

    round: int
    capital: Scalar
    outcome_sum: Scalar
    variant: ProtocolVariant
    bankrupt_at: Optional[int] = None

    @property
    def running(self) -> bool:
        return self.bankrupt_at is None


@dataclass(frozen=True, slots=True)
class RoundRecord:
    """One ledger line: everything round n contributed to the trace."""

    n: int
    variance: Scalar
    stake_linear: Scalar
    stake_quadratic: Scalar
    outcome: Scalar
    payoff: Scalar
    capital_after: Scalar
    outcome_sum_after: Scalar
    triggered: bool


def initial_state(variant: ProtocolVariant, mode: NumericMode) -> GameState:
    """Fresh game: round 1, capital 1, outcome sum 0."""
    return GameState(
        round=1,
        capital=mode.scalar(1),
        outcome_sum=mode.scalar(0),
        variant=variant,
    )


def payoff(move: SkepticMove, variance: Scalar, outcome: Scalar) -> Scalar:
    """Skeptic's capital increment when Reality plays ``outcome``."""
    return (
        move.stake_linear * outcome
        + move.stake_quadratic * (outcome * outcome - variance)
    )


def validate_skeptic_move(variant: ProtocolVariant, move: SkepticMove) -> None:
    """Raise NegativeQuadraticStake if the move is illegal in ``variant``.

    The linear stake is unconstrained in both variants; the modified
    variant additionally admits negative quadratic stakes.
    """
    if variant is ProtocolVariant.STANDARD and move.stake_quadratic < 0:
        raise NegativeQuadraticStake(
            f"stake_quadratic = {move.stake_quadratic} < 0 under the "
            f"standard variant"
        )


def apply_round(
    state: GameState,
    fmove: ForecastMove,
    smove: SkepticMove,
    rmove: RealityMove,
    *,
    allow_bankrupt: bool = False,
) -> tuple[GameState, RoundRecord]:
    """Play one round and return the next state plus its ledger line.

    By default a finished (bankrupt) game refuses further rounds with
    GameOver; the game loop opts in via ``allow_bankrupt`` so the
    post-bankruptcy decline stays observable.
    """
    if not state.running and not allow_bankrupt:
        raise GameOver(f"skeptic went bankrupt at round {state.bankrupt_at}")
    if fmove.variance < 0:
        raise NegativeVariance(f"variance {fmove.variance} < 0")
    validate_skeptic_move(state.variant, smove)

    n = state.round
    gain = payoff(smove, fmove.variance, rmove.outcome)
    capital_after = state.capital + gain
    outcome_sum_after = state.outcome_sum + rmove.outcome
    bankrupt_at = state.bankrupt_at
    if bankrupt_at is None and capital_after < 0:
        bankrupt_at = n

    record = RoundRecord(
        n=n,
        variance=fmove.variance,
        stake_linear=smove.stake_linear,
        stake_quadratic=smove.stake_quadratic,
        outcome=rmove.outcome,
        payoff=gain,
        capital_after=capital_after,
        outcome_sum_after=outcome_sum_after,
        triggered=abs(rmove.outcome) >= n,
    )
    next_state = replace(
        state,
        round=n + 1,
        capital=capital_after,
        outcome_sum=outcome_sum_after,
        bankrupt_at=bankrupt_at,
    )
    return next_state, record
