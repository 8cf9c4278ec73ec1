"""The round-by-round game loop."""
from __future__ import annotations

from typing import Protocol

from .forecasters import ForecasterSpec
from .numeric import NumericMode, Scalar
from .protocol import (
    ForecastMove,
    GameState,
    ProtocolVariant,
    RealityMove,
    RoundRecord,
    SkepticMove,
    apply_round,
    initial_state,
)
from .reality import SignPolicy, TriggerReality
from .skeptics import SkepticStrategy, SkepticView


class RealityPlayer(Protocol):
    def respond(
        self, capital_before: Scalar, n: int, variance: Scalar, smove: SkepticMove
    ) -> RealityMove: ...


def run_game(
    forecaster: ForecasterSpec,
    skeptic: SkepticStrategy,
    reality: RealityPlayer,
    horizon: int,
    mode: NumericMode = NumericMode.EXACT,
    variant: ProtocolVariant = ProtocolVariant.STANDARD,
    *,
    stop_on_bankruptcy: bool = False,
) -> list[RoundRecord]:
    """Play up to ``horizon`` rounds and return the trace.

    With ``stop_on_bankruptcy`` the game halts after the round that first
    sends capital negative; otherwise bankruptcy is recorded in the trace
    and play continues, keeping the post-bankruptcy decline observable.
    Deterministic: identical inputs give identical traces.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")

    state = initial_state(variant, mode)
    trace: list[RoundRecord] = []
    for n in range(1, horizon + 1):
        variance = mode.scalar(forecaster.variance_at(n))
        view = SkepticView(
            n=n, capital_before=state.capital, variance=variance, history=trace
        )
        raw = skeptic(view)
        smove = SkepticMove(mode.scalar(raw.stake_linear), mode.scalar(raw.stake_quadratic))
        outcome = reality.respond(state.capital, n, variance, smove)
        rmove = RealityMove(mode.scalar(outcome.outcome))
        state, record = apply_round(
            state, ForecastMove(variance), smove, rmove, allow_bankrupt=True
        )
        trace.append(record)
        if stop_on_bankruptcy and not state.running:
            break
    return trace


def standard_matchup(
    forecaster: ForecasterSpec,
    skeptic: SkepticStrategy,
    horizon: int,
    mode: NumericMode = NumericMode.EXACT,
    variant: ProtocolVariant = ProtocolVariant.STANDARD,
    policy: SignPolicy = SignPolicy.PREFER_POSITIVE,
    *,
    stop_on_bankruptcy: bool = False,
) -> list[RoundRecord]:
    """run_game against a fresh bundled Reality player."""
    return run_game(
        forecaster,
        skeptic,
        TriggerReality(variant, policy),
        horizon,
        mode,
        variant,
        stop_on_bankruptcy=stop_on_bankruptcy,
    )
