"""Game loop wiring: mode discipline, history exposure, stopping."""
from fractions import Fraction

import pytest

from forecastgame import (
    NumericMode,
    PowerLaw,
    ProtocolVariant,
    RealityMove,
    SkepticMove,
    TriggerReality,
    make_avoider,
    make_momentum,
    make_zero,
    run_game,
    standard_matchup,
)
from forecastgame.skeptics import EpsilonSchedule

F = Fraction
CONST_ONE = PowerLaw(F(1), 0)


def test_zero_skeptic_hand_trace():
    trace = standard_matchup(CONST_ONE, make_zero(), 3)
    assert [r.triggered for r in trace] == [True, True, True]
    assert trace[-1].outcome_sum_after == 6
    assert trace[-1].capital_after == 1


def test_horizon_must_be_positive():
    with pytest.raises(ValueError):
        standard_matchup(CONST_ONE, make_zero(), 0)


def test_bankruptcy_observed_without_stopping():
    avoider = make_avoider(EpsilonSchedule.constant(F(1, 10**6)))
    trace = standard_matchup(PowerLaw(F(1, 2), 2), avoider, 25)
    assert len(trace) == 25
    assert any(r.capital_after < 0 for r in trace)


def test_stop_on_bankruptcy_halts():
    avoider = make_avoider(EpsilonSchedule.constant(F(1, 10**6)))
    trace = standard_matchup(
        PowerLaw(F(1, 2), 2), avoider, 25, stop_on_bankruptcy=True
    )
    assert len(trace) == 19
    assert trace[-1].capital_after < 0 <= trace[-2].capital_after


def test_exact_mode_rejects_float_moves():
    def sloppy(view):
        return SkepticMove(0.0, 0.5)

    with pytest.raises(TypeError):
        run_game(CONST_ONE, sloppy, TriggerReality(ProtocolVariant.STANDARD), 1)


def test_float_mode_coerces_everything():
    trace = standard_matchup(CONST_ONE, make_momentum(F(1)), 3, NumericMode.FLOAT)
    for record in trace:
        for field in ("variance", "stake_linear", "outcome", "capital_after"):
            assert isinstance(getattr(record, field), float)


def test_history_view_is_live_prefix():
    seen = []

    def nosy(view):
        seen.append(len(view.history))
        return SkepticMove(F(0), F(0))

    run_game(CONST_ONE, nosy, TriggerReality(ProtocolVariant.STANDARD), 4)
    assert seen == [0, 1, 2, 3]


def test_variant_threaded_to_validation():
    def illegal(view):
        return SkepticMove(F(0), F(-1))

    from forecastgame import NegativeQuadraticStake

    with pytest.raises(NegativeQuadraticStake):
        standard_matchup(CONST_ONE, illegal, 2)


def test_reruns_identical():
    avoider = make_avoider(EpsilonSchedule.geometric(F(1, 8), F(1, 2)))
    first = standard_matchup(CONST_ONE, avoider, 30)
    second = standard_matchup(CONST_ONE, avoider, 30)
    assert first == second


def test_custom_reality_player_is_honored():
    class AlwaysZero:
        def respond(self, capital_before, n, variance, smove):
            return RealityMove(0)

    trace = run_game(CONST_ONE, make_zero(), AlwaysZero(), 3)
    assert all(r.outcome == 0 for r in trace)
    assert not any(r.triggered for r in trace)
