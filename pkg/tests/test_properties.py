"""Property-based tests for the protocol invariants."""
import io
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from forecastgame import (
    NegativeQuadraticStake,
    NumericMode,
    PowerLaw,
    ProtocolVariant,
    SkepticMove,
    TriggerReality,
    analyze_trace,
    check_properties,
    decide,
    kolmogorov_partial_sum,
    make_replay,
    payoff,
    preferred_sign,
    punishment_magnitude,
    read_trace,
    run_game,
    skeptic_script,
    standard_matchup,
    variance_at,
    write_trace,
)
from forecastgame.numeric import scalar_from_json, scalar_to_json
from forecastgame.skeptics import EpsilonSchedule

F = Fraction
STD = ProtocolVariant.STANDARD
MOD = ProtocolVariant.MODIFIED

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=64)
nonneg = st.fractions(min_value=0, max_value=8, max_denominator=64)
negative = st.fractions(min_value=-8, max_value=F(-1, 64), max_denominator=64)
capitals = st.fractions(min_value=-4, max_value=1, max_denominator=64)
small_rounds = st.integers(min_value=1, max_value=12)

legal_moves = st.tuples(rationals, nonneg).map(lambda t: SkepticMove(*t))
scripts = st.lists(legal_moves, min_size=1, max_size=10)

forecasters = st.sampled_from(
    [
        PowerLaw(F(0), 0),
        PowerLaw(F(1), 0),
        PowerLaw(F(1), 1),
        PowerLaw(F(1, 2), 2),
        PowerLaw(F(3, 7), 1),
    ]
)


@given(capitals, small_rounds, nonneg, legal_moves)
def test_trigger_soundness(capital, n, variance, move):
    """A triggered round never lands capital above 1."""
    decision = decide(capital, n, variance, move, STD)
    if decision.triggered:
        assert capital + payoff(move, variance, decision.move.outcome) <= 1


@given(capitals, small_rounds, nonneg, legal_moves)
def test_zero_move_soundness(capital, n, variance, move):
    """A zero outcome means both full-size outcomes would overshoot 1."""
    decision = decide(capital, n, variance, move, STD)
    if not decision.triggered:
        assert capital + payoff(move, variance, F(n)) > 1
        assert capital + payoff(move, variance, F(-n)) > 1


@given(rationals, small_rounds)
def test_preferred_sign_minimizes_payoff(stake, n):
    s = preferred_sign(stake)
    move = SkepticMove(stake, F(0))
    assert payoff(move, F(0), s * n) <= payoff(move, F(0), -s * n)


@given(capitals, rationals, negative, nonneg, small_rounds)
def test_punishment_is_lethal_and_minimal(capital, m, v_stake, variance, n):
    smove = SkepticMove(m, v_stake)
    move = punishment_magnitude(capital, smove, variance, n)
    t = abs(move.outcome)
    assert t >= n
    assert capital + payoff(smove, variance, move.outcome) <= -1
    if t > n:
        sign = 1 if move.outcome > 0 else -1
        assert capital + payoff(smove, variance, sign * (t - 1)) > -1


@settings(max_examples=60)
@given(scripts, forecasters)
def test_engine_traces_satisfy_all_properties(script, forecaster):
    """Ledger identities, capital ceiling, jump bound, decline, round-trip."""
    trace = run_game(forecaster, make_replay(script), TriggerReality(STD), len(script))
    verdict = analyze_trace(trace, forecaster)
    report = check_properties(verdict, trace)
    assert report.all_pass()
    assert verdict.max_capital <= 1

    sink = io.StringIO()
    write_trace(trace, sink)
    reloaded = read_trace(io.StringIO(sink.getvalue()))
    assert reloaded == trace
    assert analyze_trace(reloaded) == verdict


@settings(max_examples=40)
@given(scripts, forecasters)
def test_float_engine_traces_satisfy_all_properties(script, forecaster):
    floated = [SkepticMove(float(m), float(v)) for m, v in script]
    trace = run_game(
        forecaster,
        make_replay(floated),
        TriggerReality(STD),
        len(floated),
        NumericMode.FLOAT,
    )
    verdict = analyze_trace(trace)
    assert check_properties(verdict, trace).all_pass()
    assert verdict.max_capital <= 1 + 1e-9


@settings(max_examples=60)
@given(scripts, forecasters)
def test_non_trigger_rounds_never_gain(script, forecaster):
    trace = run_game(forecaster, make_replay(script), TriggerReality(STD), len(script))
    capital = F(1)
    for record in trace:
        if not record.triggered:
            assert record.capital_after <= capital
        capital = record.capital_after


@given(scripts, forecasters)
@settings(max_examples=40)
def test_replay_reproduces_any_matchup(script, forecaster):
    trace = run_game(forecaster, make_replay(script), TriggerReality(STD), len(script))
    again = run_game(
        forecaster,
        make_replay(skeptic_script(trace)),
        TriggerReality(STD),
        len(trace),
    )
    assert again == trace


@given(st.lists(st.tuples(rationals, negative), min_size=1, max_size=5))
def test_standard_variant_rejects_negative_stakes(pairs):
    script = [SkepticMove(m, v) for m, v in pairs]
    with pytest.raises(NegativeQuadraticStake):
        standard_matchup(PowerLaw(F(1), 0), make_replay(script), len(script))


@settings(max_examples=40)
@given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6), forecasters)
def test_modified_variant_punishes_every_negative_stake(pairs, forecaster):
    script = [SkepticMove(m, v) for m, v in pairs]
    trace = run_game(
        forecaster,
        make_replay(script),
        TriggerReality(MOD),
        len(script),
        variant=MOD,
    )
    for record in trace:
        if record.stake_quadratic < 0:
            assert record.capital_after <= -1
            assert abs(record.outcome) >= record.n


@given(
    st.fractions(min_value=0, max_value=5, max_denominator=32),
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=2, max_value=25),
)
def test_kolmogorov_increment(coefficient, exponent, n):
    spec = PowerLaw(coefficient, exponent)
    delta = kolmogorov_partial_sum(spec, n) - kolmogorov_partial_sum(spec, n - 1)
    assert delta == variance_at(spec, n) / F(n * n)


@given(st.fractions(min_value=F(1, 1000), max_value=2, max_denominator=1000),
       st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100),
       st.integers(min_value=1, max_value=50))
def test_schedules_stay_positive(eps, ratio, n):
    assert EpsilonSchedule.constant(eps).value_at(n) > 0
    assert EpsilonSchedule.geometric(eps, ratio).value_at(n) > 0


@given(st.fractions(max_denominator=10**6))
def test_exact_scalar_json_round_trip(value):
    encoded = scalar_to_json(value)
    assert isinstance(encoded, str)
    assert scalar_from_json(encoded) == value


@given(st.floats(allow_nan=False))
def test_float_scalar_json_round_trip(value):
    assert scalar_from_json(scalar_to_json(value)) == value
