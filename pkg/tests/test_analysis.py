"""Verdict computation and the property checker."""
import json
from fractions import Fraction

import pytest

from forecastgame import (
    MalformedTrace,
    NumericMode,
    PowerLaw,
    PropertyStatus,
    RoundRecord,
    analyze_trace,
    check_properties,
    make_momentum,
    make_zero,
    run_game,
    standard_matchup,
    verdict_document,
)
from forecastgame.protocol import ProtocolVariant
from forecastgame.skeptics import make_negative_v
from forecastgame.reality import TriggerReality

F = Fraction
CONST_ONE = PowerLaw(F(1), 0)


def record(n, v, M, V, x, payoff, K, S, triggered):
    return RoundRecord(n, F(v), F(M), F(V), F(x), F(payoff), F(K), F(S), triggered)


def test_one_round_trigger_verdict():
    trace = [record(1, 1, 0, 0, 1, 0, 1, 1, True)]
    verdict = analyze_trace(trace)
    assert verdict.max_capital == 1
    assert verdict.trigger_rounds == (1,)
    assert verdict.min_trigger_jump_ratio == 1
    assert verdict.kolmogorov_sum_at_horizon == 1


def test_one_round_quiet_verdict():
    trace = [record(1, 1, 0, F(1, 4), 0, F(-1, 4), F(3, 4), 0, False)]
    verdict = analyze_trace(trace)
    assert verdict.trigger_rounds == ()
    assert verdict.min_trigger_jump_ratio is None
    assert verdict.final_mean_outcome == 0
    assert verdict.bankrupt_at is None


def test_momentum_verdict_and_properties():
    trace = standard_matchup(CONST_ONE, make_momentum(F(1)), 2)
    verdict = analyze_trace(trace)
    report = check_properties(verdict, trace)
    assert verdict.bankrupt_at == 2
    assert report.outcomes["CapitalCeiling"].status is PropertyStatus.PASS


def test_min_jump_ratio_over_zero_skeptic_run():
    # ratios are 1, 3/2, 2; the minimum sits at the opening round
    trace = standard_matchup(CONST_ONE, make_zero(), 3)
    verdict = analyze_trace(trace)
    assert verdict.min_trigger_jump_ratio == 1


def test_empty_trace_rejected():
    with pytest.raises(MalformedTrace):
        analyze_trace([])


def test_gap_in_rounds_rejected():
    trace = [record(2, 1, 0, 0, 2, 0, 1, 2, True)]
    with pytest.raises(MalformedTrace):
        analyze_trace(trace)


def test_capital_ledger_mismatch_rejected():
    trace = [record(1, 1, 0, 0, 1, 0, F(1, 2), 1, True)]
    with pytest.raises(MalformedTrace):
        analyze_trace(trace)


def test_outcome_ledger_mismatch_rejected():
    trace = [record(1, 1, 0, 0, 1, 0, 1, 2, True)]
    with pytest.raises(MalformedTrace):
        analyze_trace(trace)


def test_spec_cross_check():
    trace = standard_matchup(PowerLaw(F(1, 2), 2), make_zero(), 4)
    assert analyze_trace(trace, PowerLaw(F(1, 2), 2)).horizon == 4
    with pytest.raises(MalformedTrace):
        analyze_trace(trace, PowerLaw(F(1), 1))


def test_reanalysis_is_identical():
    trace = standard_matchup(CONST_ONE, make_momentum(F(-3)), 8)
    assert analyze_trace(trace) == analyze_trace(trace)


def test_post_last_trigger_monotone_flag():
    trace = standard_matchup(PowerLaw(F(1), 1), make_zero(), 6)
    verdict = analyze_trace(trace)
    assert verdict.post_last_trigger_monotone


def test_monotone_fail_detected():
    # a hand-written trace that climbs after its last trigger
    trace = [
        record(1, 1, 0, 0, 1, 0, 1, 1, True),
        record(2, 1, -1, 0, 0, 0, 1, 1, False),
        record(3, 0, -1, 0, -1, 1, 2, 0, False),
    ]
    verdict = analyze_trace(trace)
    assert not verdict.post_last_trigger_monotone
    report = check_properties(verdict, trace)
    assert report.outcomes["PostLastTriggerMonotone"].status is PropertyStatus.FAIL
    assert report.outcomes["CapitalCeiling"].status is PropertyStatus.FAIL


def test_punishment_lethal_property():
    trace = run_game(
        PowerLaw(F(0), 0),
        make_negative_v(F(-1, 10)),
        TriggerReality(ProtocolVariant.MODIFIED),
        horizon=2,
        variant=ProtocolVariant.MODIFIED,
    )
    verdict = analyze_trace(trace)
    report = check_properties(verdict, trace)
    assert report.outcomes["PunishmentLethal"].status is PropertyStatus.PASS


def test_punishment_property_not_applicable_without_negative_stakes():
    trace = standard_matchup(CONST_ONE, make_zero(), 2)
    report = check_properties(analyze_trace(trace), trace)
    assert (
        report.outcomes["PunishmentLethal"].status is PropertyStatus.NOT_APPLICABLE
    )


def test_no_trigger_decline_pass():
    # quiet rounds with a positive quadratic stake bleed capital
    trace = [
        record(1, 4, 0, F(1, 8), 0, F(-1, 2), F(1, 2), 0, False),
        record(2, 8, 0, 0, 0, 0, F(1, 2), 0, False),
    ]
    report = check_properties(analyze_trace(trace), trace)
    assert report.outcomes["NoTriggerDecline"].status is PropertyStatus.PASS


def test_no_trigger_decline_needs_a_charged_round():
    trace = [record(1, 4, 0, 0, 0, 0, 1, 0, False)]
    report = check_properties(analyze_trace(trace), trace)
    assert (
        report.outcomes["NoTriggerDecline"].status is PropertyStatus.NOT_APPLICABLE
    )


def test_float_ceiling_tolerance():
    trace = standard_matchup(CONST_ONE, make_zero(), 3, NumericMode.FLOAT)
    report = check_properties(analyze_trace(trace), trace)
    assert report.outcomes["CapitalCeiling"].status is PropertyStatus.PASS


def test_verdict_document_shape():
    trace = standard_matchup(CONST_ONE, make_zero(), 2)
    verdict = analyze_trace(trace)
    doc = json.loads(verdict_document(verdict, check_properties(verdict, trace)))
    assert list(doc) == [
        "horizon",
        "max_capital",
        "final_capital",
        "bankrupt_at",
        "trigger_rounds",
        "kolmogorov_sum_at_horizon",
        "min_trigger_jump_ratio",
        "final_mean_outcome",
        "post_last_trigger_monotone",
        "properties",
    ]
    assert doc["max_capital"] == "1"
    assert doc["trigger_rounds"] == [1, 2]
    assert set(doc["properties"]) == {
        "CapitalCeiling",
        "TriggerJump",
        "PostLastTriggerMonotone",
        "PunishmentLethal",
        "NoTriggerDecline",
    }
