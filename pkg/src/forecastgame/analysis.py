"""Post-run trace analysis.

A Verdict condenses one trace into the quantities the game's guarantees
speak about: the capital ceiling, bankruptcy, trigger rounds and their
jump ratios, the running v_n/n^2 sum, and the post-trigger decline. The
property checker then grades the named finite-horizon properties; it
reports what a finite trace can actually witness, nothing more.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .forecasters import ForecasterSpec
from .numeric import Scalar, scalar_to_json
from .protocol import RoundRecord
from .traceio import MalformedTrace

FLOAT_CEILING_TOLERANCE = 1e-9

PROPERTY_NAMES = (
    "CapitalCeiling",
    "TriggerJump",
    "PostLastTriggerMonotone",
    "PunishmentLethal",
    "NoTriggerDecline",
)


@dataclass(frozen=True)
class Verdict:
    horizon: int
    max_capital: Scalar
    final_capital: Scalar
    bankrupt_at: Optional[int]
    trigger_rounds: tuple[int, ...]
    kolmogorov_sum_at_horizon: Scalar
    min_trigger_jump_ratio: Optional[Scalar]
    final_mean_outcome: Scalar
    post_last_trigger_monotone: bool


class PropertyStatus(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class PropertyOutcome:
    status: PropertyStatus
    round: Optional[int] = None
    detail: Optional[str] = None


@dataclass(frozen=True)
class PropertyReport:
    outcomes: dict[str, PropertyOutcome]

    def all_pass(self) -> bool:
        return all(
            o.status is not PropertyStatus.FAIL for o in self.outcomes.values()
        )


def _is_float_trace(trace: Sequence[RoundRecord]) -> bool:
    return isinstance(trace[0].capital_after, float)


def _validate_ledger(trace: Sequence[RoundRecord], spec: ForecasterSpec | None) -> None:
    capital: Scalar = 1
    outcome_sum: Scalar = 0
    for i, record in enumerate(trace):
        if record.n != i + 1:
            raise MalformedTrace(f"round {record.n} at position {i + 1}")
        if record.capital_after != capital + record.payoff:
            raise MalformedTrace(
                f"round {record.n}: capital {record.capital_after} != "
                f"{capital} + {record.payoff}"
            )
        if record.outcome_sum_after != outcome_sum + record.outcome:
            raise MalformedTrace(
                f"round {record.n}: outcome sum {record.outcome_sum_after} != "
                f"{outcome_sum} + {record.outcome}"
            )
        if spec is not None:
            expected = spec.variance_at(record.n)
            if isinstance(record.variance, float):
                expected = float(expected)
            if record.variance != expected:
                raise MalformedTrace(
                    f"round {record.n}: recorded variance {record.variance} "
                    f"does not match the forecaster spec"
                )
        capital = record.capital_after
        outcome_sum = record.outcome_sum_after


def analyze_trace(
    trace: Sequence[RoundRecord], spec: ForecasterSpec | None = None
) -> Verdict:
    """Compute the Verdict of a trace; raises MalformedTrace on bad ledgers.

    The v_n/n^2 sum is taken from the recorded variances. Passing the
    forecaster spec additionally cross-checks those against it.
    """
    if not trace:
        raise MalformedTrace("empty trace")
    _validate_ledger(trace, spec)

    exact = not _is_float_trace(trace)
    half = Fraction(1, 2) if exact else 0.5

    bankrupt_at = None
    trigger_rounds = []
    min_jump_ratio: Optional[Scalar] = None
    kolmogorov_sum: Scalar = Fraction(0) if exact else 0.0
    max_capital = trace[0].capital_after
    prev_sum: Scalar = 0
    for record in trace:
        if record.capital_after > max_capital:
            max_capital = record.capital_after
        if bankrupt_at is None and record.capital_after < 0:
            bankrupt_at = record.n
        kolmogorov_sum = kolmogorov_sum + record.variance / (record.n * record.n)
        if record.triggered:
            trigger_rounds.append(record.n)
            jump = max(abs(prev_sum), abs(record.outcome_sum_after))
            ratio = jump / record.n if not exact else Fraction(jump, record.n)
            if min_jump_ratio is None or ratio < min_jump_ratio:
                min_jump_ratio = ratio
        prev_sum = record.outcome_sum_after

    last_trigger = trigger_rounds[-1] if trigger_rounds else 0
    monotone = True
    prev_capital: Scalar = 1 if last_trigger == 0 else trace[last_trigger - 1].capital_after
    for record in trace[last_trigger:]:
        if record.capital_after > prev_capital:
            monotone = False
            break
        prev_capital = record.capital_after

    horizon = len(trace)
    final_sum = trace[-1].outcome_sum_after
    mean = Fraction(final_sum, horizon) if exact else final_sum / horizon
    return Verdict(
        horizon=horizon,
        max_capital=max_capital,
        final_capital=trace[-1].capital_after,
        bankrupt_at=bankrupt_at,
        trigger_rounds=tuple(trigger_rounds),
        kolmogorov_sum_at_horizon=kolmogorov_sum,
        min_trigger_jump_ratio=min_jump_ratio,
        final_mean_outcome=mean,
        post_last_trigger_monotone=monotone,
    )


def check_properties(verdict: Verdict, trace: Sequence[RoundRecord]) -> PropertyReport:
    """Grade the named finite-horizon properties of a trace."""
    exact = not _is_float_trace(trace)
    outcomes: dict[str, PropertyOutcome] = {}

    ceiling = 1 if exact else 1 + FLOAT_CEILING_TOLERANCE
    if verdict.max_capital <= ceiling:
        outcomes["CapitalCeiling"] = PropertyOutcome(PropertyStatus.PASS)
    else:
        worst = next(
            r.n for r in trace if r.capital_after == verdict.max_capital
        )
        outcomes["CapitalCeiling"] = PropertyOutcome(
            PropertyStatus.FAIL, worst, f"capital {verdict.max_capital} > {ceiling}"
        )

    jump_fail = None
    prev_sum: Scalar = 0
    for record in trace:
        if record.triggered:
            threshold = Fraction(record.n, 2) if exact else record.n / 2
            if max(abs(prev_sum), abs(record.outcome_sum_after)) < threshold:
                jump_fail = record.n
                break
        prev_sum = record.outcome_sum_after
    if not verdict.trigger_rounds:
        outcomes["TriggerJump"] = PropertyOutcome(
            PropertyStatus.NOT_APPLICABLE, detail="no triggered rounds"
        )
    elif jump_fail is None:
        outcomes["TriggerJump"] = PropertyOutcome(PropertyStatus.PASS)
    else:
        outcomes["TriggerJump"] = PropertyOutcome(
            PropertyStatus.FAIL, jump_fail, "outcome sum jump below n/2"
        )

    if verdict.post_last_trigger_monotone:
        outcomes["PostLastTriggerMonotone"] = PropertyOutcome(PropertyStatus.PASS)
    else:
        outcomes["PostLastTriggerMonotone"] = PropertyOutcome(
            PropertyStatus.FAIL, detail="capital increased after the last trigger"
        )

    punished = [r for r in trace if r.stake_quadratic < 0]
    if not punished:
        outcomes["PunishmentLethal"] = PropertyOutcome(
            PropertyStatus.NOT_APPLICABLE, detail="no negative quadratic stakes"
        )
    else:
        survivor = next((r for r in punished if not r.capital_after <= -1), None)
        if survivor is None:
            outcomes["PunishmentLethal"] = PropertyOutcome(PropertyStatus.PASS)
        else:
            outcomes["PunishmentLethal"] = PropertyOutcome(
                PropertyStatus.FAIL,
                survivor.n,
                f"capital {survivor.capital_after} > -1 after a negative stake",
            )

    billed = any(r.variance > 0 and r.stake_quadratic > 0 for r in trace)
    if verdict.trigger_rounds or not billed:
        outcomes["NoTriggerDecline"] = PropertyOutcome(
            PropertyStatus.NOT_APPLICABLE,
            detail="needs a trigger-free trace with a charged round",
        )
    elif verdict.final_capital < 1:
        outcomes["NoTriggerDecline"] = PropertyOutcome(PropertyStatus.PASS)
    else:
        outcomes["NoTriggerDecline"] = PropertyOutcome(
            PropertyStatus.FAIL,
            detail=f"final capital {verdict.final_capital} not below 1",
        )

    assert tuple(outcomes) == PROPERTY_NAMES
    return PropertyReport(outcomes)


def verdict_to_doc(verdict: Verdict) -> dict:
    return {
        "horizon": verdict.horizon,
        "max_capital": scalar_to_json(verdict.max_capital),
        "final_capital": scalar_to_json(verdict.final_capital),
        "bankrupt_at": verdict.bankrupt_at,
        "trigger_rounds": list(verdict.trigger_rounds),
        "kolmogorov_sum_at_horizon": scalar_to_json(verdict.kolmogorov_sum_at_horizon),
        "min_trigger_jump_ratio": (
            None
            if verdict.min_trigger_jump_ratio is None
            else scalar_to_json(verdict.min_trigger_jump_ratio)
        ),
        "final_mean_outcome": scalar_to_json(verdict.final_mean_outcome),
        "post_last_trigger_monotone": verdict.post_last_trigger_monotone,
    }


def report_to_doc(report: PropertyReport) -> dict:
    doc = {}
    for name, outcome in report.outcomes.items():
        entry: dict = {"outcome": outcome.status.value}
        if outcome.round is not None:
            entry["round"] = outcome.round
        if outcome.detail is not None:
            entry["detail"] = outcome.detail
        doc[name] = entry
    return doc


def verdict_document(verdict: Verdict, report: PropertyReport) -> str:
    """The single JSON document combining a Verdict and its PropertyReport."""
    doc = verdict_to_doc(verdict)
    doc["properties"] = report_to_doc(report)
    return json.dumps(doc, indent=2) + "\n"
