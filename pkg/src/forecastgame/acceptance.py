"""Bundled acceptance suite.

Ten named checks the package promises to satisfy, runnable through
`forecastgame verify` or the test suite. Golden constants were frozen
from standalone reference loops (see tests/reference/) before the engine
was written; the checks compare the engine against them.

One check, SurvivalSharpness, demands a trigger-free run against the
constant-variance forecaster. The opening round of that matchup is
triggerable no matter what Skeptic plays (f_1(s) = s*M_1 at v_1 = 1, so
the sign-minimized test K_0 + f_1 <= 1 always holds), so the check is
expected to report the round-1 trigger and fail. It is kept strict
rather than loosened; the rest of the claim (no bankruptcy, capital
strictly inside (0, 1) at N = 10^4) does hold and is reported.
"""
from __future__ import annotations

import contextlib
import io
import os
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .analysis import analyze_trace, check_properties, verdict_document
from .forecasters import PowerLaw
from .game import run_game, standard_matchup
from .numeric import NumericMode, Scalar
from .protocol import (
    ForecastMove,
    GameState,
    ProtocolVariant,
    RoundRecord,
    SkepticMove,
    apply_round,
    initial_state,
)
from .reality import SignPolicy, decide
from .skeptics import (
    EpsilonSchedule,
    SkepticStrategy,
    make_avoider,
    make_momentum,
    make_negative_v,
    make_zero,
)
from .traceio import read_trace, write_trace

# Frozen oracle values (tests/reference/, run before the engine existed).
BANKRUPTCY_ROUND = 19
BANKRUPTCY_CAPITAL = Fraction(-229057, 400000)
EXHAUSTIVE_TRIGGERED = 529955
EXHAUSTIVE_DECLINED = 1486
SURVIVAL_FINAL_APPROX = 0.913365265903

GRID_HORIZON_EXACT = 2_000
GRID_HORIZON_FLOAT = 100_000
AGREEMENT_HORIZON = 1_000
SURVIVAL_HORIZON = 10_000

FORECASTER_GRID: dict[str, PowerLaw] = {
    "const-1": PowerLaw(Fraction(1), 0),
    "linear": PowerLaw(Fraction(1), 1),
    "halfsquare": PowerLaw(Fraction(1, 2), 2),
}

SKEPTIC_GRID: dict[str, Callable[[], SkepticStrategy]] = {
    "zero": make_zero,
    "avoider-const": lambda: make_avoider(
        EpsilonSchedule.constant(Fraction(1, 10**6))
    ),
    "avoider-geo": lambda: make_avoider(
        EpsilonSchedule.geometric(Fraction(1, 8), Fraction(1, 2))
    ),
    "momentum+1": lambda: make_momentum(Fraction(1)),
    "momentum-3": lambda: make_momentum(Fraction(-3)),
}

# Adaptive threshold play does not survive float rounding once its margin
# drops under one ulp of the trigger gap, so cross-mode agreement is only
# claimed for the non-adaptive Skeptics.
NONADVERSARIAL_SKEPTICS = ("zero", "momentum+1", "momentum-3")


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


_trace_cache: dict[tuple[str, str, str], list[RoundRecord]] = {}


def _grid_trace(skeptic: str, forecaster: str, mode: NumericMode) -> list[RoundRecord]:
    key = (skeptic, forecaster, mode.name)
    if key not in _trace_cache:
        horizon = (
            GRID_HORIZON_EXACT if mode is NumericMode.EXACT else GRID_HORIZON_FLOAT
        )
        _trace_cache[key] = standard_matchup(
            FORECASTER_GRID[forecaster], SKEPTIC_GRID[skeptic](), horizon, mode
        )
    return _trace_cache[key]


def survival_trace() -> list[RoundRecord]:
    key = ("avoider-geo", "const-1", "survival")
    if key not in _trace_cache:
        _trace_cache[key] = standard_matchup(
            FORECASTER_GRID["const-1"], SKEPTIC_GRID["avoider-geo"](), SURVIVAL_HORIZON
        )
    return _trace_cache[key]


def bankruptcy_trace() -> list[RoundRecord]:
    key = ("avoider-const", "halfsquare", "bankruptcy")
    if key not in _trace_cache:
        _trace_cache[key] = standard_matchup(
            FORECASTER_GRID["halfsquare"], SKEPTIC_GRID["avoider-const"](), 100
        )
    return _trace_cache[key]


def _check_capital_ceiling() -> tuple[bool, str]:
    for mode, ceiling in (
        (NumericMode.EXACT, 1),
        (NumericMode.FLOAT, 1 + 1e-9),
    ):
        for skeptic in SKEPTIC_GRID:
            for forecaster in FORECASTER_GRID:
                for record in _grid_trace(skeptic, forecaster, mode):
                    if not record.capital_after <= ceiling:
                        return False, (
                            f"{skeptic} vs {forecaster} ({mode.name}): "
                            f"K = {record.capital_after} at round {record.n}"
                        )
    return True, (
        f"K <= 1 on all {len(SKEPTIC_GRID) * len(FORECASTER_GRID)} matchups, "
        f"exact N={GRID_HORIZON_EXACT} and float N={GRID_HORIZON_FLOAT}"
    )


def _first_jump_violation(trace: Sequence[RoundRecord], exact: bool) -> Optional[int]:
    prev: Scalar = 0
    for record in trace:
        if record.triggered:
            need = Fraction(record.n, 2) if exact else record.n / 2
            if max(abs(prev), abs(record.outcome_sum_after)) < need:
                return record.n
        prev = record.outcome_sum_after
    return None


def _check_trigger_jump() -> tuple[bool, str]:
    total = 0
    for mode in (NumericMode.EXACT, NumericMode.FLOAT):
        for skeptic in SKEPTIC_GRID:
            for forecaster in FORECASTER_GRID:
                trace = _grid_trace(skeptic, forecaster, mode)
                bad = _first_jump_violation(trace, mode is NumericMode.EXACT)
                if bad is not None:
                    return False, (
                        f"{skeptic} vs {forecaster} ({mode.name}): "
                        f"jump below n/2 at round {bad}"
                    )
                total += sum(1 for r in trace if r.triggered)
    return True, f"max(|S_(n-1)|, |S_n|) >= n/2 at all {total} triggers"


def _check_zero_skeptic() -> tuple[bool, str]:
    horizon = 1_000
    trace = standard_matchup(FORECASTER_GRID["const-1"], make_zero(), horizon)
    expected_sum = horizon * (horizon + 1) // 2
    if not all(r.triggered for r in trace):
        return False, "some round did not trigger"
    final = trace[-1]
    if final.outcome_sum_after != expected_sum or final.capital_after != 1:
        return False, (
            f"S_N = {final.outcome_sum_after}, K_N = {final.capital_after}"
        )
    return True, f"all {horizon} rounds triggered, S_N = {expected_sum}, K_N = 1"


def _check_forced_bankruptcy() -> tuple[bool, str]:
    trace = bankruptcy_trace()
    verdict = analyze_trace(trace)
    if verdict.trigger_rounds:
        return False, f"unexpected triggers at {verdict.trigger_rounds[:3]}"
    if verdict.bankrupt_at != BANKRUPTCY_ROUND:
        return False, f"bankrupt_at = {verdict.bankrupt_at}, want {BANKRUPTCY_ROUND}"
    capital = trace[BANKRUPTCY_ROUND - 1].capital_after
    if capital != BANKRUPTCY_CAPITAL:
        return False, f"K_{BANKRUPTCY_ROUND} = {capital}, want {BANKRUPTCY_CAPITAL}"
    return True, (
        f"zero triggers, bankrupt at round {BANKRUPTCY_ROUND} "
        f"with K = {BANKRUPTCY_CAPITAL}"
    )


def _check_survival_sharpness() -> tuple[bool, str]:
    verdict = analyze_trace(survival_trace())
    final = verdict.final_capital
    facts = (
        f"trigger_rounds = {list(verdict.trigger_rounds)}, "
        f"bankrupt_at = {verdict.bankrupt_at}, K_N = {float(final):.12f}"
    )
    passed = (
        not verdict.trigger_rounds
        and verdict.bankrupt_at is None
        and 0 < final < 1
    )
    return passed, facts


def _check_momentum_exploitation() -> tuple[bool, str]:
    trace = standard_matchup(FORECASTER_GRID["const-1"], make_momentum(Fraction(1)), 2)
    outcomes = [r.outcome for r in trace]
    capitals = [r.capital_after for r in trace]
    verdict = analyze_trace(trace)
    ok = (
        outcomes == [-1, -2]
        and capitals == [0, -2]
        and all(r.triggered for r in trace)
        and verdict.bankrupt_at == 2
    )
    detail = (
        f"x = {[str(x) for x in outcomes]}, K = {[str(k) for k in capitals]}, "
        f"bankrupt_at = {verdict.bankrupt_at}"
    )
    return ok, detail


def _check_punishment_lethality() -> tuple[bool, str]:
    zero_variance = PowerLaw(Fraction(0), 0)
    trace = run_game(
        zero_variance,
        make_negative_v(Fraction(-1, 10)),
        _fresh_reality(ProtocolVariant.MODIFIED),
        horizon=1,
        variant=ProtocolVariant.MODIFIED,
    )
    record = trace[0]
    if record.outcome != 5 or record.capital_after != Fraction(-3, 2):
        return False, f"x_1 = {record.outcome}, K_1 = {record.capital_after}"
    if not record.capital_after <= -1:
        return False, f"K_1 = {record.capital_after} above -1"

    from . import cli

    # the rejection diagnostic is this check's expected outcome, keep it
    # out of the verify table
    with tempfile.TemporaryDirectory() as tmp, \
            contextlib.redirect_stderr(io.StringIO()):
        code = cli.main(
            [
                "run",
                "--forecaster", "constant:c=0",
                "--skeptic", "negv:v=-1/10",
                "--variant", "standard",
                "--rounds", "1",
                "--out", os.path.join(tmp, "t.jsonl"),
            ],
            quiet=True,
        )
    if code != 2:
        return False, f"standard-variant run exited {code}, want 2"
    return True, "x_1 = 5, K_1 = -3/2 <= -1; standard variant exits 2"


def _fresh_reality(variant: ProtocolVariant):
    from .reality import TriggerReality

    return TriggerReality(variant)


def exhaustive_counts(horizon: int = 6) -> tuple[int, int, int]:
    """DFS over all quadratic-stake policies, pruning triggered prefixes.

    Against v_n = n^2/2 with M = 0 and V drawn from {0, 1/4, ..., 2},
    a triggered prefix settles every continuation, so those subtrees are
    counted (9^remaining) instead of replayed. Returns (triggered,
    declined, violations) where declined means K_N < 1 without a trigger
    and violations counts full-horizon policies ending at K_N >= 1.
    """
    stakes = tuple(Fraction(j, 4) for j in range(9))
    forecaster = FORECASTER_GRID["halfsquare"]
    triggered = declined = violations = 0

    def walk(state: GameState) -> None:
        nonlocal triggered, declined, violations
        n = state.round
        variance = forecaster.variance_at(n)
        for stake in stakes:
            smove = SkepticMove(Fraction(0), stake)
            decision = decide(
                state.capital, n, variance, smove, ProtocolVariant.STANDARD
            )
            if decision.triggered:
                triggered += 9 ** (horizon - n)
                continue
            nxt, _ = apply_round(
                state,
                ForecastMove(variance),
                smove,
                decision.move,
                allow_bankrupt=True,
            )
            if n == horizon:
                if nxt.capital < 1:
                    declined += 1
                else:
                    violations += 1
            else:
                walk(nxt)

    walk(initial_state(ProtocolVariant.STANDARD, NumericMode.EXACT))
    return triggered, declined, violations


def _check_exhaustive_grid() -> tuple[bool, str]:
    triggered, declined, violations = exhaustive_counts()
    total = triggered + declined + violations
    ok = (
        violations == 0
        and triggered == EXHAUSTIVE_TRIGGERED
        and declined == EXHAUSTIVE_DECLINED
        and total == 9**6
    )
    return ok, (
        f"{triggered} triggered, {declined} declined at K_6 < 1, "
        f"{violations} violations out of {total} policies"
    )


_ROUNDTRIP_CONFIGS: tuple[tuple[str, Callable[[], list[RoundRecord]]], ...] = (
    (
        "avoider-geo vs linear, exact",
        lambda: standard_matchup(
            FORECASTER_GRID["linear"], SKEPTIC_GRID["avoider-geo"](), 40
        ),
    ),
    (
        "momentum-3 vs halfsquare, float",
        lambda: standard_matchup(
            FORECASTER_GRID["halfsquare"],
            SKEPTIC_GRID["momentum-3"](),
            40,
            NumericMode.FLOAT,
        ),
    ),
    (
        "negv vs const-1, modified",
        lambda: run_game(
            FORECASTER_GRID["const-1"],
            make_negative_v(Fraction(-1, 10)),
            _fresh_reality(ProtocolVariant.MODIFIED),
            horizon=5,
            variant=ProtocolVariant.MODIFIED,
        ),
    ),
)


def _serialize(trace: Sequence[RoundRecord]) -> str:
    sink = io.StringIO()
    write_trace(trace, sink)
    return sink.getvalue()


def _check_determinism_roundtrip() -> tuple[bool, str]:
    for label, play in _ROUNDTRIP_CONFIGS:
        first, second = play(), play()
        text = _serialize(first)
        if text != _serialize(second):
            return False, f"{label}: reruns differ"
        verdict = analyze_trace(first)
        document = verdict_document(verdict, check_properties(verdict, first))
        reloaded = read_trace(io.StringIO(text))
        redone = analyze_trace(reloaded)
        if redone != verdict:
            return False, f"{label}: verdict changed after trace round-trip"
        if verdict_document(redone, check_properties(redone, reloaded)) != document:
            return False, f"{label}: verdict document changed after round-trip"
    return True, f"{len(_ROUNDTRIP_CONFIGS)} matchups byte-stable and re-analyzable"


def _check_exact_float_agreement() -> tuple[bool, str]:
    for skeptic in NONADVERSARIAL_SKEPTICS:
        for forecaster in FORECASTER_GRID:
            exact = _grid_trace(skeptic, forecaster, NumericMode.EXACT)
            floated = _grid_trace(skeptic, forecaster, NumericMode.FLOAT)
            exact_set = {
                r.n for r in exact[:AGREEMENT_HORIZON] if r.triggered
            }
            float_set = {
                r.n for r in floated[:AGREEMENT_HORIZON] if r.triggered
            }
            if exact_set != float_set:
                diff = sorted(exact_set ^ float_set)[:5]
                return False, (
                    f"{skeptic} vs {forecaster}: trigger sets differ at {diff}"
                )
    return True, (
        f"trigger sets identical across modes for "
        f"{len(NONADVERSARIAL_SKEPTICS) * len(FORECASTER_GRID)} matchups, "
        f"N={AGREEMENT_HORIZON}"
    )


CRITERIA: dict[str, Callable[[], tuple[bool, str]]] = {
    "CapitalCeiling": _check_capital_ceiling,
    "TriggerJump": _check_trigger_jump,
    "ZeroSkepticClosedForm": _check_zero_skeptic,
    "ForcedBankruptcy": _check_forced_bankruptcy,
    "SurvivalSharpness": _check_survival_sharpness,
    "MomentumExploitation": _check_momentum_exploitation,
    "PunishmentLethality": _check_punishment_lethality,
    "ExhaustiveSmallGrid": _check_exhaustive_grid,
    "DeterminismRoundTrip": _check_determinism_roundtrip,
    "ExactFloatAgreement": _check_exact_float_agreement,
}


def run_criterion(name: str) -> CriterionResult:
    check = CRITERIA[name]
    start = time.perf_counter()
    try:
        passed, detail = check()
    except Exception as exc:
        passed, detail = False, f"error: {exc!r}"
    return CriterionResult(name, passed, detail, time.perf_counter() - start)


def run_all(names: Sequence[str] | None = None) -> list[CriterionResult]:
    return [run_criterion(name) for name in (names or CRITERIA)]
