"""Deterministic simulator for a forecasting game with an explicit spoiler.

Three players alternate each round n: a Forecaster announces a variance
v_n, a Skeptic stakes a linear term M_n and a quadratic term V_n, and
Reality picks the outcome x_n, crediting Skeptic with
f_n(x_n) = M_n*x_n + V_n*(x_n^2 - v_n). The bundled Reality keeps
Skeptic's capital at or below its starting value forever by playing 0
until the trigger test K_(n-1) + f_n(+-n) <= 1 is met, then playing a
full-size outcome; the library simulates this exactly (rationals) or in
floats, records traces, and verifies the finite-horizon properties the
strategy guarantees.
"""
from .analysis import (
    PROPERTY_NAMES,
    PropertyOutcome,
    PropertyReport,
    PropertyStatus,
    Verdict,
    analyze_trace,
    check_properties,
    report_to_doc,
    verdict_document,
    verdict_to_doc,
)
from .forecasters import (
    Divergence,
    ForecasterSpec,
    FromFile,
    NegativeVariance,
    PowerLaw,
    SequenceExhausted,
    classify_divergence,
    kolmogorov_partial_sum,
    load_variance_file,
    variance_at,
)
from .game import run_game, standard_matchup
from .numeric import NumericMode, Scalar, parse_rational
from .protocol import (
    ForecastMove,
    GameOver,
    GameState,
    NegativeQuadraticStake,
    ProtocolError,
    ProtocolVariant,
    RealityMove,
    RoundRecord,
    SkepticMove,
    apply_round,
    initial_state,
    payoff,
    validate_skeptic_move,
)
from .reality import (
    RealityDecision,
    SignPolicy,
    TieBreaker,
    TriggerReality,
    decide,
    preferred_sign,
    punishment_magnitude,
)
from .skeptics import (
    EpsilonSchedule,
    ScheduleKind,
    ScriptExhausted,
    SkepticStrategy,
    SkepticView,
    avoider_next,
    make_avoider,
    make_momentum,
    make_negative_v,
    make_replay,
    make_zero,
    momentum_next,
    negative_v_next,
    replay_next,
    zero_next,
)
from .traceio import (
    MalformedTrace,
    load_trace,
    read_trace,
    record_from_line,
    record_to_line,
    save_trace,
    skeptic_script,
    write_trace,
)

__version__ = "0.1.0"

__all__ = [
    "Divergence",
    "EpsilonSchedule",
    "ForecastMove",
    "ForecasterSpec",
    "FromFile",
    "GameOver",
    "GameState",
    "MalformedTrace",
    "NegativeQuadraticStake",
    "NegativeVariance",
    "NumericMode",
    "PROPERTY_NAMES",
    "PowerLaw",
    "PropertyOutcome",
    "PropertyReport",
    "PropertyStatus",
    "ProtocolError",
    "ProtocolVariant",
    "RealityDecision",
    "RealityMove",
    "RoundRecord",
    "Scalar",
    "ScheduleKind",
    "ScriptExhausted",
    "SequenceExhausted",
    "SignPolicy",
    "SkepticMove",
    "SkepticStrategy",
    "SkepticView",
    "TieBreaker",
    "TriggerReality",
    "Verdict",
    "analyze_trace",
    "apply_round",
    "avoider_next",
    "check_properties",
    "classify_divergence",
    "decide",
    "initial_state",
    "kolmogorov_partial_sum",
    "load_trace",
    "load_variance_file",
    "make_avoider",
    "make_momentum",
    "make_negative_v",
    "make_replay",
    "make_zero",
    "momentum_next",
    "negative_v_next",
    "parse_rational",
    "payoff",
    "preferred_sign",
    "punishment_magnitude",
    "read_trace",
    "record_from_line",
    "record_to_line",
    "replay_next",
    "report_to_doc",
    "run_game",
    "save_trace",
    "skeptic_script",
    "standard_matchup",
    "validate_skeptic_move",
    "variance_at",
    "verdict_document",
    "verdict_to_doc",
    "write_trace",
    "zero_next",
]
