"""Trace serialization: one JSON object per line, one line per round.

Line fields, in order: n, v, M, V, x, payoff, K, S, triggered, status.
Scalars are "p/q" strings in exact mode and plain numbers in float mode;
status is "running" until the first round whose capital lands below zero,
then "bankrupt@R" forever after (R = that first round). Status is derived
from the capital column on both write and read, so a RoundRecord carries
no redundant state of its own.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, TextIO

from .numeric import scalar_from_json, scalar_to_json
from .protocol import RoundRecord, SkepticMove


class MalformedTrace(Exception):
    """Trace violates the ledger identities or round numbering."""


TRACE_FIELDS = ("n", "v", "M", "V", "x", "payoff", "K", "S", "triggered", "status")


def record_to_line(record: RoundRecord, bankrupt_at: int | None) -> str:
    doc = {
        "n": record.n,
        "v": scalar_to_json(record.variance),
        "M": scalar_to_json(record.stake_linear),
        "V": scalar_to_json(record.stake_quadratic),
        "x": scalar_to_json(record.outcome),
        "payoff": scalar_to_json(record.payoff),
        "K": scalar_to_json(record.capital_after),
        "S": scalar_to_json(record.outcome_sum_after),
        "triggered": record.triggered,
        "status": (
            "running"
            if bankrupt_at is None or record.n < bankrupt_at
            else f"bankrupt@{bankrupt_at}"
        ),
    }
    return json.dumps(doc)


def record_from_line(line: str) -> RoundRecord:
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedTrace(f"not a JSON trace line: {exc}") from exc
    missing = [key for key in TRACE_FIELDS if key not in doc]
    if missing:
        raise MalformedTrace(f"trace line missing fields {missing}")
    return RoundRecord(
        n=doc["n"],
        variance=scalar_from_json(doc["v"]),
        stake_linear=scalar_from_json(doc["M"]),
        stake_quadratic=scalar_from_json(doc["V"]),
        outcome=scalar_from_json(doc["x"]),
        payoff=scalar_from_json(doc["payoff"]),
        capital_after=scalar_from_json(doc["K"]),
        outcome_sum_after=scalar_from_json(doc["S"]),
        triggered=doc["triggered"],
    )


def write_trace(records: Iterable[RoundRecord], sink: TextIO) -> None:
    bankrupt_at = None
    for record in records:
        if bankrupt_at is None and record.capital_after < 0:
            bankrupt_at = record.n
        sink.write(record_to_line(record, bankrupt_at) + "\n")


def save_trace(records: Iterable[RoundRecord], path: str | Path) -> None:
    with open(path, "w") as sink:
        write_trace(records, sink)


def read_trace(source: TextIO) -> list[RoundRecord]:
    return [record_from_line(line) for line in source if line.strip()]


def load_trace(path: str | Path) -> list[RoundRecord]:
    with open(path) as source:
        return read_trace(source)


def skeptic_script(records: Iterable[RoundRecord]) -> list[SkepticMove]:
    """The Skeptic-move columns of a trace, for replay."""
    return [SkepticMove(r.stake_linear, r.stake_quadratic) for r in records]
