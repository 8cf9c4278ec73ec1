"""Command-line front end: run matchups, verify the build, sweep grids.

Exit codes: 0 success, 1 verification failure, 2 configuration error
(bad flags, bad spec strings, unreadable or invalid input files,
illegal moves for the variant), 3 output I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence, TextIO, Union

from .analysis import analyze_trace, check_properties, verdict_document
from .forecasters import (
    ForecasterSpec,
    FromFile,
    NegativeVariance,
    PowerLaw,
    SequenceExhausted,
    load_variance_file,
)
from .game import run_game
from .numeric import NumericMode, parse_rational
from .protocol import NegativeQuadraticStake, ProtocolVariant, SkepticMove
from .reality import SignPolicy, TriggerReality
from .skeptics import (
    EpsilonSchedule,
    ScriptExhausted,
    SkepticStrategy,
    make_avoider,
    make_momentum,
    make_negative_v,
    make_replay,
    make_zero,
)
from .traceio import MalformedTrace, load_trace, save_trace, skeptic_script

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3

FORECASTER_HEADS = ("powerlaw", "constant", "file")
SKEPTIC_HEADS = ("zero", "avoider", "momentum", "negv", "replay")


class ParseError(Exception):
    """Spec-string rejection, carrying the offset and what was expected."""

    def __init__(self, position: int, expected: str):
        super().__init__(f"column {position}: expected {expected}")
        self.position = position
        self.expected = expected


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ZeroSpec:
    pass


@dataclass(frozen=True)
class AvoiderSpec:
    schedule: EpsilonSchedule


@dataclass(frozen=True)
class MomentumSpec:
    stake: Fraction


@dataclass(frozen=True)
class NegativeVSpec:
    stake: Fraction


@dataclass(frozen=True)
class ReplaySpec:
    path: str


SkepticSpec = Union[ZeroSpec, AvoiderSpec, MomentumSpec, NegativeVSpec, ReplaySpec]


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def take_until(self, stop: str) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stop:
            self.pos += 1
        return self.text[start : self.pos]

    def eat(self, literal: str, expected: str | None = None) -> None:
        if not self.text.startswith(literal, self.pos):
            raise ParseError(self.pos, expected or repr(literal))
        self.pos += len(literal)

    def rest(self) -> str:
        out = self.text[self.pos :]
        self.pos = len(self.text)
        return out

    def finish(self) -> None:
        if self.pos != len(self.text):
            raise ParseError(self.pos, "end of input")


def _rational_field(cur: _Cursor, name: str) -> Fraction:
    cur.eat(f"{name}=", expected=f"'{name}='")
    start = cur.pos
    token = cur.take_until(",")
    try:
        return parse_rational(token)
    except ValueError:
        raise ParseError(start, "rational literal") from None


def _int_field(cur: _Cursor, name: str) -> int:
    cur.eat(f"{name}=", expected=f"'{name}='")
    start = cur.pos
    token = cur.take_until(",")
    try:
        return int(token, 10)
    except ValueError:
        raise ParseError(start, "integer") from None


def parse_spec(text: str) -> Union[ForecasterSpec, SkepticSpec]:
    """Parse a forecaster or skeptic spec string.

    Grammar (fields in the listed order):
      powerlaw:c=<rat>,p=<int> | constant:c=<rat> | file:<path>
      zero | avoider:eps=<rat>[,decay=const|geo[,ratio=<rat>]]
      momentum:m=<rat> | negv:v=<rat> | replay:<path>
    Rational literals are "p/q" or decimal strings, parsed exactly.
    """
    cur = _Cursor(text)
    head = cur.take_until(":")
    if head == "zero":
        cur.finish()
        return ZeroSpec()
    if head not in FORECASTER_HEADS + SKEPTIC_HEADS:
        raise ParseError(0, "one of " + ", ".join(FORECASTER_HEADS + SKEPTIC_HEADS))
    cur.eat(":")

    if head in ("file", "replay"):
        path = cur.rest()
        if not path:
            raise ParseError(cur.pos, "path")
        return FromFile(path, ()) if head == "file" else ReplaySpec(path)

    if head == "powerlaw":
        c = _rational_field(cur, "c")
        cur.eat(",", expected="','")
        p = _int_field(cur, "p")
        cur.finish()
        return PowerLaw(c, p)
    if head == "constant":
        c = _rational_field(cur, "c")
        cur.finish()
        return PowerLaw(c, 0)
    if head == "momentum":
        m = _rational_field(cur, "m")
        cur.finish()
        return MomentumSpec(m)
    if head == "negv":
        v = _rational_field(cur, "v")
        cur.finish()
        return NegativeVSpec(v)

    eps = _rational_field(cur, "eps")
    if cur.pos == len(cur.text):
        return AvoiderSpec(EpsilonSchedule.constant(eps))
    cur.eat(",", expected="','")
    cur.eat("decay=", expected="'decay='")
    start = cur.pos
    decay = cur.take_until(",")
    if decay == "const":
        cur.finish()
        return AvoiderSpec(EpsilonSchedule.constant(eps))
    if decay != "geo":
        raise ParseError(start, "'const' or 'geo'")
    cur.eat(",", expected="','")
    ratio = _rational_field(cur, "ratio")
    cur.finish()
    return AvoiderSpec(EpsilonSchedule.geometric(eps, ratio))


@dataclass(frozen=True)
class RunConfig:
    forecaster: str
    skeptic: str
    variant: ProtocolVariant = ProtocolVariant.STANDARD
    mode: NumericMode = NumericMode.EXACT
    horizon: int = 1
    sign_policy: SignPolicy = SignPolicy.PREFER_POSITIVE
    stop_on_bankruptcy: bool = False
    out: str = ""


@dataclass(frozen=True)
class _PreparedRun:
    config: RunConfig
    forecaster: ForecasterSpec
    skeptic: SkepticStrategy


def _resolve_forecaster(text: str, horizon: int) -> ForecasterSpec:
    spec = parse_spec(text)
    if isinstance(spec, FromFile):
        try:
            spec = load_variance_file(spec.path)
        except OSError as exc:
            raise ConfigError(f"cannot read variance file: {exc}") from exc
        except (NegativeVariance, ValueError) as exc:
            raise ConfigError(f"bad variance file: {exc}") from exc
        if len(spec.values) < horizon:
            raise ConfigError(
                f"variance file has {len(spec.values)} rounds, need {horizon}"
            )
        return spec
    if isinstance(spec, PowerLaw):
        return spec
    raise ConfigError(f"{text!r} is a skeptic spec, expected a forecaster")


def _resolve_skeptic(
    text: str, mode: NumericMode, variant: ProtocolVariant
) -> SkepticStrategy:
    spec = parse_spec(text)
    if isinstance(spec, ZeroSpec):
        return make_zero()
    if isinstance(spec, AvoiderSpec):
        return make_avoider(spec.schedule)
    if isinstance(spec, MomentumSpec):
        return make_momentum(spec.stake)
    if isinstance(spec, NegativeVSpec):
        if variant is ProtocolVariant.STANDARD:
            raise ConfigError(
                "NegativeQuadraticStake: negv plays stake_quadratic "
                f"{spec.stake} < 0, illegal under the standard variant"
            )
        try:
            return make_negative_v(spec.stake)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if isinstance(spec, ReplaySpec):
        try:
            script = skeptic_script(load_trace(spec.path))
        except OSError as exc:
            raise ConfigError(f"cannot read replay trace: {exc}") from exc
        except MalformedTrace as exc:
            raise ConfigError(f"bad replay trace: {exc}") from exc
        if mode is NumericMode.EXACT and any(
            isinstance(x, float) for move in script for x in move
        ):
            raise ConfigError("float-valued replay script cannot drive exact mode")
        if variant is ProtocolVariant.STANDARD and any(
            move.stake_quadratic < 0 for move in script
        ):
            raise ConfigError(
                "NegativeQuadraticStake: replay script stakes a negative "
                "quadratic term, illegal under the standard variant"
            )
        return make_replay(script)
    raise ConfigError(f"{text!r} is a forecaster spec, expected a skeptic")


def _prepare(config: RunConfig) -> _PreparedRun:
    if config.horizon < 1:
        raise ConfigError("rounds must be >= 1")
    if not config.out:
        raise ConfigError("missing output path")
    try:
        forecaster = _resolve_forecaster(config.forecaster, config.horizon)
        skeptic = _resolve_skeptic(config.skeptic, config.mode, config.variant)
    except ParseError as exc:
        raise ConfigError(f"bad spec string: {exc}") from exc
    return _PreparedRun(config, forecaster, skeptic)


def _execute(prepared: _PreparedRun):
    cfg = prepared.config
    try:
        trace = run_game(
            prepared.forecaster,
            prepared.skeptic,
            TriggerReality(cfg.variant, cfg.sign_policy),
            cfg.horizon,
            cfg.mode,
            cfg.variant,
            stop_on_bankruptcy=cfg.stop_on_bankruptcy,
        )
    except NegativeQuadraticStake as exc:
        raise ConfigError(f"NegativeQuadraticStake: {exc}") from exc
    except (ScriptExhausted, SequenceExhausted) as exc:
        raise ConfigError(str(exc)) from exc
    verdict = analyze_trace(trace)
    return trace, verdict


def _emit(prepared: _PreparedRun, trace, verdict) -> None:
    save_trace(trace, prepared.config.out)
    report = check_properties(verdict, trace)
    Path(prepared.config.out + ".verdict.json").write_text(
        verdict_document(verdict, report), encoding="utf-8"
    )


def run_command(config: RunConfig, *, quiet: bool = False) -> int:
    try:
        prepared = _prepare(config)
        trace, verdict = _execute(prepared)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        _emit(prepared, trace, verdict)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    if not quiet:
        print(
            f"{len(trace)} rounds -> {config.out}; "
            f"triggers={len(verdict.trigger_rounds)}, "
            f"bankrupt_at={verdict.bankrupt_at}"
        )
    return EXIT_OK


def verify_command(
    criteria: dict[str, Callable[[], tuple[bool, str]]] | None = None,
    stream: TextIO | None = None,
) -> int:
    from . import acceptance

    table = acceptance.CRITERIA if criteria is None else criteria
    out = stream if stream is not None else sys.stdout
    width = max(len(name) for name in table) if table else 0
    failures = 0
    for name, check in table.items():
        start = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as exc:
            passed, detail = False, f"error: {exc!r}"
        elapsed = time.perf_counter() - start
        mark = "pass" if passed else "FAIL"
        failures += not passed
        print(f"{name:<{width}}  {mark}  {elapsed:7.2f}s  {detail}", file=out)
    print(
        f"{len(table) - failures}/{len(table)} criteria passed", file=out
    )
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


_GRID_KEYS = {
    "id",
    "forecaster",
    "skeptic",
    "variant",
    "mode",
    "rounds",
    "sign_policy",
    "stop_on_bankruptcy",
    "out",
}


def _grid_entry(entry: object, index: int) -> tuple[str, RunConfig]:
    if not isinstance(entry, dict):
        raise ConfigError(f"grid entry {index} is not an object")
    unknown = set(entry) - _GRID_KEYS
    if unknown:
        raise ConfigError(f"grid entry {index}: unknown keys {sorted(unknown)}")
    for key in ("forecaster", "skeptic", "rounds", "out"):
        if key not in entry:
            raise ConfigError(f"grid entry {index}: missing {key!r}")
    try:
        variant = ProtocolVariant(entry.get("variant", "standard"))
        mode = NumericMode(entry.get("mode", "exact"))
        policy = SignPolicy(entry.get("sign_policy", "positive"))
    except ValueError as exc:
        raise ConfigError(f"grid entry {index}: {exc}") from exc
    rounds = entry["rounds"]
    if not isinstance(rounds, int) or isinstance(rounds, bool):
        raise ConfigError(f"grid entry {index}: rounds must be an integer")
    config = RunConfig(
        forecaster=str(entry["forecaster"]),
        skeptic=str(entry["skeptic"]),
        variant=variant,
        mode=mode,
        horizon=rounds,
        sign_policy=policy,
        stop_on_bankruptcy=bool(entry.get("stop_on_bankruptcy", True)),
        out=str(entry["out"]),
    )
    return str(entry.get("id", f"run{index}")), config


def sweep_command(grid_path: str, *, quiet: bool = False) -> int:
    try:
        doc = json.loads(Path(grid_path).read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"config error: cannot read grid: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except json.JSONDecodeError as exc:
        print(f"config error: grid is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if not isinstance(doc, list) or not doc:
            raise ConfigError("grid must be a non-empty JSON array")
        runs = []
        for i, entry in enumerate(doc, start=1):
            run_id, config = _grid_entry(entry, i)
            runs.append((run_id, _prepare(config)))
        ids = [run_id for run_id, _ in runs]
        outs = [prepared.config.out for _, prepared in runs]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate config ids")
        if len(set(outs)) != len(outs):
            raise ConfigError("duplicate out paths")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    rows = []
    for run_id, prepared in runs:
        try:
            trace, verdict = _execute(prepared)
        except ConfigError as exc:
            print(f"config error: {run_id}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        try:
            _emit(prepared, trace, verdict)
        except OSError as exc:
            print(f"i/o error: {run_id}: {exc}", file=sys.stderr)
            return EXIT_IO
        rows.append(
            (
                run_id,
                str(verdict.max_capital),
                "" if verdict.bankrupt_at is None else str(verdict.bankrupt_at),
                str(len(verdict.trigger_rounds)),
                str(verdict.kolmogorov_sum_at_horizon),
            )
        )

    summary_path = grid_path + ".summary.csv"
    try:
        with open(summary_path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                ["id", "max_capital", "bankrupt_at", "trigger_count", "kolmogorov_sum"]
            )
            writer.writerows(rows)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    if not quiet:
        print(f"{len(rows)} runs -> {summary_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forecastgame",
        description="Deterministic forecasting-game simulator and verifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="play one matchup, write trace and verdict")
    run.add_argument("--forecaster", required=True)
    run.add_argument("--skeptic", required=True)
    run.add_argument("--variant", choices=["standard", "modified"], default="standard")
    run.add_argument("--mode", choices=["exact", "float"], default="exact")
    run.add_argument("--rounds", type=int, required=True)
    run.add_argument(
        "--sign-policy", choices=["positive", "alternate"], default="positive"
    )
    run.add_argument("--stop-on-bankruptcy", action="store_true")
    run.add_argument("--out", required=True)

    sub.add_parser("verify", help="run the bundled acceptance criteria")

    sweep = sub.add_parser("sweep", help="run a JSON grid of matchups")
    sweep.add_argument("--grid", required=True)

    return parser


def main(argv: Sequence[str] | None = None, *, quiet: bool = False) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG

    if args.command == "run":
        config = RunConfig(
            forecaster=args.forecaster,
            skeptic=args.skeptic,
            variant=ProtocolVariant(args.variant),
            mode=NumericMode(args.mode),
            horizon=args.rounds,
            sign_policy=SignPolicy(args.sign_policy),
            stop_on_bankruptcy=args.stop_on_bankruptcy,
            out=args.out,
        )
        return run_command(config, quiet=quiet)
    if args.command == "verify":
        return verify_command()
    return sweep_command(args.grid, quiet=quiet)


if __name__ == "__main__":
    sys.exit(main())
