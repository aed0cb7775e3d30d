"""Step traces for the doubling/halving algorithms and their renderers.

Every operation in :mod:`duplation.intops` and :mod:`duplation.realops`
accepts an optional ``trace`` sink (a fresh :class:`TraceLog`).  The sink
captures one event per algorithm step plus the inputs, the configuration and
the final result, and can be rendered as a text table (including the classic
Rhind-papyrus multiplication layout) or serialized to JSON.  Rendering is a
pure function of the log: identical logs give byte-identical output.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Any

from .errors import TraceSchemaError

__all__ = [
    "ALGORITHMS",
    "PAYLOAD_FIELDS",
    "TraceEvent",
    "TraceLog",
    "render_rhind",
    "render_division",
    "render_heron",
    "render_log_digits",
    "render_briggs",
    "render_power",
    "to_json",
]

JSON_SCHEMA_VERSION = 1

ALGORITHMS = (
    "egyptian_mul",
    "div_qr",
    "heron",
    "pow_rational",
    "pow_real",
    "log_base",
    "briggs",
)

# Fixed payload field set per algorithm; record() enforces it.
PAYLOAD_FIELDS = {
    "egyptian_mul": ("power", "doubled", "marked"),
    "div_qr": ("multiple", "digit", "remainder", "quotient"),
    "heron": ("estimate", "change"),
    "pow_rational": ("phase", "p", "q", "base", "accumulator"),
    "pow_real": ("phase", "exponent", "base", "accumulator"),
    "log_base": ("digit", "root", "power_reached", "weight"),
    "briggs": ("value",),
}


@dataclass(frozen=True)
class TraceEvent:
    """One recorded algorithm step; ``step`` ordinals are contiguous from 1."""

    algorithm: str
    step: int
    payload: dict[str, Any]


@dataclass
class TraceLog:
    """Ordered step records for a single traced computation.

    A log is exclusively owned by one computation: the operation calls
    ``begin`` once, ``record`` per step and ``finish`` with the value it
    returns.  Reusing a sink raises :class:`TraceSchemaError`.
    """

    algorithm: str | None = None
    inputs: dict[str, Any] = field(default_factory=dict)
    config: dict[str, Any] | None = None
    events: list[TraceEvent] = field(default_factory=list)
    result: Any = None
    _finished: bool = field(default=False, repr=False)

    def begin(self, algorithm: str, inputs: dict[str, Any], config: dict[str, Any] | None = None) -> None:
        if self.algorithm is not None:
            raise TraceSchemaError("trace sink already used; pass a fresh TraceLog per computation")
        if algorithm not in PAYLOAD_FIELDS:
            raise TraceSchemaError(f"unknown algorithm {algorithm!r}")
        self.algorithm = algorithm
        self.inputs = dict(inputs)
        self.config = dict(config) if config is not None else None

    def record(self, **payload: Any) -> None:
        if self.algorithm is None or self._finished:
            raise TraceSchemaError("record() outside of an active computation")
        expected = PAYLOAD_FIELDS[self.algorithm]
        if tuple(payload) != expected:
            raise TraceSchemaError(
                f"payload fields {tuple(payload)} do not match the {self.algorithm} schema {expected}"
            )
        self.events.append(TraceEvent(self.algorithm, len(self.events) + 1, payload))

    def finish(self, result: Any) -> None:
        if self.algorithm is None or self._finished:
            raise TraceSchemaError("finish() outside of an active computation")
        self.result = result
        self._finished = True


def _require(log: TraceLog, algorithm: str) -> None:
    if log.algorithm != algorithm:
        raise TraceSchemaError(f"expected a {algorithm} log, got {log.algorithm!r}")
    if not log._finished:
        raise TraceSchemaError("log is incomplete; the traced computation did not finish")


def render_rhind(log: TraceLog) -> str:
    """Render an egyptian_mul log as the classic two-column doubling table.

    Marked rows carry a backslash; the rule and the Total line follow.  The
    layout is frozen by the golden fixture under tests/.
    """
    _require(log, "egyptian_mul")
    b, total = log.inputs["b"], log.result
    rows = [(e.payload["power"], e.payload["doubled"], e.payload["marked"]) for e in log.events]
    wp = max([len(str(b))] + [len(str(p)) for p, _, _ in rows]) + 3
    wv = max([len(str(total))] + [len(str(v)) for _, v, _ in rows]) + 4
    backslash = "\\"
    lines = [f"{backslash if marked else '':>5}{p:>{wp}}{v:>{wv}}" for p, v, marked in rows]
    lines.append("-" * (5 + wp + wv))
    lines.append(f"{'Total':>5}{b:>{wp}}{total:>{wv}}")
    return "\n".join(lines) + "\n"


def render_division(log: TraceLog) -> str:
    """Render a div_qr log as the residue/digit subtraction chain."""
    _require(log, "div_qr")
    a, d = log.inputs["a"], log.inputs["d"]
    steps = [e.payload for e in log.events]
    wm = max([1] + [len(str(s["multiple"])) for s in steps])
    wr = max(len(str(a)), *[len(str(s["remainder"])) for s in steps]) if steps else len(str(a))
    lines = [f"{a} divided by {d}", f"residue {a:>{wr}}"]
    for s in steps:
        lines.append(f"{s['multiple']:>{wm + 2}}  digit {s['digit']}  residue {s['remainder']:>{wr}}")
    lines.append(f"quotient {log.result.quotient}  remainder {log.result.remainder}")
    return "\n".join(lines) + "\n"


def render_heron(log: TraceLog) -> str:
    """Render a heron log: one line per iterate with its step size."""
    _require(log, "heron")
    lines = [f"square root of {log.inputs['a']!r}"]
    for e in log.events:
        lines.append(f"{e.step:>3}  x = {e.payload['estimate']!r}  step = {e.payload['change']!r}")
    lines.append(f"result {log.result!r}")
    return "\n".join(lines) + "\n"


def render_log_digits(log: TraceLog) -> str:
    """Render a log_base log: one line per extracted binary digit."""
    _require(log, "log_base")
    lines = [f"log base {log.inputs['b']!r} of {log.inputs['a']!r}"]
    for e in log.events:
        p = e.payload
        lines.append(
            f"{e.step:>3}  d = {p['digit']}  root = {p['root']!r}"
            f"  reached = {p['power_reached']!r}  weight = {p['weight']!r}"
        )
    lines.append(f"result {log.result.value!r}")
    return "\n".join(lines) + "\n"


def render_briggs(log: TraceLog) -> str:
    """Render a briggs log: one line per successive square root above 1."""
    _require(log, "briggs")
    lines = [f"iterated square roots of {log.inputs['b']!r}"]
    for e in log.events:
        lines.append(f"{e.step:>3}  {e.payload['value']!r}")
    lines.append(f"count {log.result.count}")
    return "\n".join(lines) + "\n"


def render_power(log: TraceLog) -> str:
    """Render a pow_rational or pow_real log: one line per exponent step."""
    if log.algorithm not in ("pow_rational", "pow_real"):
        raise TraceSchemaError(f"expected a power log, got {log.algorithm!r}")
    if not log._finished:
        raise TraceSchemaError("log is incomplete; the traced computation did not finish")
    lines = [" ".join(f"{k}={v!r}" for k, v in log.inputs.items())]
    for e in log.events:
        p = e.payload
        if log.algorithm == "pow_rational":
            head = f"p/q = {p['p']}/{p['q']}"
        else:
            head = f"t = {p['exponent']!r}"
        lines.append(
            f"{e.step:>3}  [{p['phase']}]  {head}  base = {p['base']!r}  acc = {p['accumulator']!r}"
        )
    lines.append(f"result {log.result!r}")
    return "\n".join(lines) + "\n"


def _jsonable(value: Any) -> Any:
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def to_json(log: TraceLog) -> str:
    """Serialize a finished log as a stable JSON document.

    Field order is fixed; floats use the shortest representation that parses
    back to the identical binary64 value.
    """
    if log.algorithm is None or not log._finished:
        raise TraceSchemaError("only a finished log can be serialized")
    doc = {
        "schema": JSON_SCHEMA_VERSION,
        "algorithm": log.algorithm,
        "inputs": _jsonable(log.inputs),
        "config": _jsonable(log.config),
        "events": [{"step": e.step, **_jsonable(e.payload)} for e in log.events],
        "result": _jsonable(log.result),
    }
    return json.dumps(doc, indent=2) + "\n"
