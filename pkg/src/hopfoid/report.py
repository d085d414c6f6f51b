"""Check records, verdict tallies and the JSON report format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .algebra import INF, NCElement

SCHEMA_VERSION = "hopfoid-report/1"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive-window"


def _horizon(v) -> Optional[int]:
    if v is None or v == INF:
        return None
    return int(v)


@dataclass
class CheckRecord:
    check_id: str
    statement: str
    verdict: str
    window: str
    valid_to: Optional[int] = None
    witness: Optional[dict] = None
    details: Dict[str, Any] = field(default_factory=dict)
    timing: Optional[float] = None

    def to_json(self, timing=False) -> dict:
        out = {
            "check_id": self.check_id,
            "statement": self.statement,
            "verdict": self.verdict,
            "window": self.window,
            "valid_to": self.valid_to,
            "witness": self.witness,
            "details": self.details,
        }
        if timing and self.timing is not None:
            out["timing"] = round(self.timing, 3)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "CheckRecord":
        return cls(
            check_id=d["check_id"],
            statement=d["statement"],
            verdict=d["verdict"],
            window=d["window"],
            valid_to=d.get("valid_to"),
            witness=d.get("witness"),
            details=d.get("details", {}),
            timing=d.get("timing"),
        )


class Tally:
    """Accumulates per-instance outcomes for one check.

    ``fail`` wins over ``inconclusive`` which wins over ``pass``.  The first
    failing instance is kept as the witness.
    """

    def __init__(self, check_id: str, statement: str, window: str):
        self.check_id = check_id
        self.statement = statement
        self.window = window
        self.n_pass = 0
        self.n_fail = 0
        self.n_inconclusive = 0
        self.n_skipped = 0
        self.horizon = INF
        self.witness: Optional[dict] = None
        self.inconclusive_example: Optional[dict] = None
        self.details: Dict[str, Any] = {}

    def ok(self, horizon=INF):
        self.n_pass += 1
        self.horizon = min(self.horizon, horizon)

    def fail(self, witness: Any, note: str = "", horizon=INF):
        self.n_fail += 1
        self.horizon = min(self.horizon, horizon)
        if self.witness is None:
            self.witness = serialize_witness(witness, note)

    def inconclusive(self, what: Any = None, note: str = ""):
        self.n_inconclusive += 1
        if self.inconclusive_example is None and what is not None:
            self.inconclusive_example = serialize_witness(what, note)

    def skip(self, n: int = 1):
        self.n_skipped += n

    def outcome(self, good: bool, witness: Any = None, note: str = "", horizon=INF, finite=True):
        """Record a membership-style outcome: a miss fails on finite tracks only."""
        if horizon != INF and horizon < 0:
            self.inconclusive(witness, "validity horizon below zero")
        elif good:
            self.ok(horizon)
        elif finite:
            self.fail(witness, note, horizon)
        else:
            self.inconclusive(witness, note or "not reached inside the window")

    def identity(self, residue: NCElement, witness: Any = None, note: str = ""):
        """Record an element identity ``residue == 0`` on its validity horizon."""
        if residue.valid != INF and residue.valid < 0:
            self.inconclusive(witness, "validity horizon below zero")
        elif residue.is_zero():
            self.ok(residue.valid)
        else:
            w = witness if witness is not None else residue
            self.fail({"instance": _ser(w), "residue": _ser(residue)}, note, residue.valid)

    def record(self) -> CheckRecord:
        if self.n_fail:
            verdict = FAIL
        elif self.n_inconclusive:
            verdict = INCONCLUSIVE
        else:
            verdict = PASS
        details = dict(self.details)
        details.update(
            {
                "instances_pass": self.n_pass,
                "instances_fail": self.n_fail,
                "instances_inconclusive": self.n_inconclusive,
                "instances_skipped_outside_window": self.n_skipped,
            }
        )
        if self.inconclusive_example is not None and verdict != FAIL:
            details["inconclusive_example"] = self.inconclusive_example
        return CheckRecord(
            self.check_id,
            self.statement,
            verdict,
            self.window,
            _horizon(self.horizon),
            self.witness,
            details,
        )


def _ser(x: Any):
    if isinstance(x, NCElement):
        return x.serialize()
    if isinstance(x, dict):
        return {str(k): _ser(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_ser(v) for v in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


def serialize_witness(x: Any, note: str = "") -> dict:
    out = {"value": _ser(x)}
    if note:
        out["note"] = note
    return out


@dataclass
class Report:
    config: Dict[str, Any]
    suites: Dict[str, List[CheckRecord]] = field(default_factory=dict)
    notes: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def add(self, suite: str, rec: CheckRecord):
        self.suites.setdefault(suite, []).append(rec)

    def records(self) -> List[CheckRecord]:
        return [r for s in sorted(self.suites) for r in self.suites[s]]

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for r in self.records():
            out[r.verdict] += 1
        return out

    def to_json(self, timing=False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "config": self.config,
            "notes": self.notes,
            "error": self.error,
            "summary": self.counts(),
            "suites": {
                name: [r.to_json(timing) for r in sorted(recs, key=lambda r: r.check_id)]
                for name, recs in sorted(self.suites.items())
            },
        }

    def dumps(self, timing=False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        rep = cls(config=d["config"], notes=d.get("notes", {}), error=d.get("error"))
        for name, recs in d["suites"].items():
            rep.suites[name] = [CheckRecord.from_json(r) for r in recs]
        return rep


def emit_report(report: Report, path, timing=False) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report.dumps(timing))
