"""Check results, sweep bookkeeping and deterministic report serialization."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

import numpy as np

PASS = "pass"
FAIL = "fail"
DEGENERATE = "degenerate"
STATUSES = (PASS, FAIL, DEGENERATE)


def to_plain(value: Any) -> Any:
    """Convert numpy scalars/arrays (possibly nested in tuples) to plain Python.

    Length-1 arrays collapse to a float so one-dimensional cone vectors read
    as ordinary numbers in witnesses.
    """
    if isinstance(value, np.ndarray):
        if value.ndim == 0 or value.size == 1:
            return float(value.reshape(-1)[0])
        return tuple(to_plain(v) for v in value.tolist())
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (tuple, list)):
        return tuple(to_plain(v) for v in value)
    return value


@dataclass(frozen=True)
class Check:
    """Outcome of one axiom or property over a sampled sweep.

    ``margin`` is the worst signed slack seen (negative means violated);
    ``witness`` is the first failing tuple in sweep order, or an informative
    tuple for passing checks that compute something.
    """

    axiom_id: str
    status: str
    witness: tuple | None = None
    margin: float | None = None
    checked: int = 0

    def __post_init__(self):
        if self.witness is not None and not isinstance(self.witness, tuple):
            object.__setattr__(self, "witness", (self.witness,))
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError(f"failing check {self.axiom_id} needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        margin = self.margin
        if margin is not None and not math.isfinite(margin):
            margin = None
        witness = None if self.witness is None else list(_json_ready(self.witness))
        return {
            "axiom_id": self.axiom_id,
            "status": self.status,
            "witness": witness,
            "margin": None if margin is None else float(margin),
        }


def _json_ready(value):
    if isinstance(value, tuple):
        return [_json_ready(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


@dataclass
class Report:
    """An ordered list of checks for one suite."""

    suite: str
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def __getitem__(self, axiom_id: str) -> Check:
        for c in self.checks:
            if c.axiom_id == axiom_id:
                return c
        raise KeyError(axiom_id)

    def __contains__(self, axiom_id: str) -> bool:
        return any(c.axiom_id == axiom_id for c in self.checks)

    @property
    def summary(self) -> dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        """True when no check failed (degenerate checks are not failures)."""
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]


AxiomReport = Report


class Tally:
    """Accumulate margins of an inequality sweep into a single Check.

    A tuple fails when its margin is below ``-tol`` (at or below ``-tol`` when
    ``strict``). The witness is the first failing tuple in observation order,
    so callers control determinism by iterating in a fixed order.
    """

    def __init__(self, axiom_id: str, tol: float = 0.0, strict: bool = False):
        self.axiom_id = axiom_id
        self.tol = tol
        self.strict = strict
        self.worst = math.inf
        self.witness = None
        self.checked = 0

    def observe(self, margin: float, witness) -> None:
        self.checked += 1
        margin = float(margin)
        if margin < self.worst:
            self.worst = margin
        if self.witness is None and self._bad(margin):
            self.witness = witness

    def _bad(self, margin):
        return margin <= -self.tol if self.strict else margin < -self.tol

    def observe_bool(self, ok: bool, witness) -> None:
        self.observe(0.0 if ok else -math.inf, witness)

    def observe_array(self, margins: np.ndarray, witness_of) -> None:
        """Vectorized ``observe``: ``witness_of(flat_index)`` builds the witness."""
        margins = np.asarray(margins, dtype=float)
        if margins.size == 0:
            return
        flat = margins.reshape(-1)
        self.checked += flat.size
        low = float(flat.min())
        if low < self.worst:
            self.worst = low
        if self.witness is None:
            bad = np.flatnonzero(self._bad(flat))
            if bad.size:
                self.witness = witness_of(int(bad[0]))

    @property
    def failed(self) -> bool:
        return self.witness is not None

    def check(self) -> Check:
        margin = None if self.checked == 0 else self.worst
        if self.failed:
            return Check(self.axiom_id, FAIL, to_plain(self.witness), margin, self.checked)
        return Check(self.axiom_id, PASS, None, margin, self.checked)


def flag_check(axiom_id: str, flagged, checked: int) -> Check:
    """A soft check: degenerate when ``flagged`` holds a witness, else pass."""
    if flagged is not None:
        return Check(axiom_id, DEGENERATE, to_plain(flagged), None, checked)
    return Check(axiom_id, PASS, None, None, checked)


def emit_report(report: Report, fmt: str = "json") -> str:
    """Serialize a report as compact key-sorted JSON or one-line-per-check text.

    Output is byte-identical for identical reports apart from ``elapsed_ms``.
    """
    if fmt == "json":
        doc = {
            "suite": report.suite,
            "checks": [c.as_dict() for c in report.checks],
            "summary": report.summary,
            "elapsed_ms": round(float(report.elapsed_ms), 3),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
    if fmt == "text":
        lines = [f"suite {report.suite}"]
        for c in report.checks:
            line = f"{c.axiom_id:<24} {c.status.upper():<10}"
            if c.margin is not None:
                line += f" margin={c.margin!r}"
            if c.witness is not None:
                line += f" witness={c.witness!r}"
            lines.append(line.rstrip())
        s = report.summary
        lines.append(
            f"summary pass={s[PASS]} fail={s[FAIL]} degenerate={s[DEGENERATE]} "
            f"elapsed_ms={report.elapsed_ms:.3f}"
        )
        return "\n".join(lines)
    raise ValueError(f"unknown report format {fmt!r}")
