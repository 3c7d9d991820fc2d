"""Pass / flagged / fail classification of identities between Elements."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .superalg import Element, format_rational, render, sorted_terms

PRINTED = "printed"
SIGN_REVERSED = "{{pi,f},Theta} sign reversed"


class Status(str, Enum):
    PASS = "pass"
    FLAGGED = "flagged"
    FAIL = "fail"
    SKIPPED = "skipped"


_SEVERITY = {Status.PASS: 0, Status.SKIPPED: 0, Status.FLAGGED: 1, Status.FAIL: 2}


@dataclass(frozen=True)
class Reading:
    """One way of reading an identity lhs = rhs; the printed reading comes first."""

    label: str
    lhs: Element
    rhs: Element


@dataclass(frozen=True)
class Outcome:
    status: Status
    residual: Optional[str] = None
    note: str = ""


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    location: str
    params: Mapping[str, object] = field(default_factory=dict)
    status: Status = Status.PASS
    residual: Optional[str] = None
    note: str = ""

    def to_dict(self) -> Dict[str, object]:
        return {
            "check_id": self.check_id,
            "paper_location": self.location,
            "params": dict(self.params),
            "status": self.status.value,
            "residual": self.residual,
            "note": self.note,
        }


def fit_constant(lhs: Element, rhs: Element) -> Optional[Fraction]:
    """lambda with lhs = lambda * rhs, if one exists and is nonzero."""
    if not rhs or not lhs:
        return None
    mono, q = sorted_terms(rhs)[0]
    lam = lhs.coefficient(mono) / q
    if lam and lhs == rhs.scale(lam):
        return lam
    return None


def compare(readings: Sequence[Reading]) -> Outcome:
    printed = readings[0]
    residual = render(printed.lhs - printed.rhs)
    for r in readings:
        if r.lhs == r.rhs:
            if r is printed:
                return Outcome(Status.PASS, "0")
            return Outcome(Status.FLAGGED, residual, f"holds with {r.label}")
    for r in readings:
        lam = fit_constant(r.lhs, r.rhs)
        if lam is not None:
            note = f"holds up to constant {format_rational(lam)}"
            if r is not printed:
                note += f" with {r.label}"
            return Outcome(Status.FLAGGED, residual, note)
    return Outcome(Status.FAIL, residual)


def compare_by_hbar(readings: Sequence[Reading]) -> Outcome:
    """Classify each hbar order separately and combine."""
    split = [(r, r.lhs.hbar_parts(), r.rhs.hbar_parts()) for r in readings]
    orders = sorted({k for _, lp, rp in split for k in list(lp) + list(rp)})
    zero = readings[0].lhs.table.zero()
    parts = []
    for k in orders:
        order_readings = [Reading(r.label, lp.get(k, zero), rp.get(k, zero)) for r, lp, rp in split]
        parts.append((k, compare(order_readings)))
    status = worst(o.status for _, o in parts)
    if status is Status.PASS:
        return Outcome(Status.PASS, "0")
    notes = [f"hbar^{k}: {o.status.value}" + (f", {o.note}" if o.note else "") for k, o in parts]
    return Outcome(status, render(readings[0].lhs - readings[0].rhs), "; ".join(notes))


def worst(statuses: Iterable[Status]) -> Status:
    result = Status.PASS
    for s in statuses:
        if _SEVERITY[s] > _SEVERITY[result]:
            result = s
    return result


def combine(cases: Sequence[Tuple[Mapping[str, object], Outcome]]) -> Outcome:
    """Aggregate a parameter grid: worst status, first failing case, distinct notes."""
    if not cases:
        return Outcome(Status.SKIPPED, None, "empty parameter grid")
    status = worst(o.status for _, o in cases)
    if status is Status.PASS:
        return Outcome(Status.PASS, "0")
    notes: List[str] = []
    residual = None
    for params, o in cases:
        if o.status is status and residual is None:
            residual = o.residual
            where = ", ".join(f"{k}={v}" for k, v in params.items())
            notes.append(f"first {status.value} at {where}" if where else f"first {status.value}")
        if o.note and o.note not in notes:
            notes.append(o.note)
    return Outcome(status, residual, "; ".join(notes))
