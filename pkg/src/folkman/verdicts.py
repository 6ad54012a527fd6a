"""Append-only ledger of Folkman-number verdicts and the bounds they imply.

Only direct facts are stored (a witness order, an empty order, an r0 value).
Everything derivable from them (shifts by joining cliques, the r0 equality,
sandwich brackets) is recomputed whenever bounds are requested.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .arrow import ArrowTuple, normalize_tuple


class VerdictError(ValueError):
    pass


@dataclass(frozen=True)
class FolkmanVerdict:
    """F_v(tuple; q) is at most ``upper_witness_order`` and exceeds ``lower_empty_order``."""

    tuple: ArrowTuple
    q: int
    upper_witness_order: int | None = None
    lower_empty_order: int | None = None
    source: str = "computed"
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "tuple", normalize_tuple(self.tuple))
        if self.upper_witness_order is None and self.lower_empty_order is None:
            raise VerdictError("a verdict needs a witness order or an empty order")
        if (
            self.upper_witness_order is not None
            and self.lower_empty_order is not None
            and self.lower_empty_order >= self.upper_witness_order
        ):
            raise VerdictError("empty order must be below the witness order")

    @property
    def status(self) -> str:
        up, low = self.upper_witness_order, self.lower_empty_order
        if up is not None and low is not None:
            return "established" if low == up - 1 else "bounded"
        return "upper-only" if up is not None else "lower-only"

    def to_json(self) -> dict:
        d = asdict(self)
        d["tuple"] = list(self.tuple.parts)
        d["kind"] = "fv"
        return d


@dataclass(frozen=True)
class WeakVerdict:
    """The same kind of claim for wFv(m|p|q), the uni(m|p) analogue."""

    m: int
    p: int
    q: int
    upper_witness_order: int | None = None
    lower_empty_order: int | None = None
    source: str = "computed"
    note: str = ""

    def to_json(self) -> dict:
        return {"kind": "wfv", **asdict(self)}


@dataclass(frozen=True)
class R0Verdict:
    p: int
    r0: int
    source: str = "computed"
    note: str = ""

    def to_json(self) -> dict:
        return {"kind": "r0", **asdict(self)}


@dataclass(frozen=True)
class Bounds:
    low: int | None = None
    high: int | None = None
    reasons: tuple[str, ...] = field(default=(), compare=False)

    @property
    def exact(self) -> int | None:
        if self.low is not None and self.low == self.high:
            return self.low
        return None

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        lo = "?" if self.low is None else str(self.low)
        hi = "?" if self.high is None else str(self.high)
        return f"[{lo}, {hi}]"


def _tmax(a, b):
    return b if a is None else a if b is None else max(a, b)


def _tmin(a, b):
    return b if a is None else a if b is None else min(a, b)


# the canonical q = m-1 values with p <= 4 that no closed form covers
_SPORADIC = {
    ((2, 2, 2), 3): 11,
    ((2, 2, 2, 2), 4): 11,
    ((2, 2, 3), 4): 14,
    ((3, 3), 4): 14,
}


def _exists(t: ArrowTuple, q: int) -> bool:
    return t.parts != (1,) and q > t.p


class VerdictLedger:
    def __init__(self, path=None):
        self.path = path
        self.fv: list[FolkmanVerdict] = []
        self.wfv: list[WeakVerdict] = []
        self.r0: list[R0Verdict] = []
        if path is not None and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for lineno, raw in enumerate(fh, 1):
                    raw = raw.strip()
                    if raw:
                        try:
                            self._ingest(json.loads(raw))
                        except (KeyError, TypeError, json.JSONDecodeError) as exc:
                            raise VerdictError(f"{path}:{lineno}: bad record ({exc})") from None

    def _ingest(self, d: dict):
        d = dict(d)
        kind = d.pop("kind")
        if kind == "fv":
            self.fv.append(FolkmanVerdict(**d))
        elif kind == "wfv":
            self.wfv.append(WeakVerdict(**d))
        elif kind == "r0":
            self.r0.append(R0Verdict(**d))
        else:
            raise VerdictError(f"unknown record kind {kind!r}")

    def record(self, verdict) -> None:
        self._ingest(verdict.to_json())
        if self.path is not None:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(verdict.to_json(), sort_keys=True) + "\n")

    def records(self) -> list:
        return [*self.fv, *self.wfv, *self.r0]

    # -- derivation -------------------------------------------------------------

    def _direct(self, t: ArrowTuple, q: int) -> Bounds:
        low = high = None
        why = []
        for v in self.fv:
            if v.tuple == t and v.q == q:
                if v.upper_witness_order is not None:
                    high = _tmin(high, v.upper_witness_order)
                if v.lower_empty_order is not None:
                    low = _tmax(low, v.lower_empty_order + 1)
                why.append(f"recorded ({v.source})")
        return Bounds(low, high, tuple(why))

    def bounds(self, t, q: int, _depth: int = 0) -> Bounds:
        t = normalize_tuple(t)
        if not _exists(t, q):
            raise VerdictError(f"F_v({t};{q}) does not exist: q must exceed {t.p}")
        m, p = t.m, t.p
        b = self._direct(t, q)
        low, high, why = b.low, b.high, list(b.reasons)
        if q >= m + 1:
            low, high = _tmax(low, m), _tmin(high, m)
            why.append("q >= m+1 gives m")
        elif q == m:
            low, high = _tmax(low, m + p), _tmin(high, m + p)
            why.append("q = m gives m+p")
        elif q == m - 1 and p <= 4 and m >= 6:
            v = m + {2: 4, 3: 6, 4: 7}[p]
            low, high = _tmax(low, v), _tmin(high, v)
            why.append(f"q = m-1, p = {p} closed form")
        elif q == m - 1 and (t.parts, q) in _SPORADIC:
            v = _SPORADIC[(t.parts, q)]
            low, high = _tmax(low, v), _tmin(high, v)
            why.append("known small value")
        elif q == m - 1 and m >= p + 2 and p >= 3:
            low, high = _tmax(low, m + p + 2), _tmin(high, m + 3 * p)
            why.append("q = m-1 general bracket")
        if _depth < 6:
            # joining K_j to a smaller witness adds j twos and raises q by j
            twos = sum(1 for a in t.parts if a == 2)
            for j in range(1, twos + 1):
                rest = normalize_tuple(t.parts[j:]) if len(t.parts) > j else None
                if rest is None or not _exists(rest, q - j):
                    continue
                sub = self.bounds(rest, q - j, _depth + 1)
                if sub.high is not None and (high is None or sub.high + j < high):
                    high = sub.high + j
                    why.append(f"K_{j} join of F_v({rest};{q - j})")
            low, high, why = self._apply_r0(t, q, low, high, why, _depth)
            if q == m - 1:
                low, high, why = self._apply_sandwich(t, q, low, high, why, _depth)
        if low is not None and high is not None and low > high:
            raise VerdictError(f"inconsistent ledger: F_v({t};{q}) in [{low}, {high}]")
        return Bounds(low, high, tuple(why))

    def _apply_r0(self, t, q, low, high, why, depth):
        parts = t.parts
        p = parts[-1]
        r = len(parts) - 1
        if any(a != 2 for a in parts[:-1]) or q != r + p - 1 or r < 2:
            return low, high, why
        for rec in self.r0:
            if rec.p != p or rec.r0 == r:
                continue
            base_t = normalize_tuple((2,) * rec.r0 + (p,))
            base = self.bounds(base_t, rec.r0 + p - 1, depth + 1)
            shift = r - rec.r0
            if base.low is not None:
                low = _tmax(low, base.low + shift)
            if r >= rec.r0 and base.high is not None:
                high = _tmin(high, base.high + shift)
            why.append(f"r0({p}) = {rec.r0}")
        return low, high, why

    def weak_bounds(self, m: int, p: int, q: int) -> Bounds:
        low = high = None
        why = []
        for v in self.wfv:
            if v.p != p:
                continue
            if v.m == m and v.q == q:
                if v.upper_witness_order is not None:
                    high = _tmin(high, v.upper_witness_order)
                if v.lower_empty_order is not None:
                    low = _tmax(low, v.lower_empty_order + 1)
                why.append(f"recorded ({v.source})")
            elif m > v.m and q - v.q == m - v.m and v.upper_witness_order is not None:
                # wFv(m|p|m-m0+q) <= wFv(m0|p|q) + m - m0
                cand = v.upper_witness_order + m - v.m
                if high is None or cand < high:
                    high = cand
                    why.append(f"shift from wFv({v.m}|{p}|{v.q})")
        return Bounds(low, high, tuple(why))

    def _apply_sandwich(self, t, q, low, high, why, depth):
        m, p = t.m, t.p
        lower_t = normalize_tuple((2,) * (m - p) + (p,))
        if lower_t != t:
            lb = self.bounds(lower_t, q, depth + 1)
            if lb.low is not None:
                low = _tmax(low, lb.low)
                why.append(f"at least F_v({lower_t};{q})")
        wb = self.weak_bounds(m, p, q)
        if wb.high is not None:
            high = _tmin(high, wb.high)
            why.append(f"at most wFv({m}|{p}|{q})")
        return low, high, why

    # -- checks -----------------------------------------------------------------

    def consistency_problems(self) -> list[str]:
        """Violations of F_v(2,2,p;p+1) <= F_v(3,p;p+1) and of bound ordering."""
        problems = []
        seen = {(v.tuple, v.q) for v in self.fv}
        for t, q in sorted(seen, key=lambda x: (x[0].parts, x[1])):
            try:
                self.bounds(t, q)
            except VerdictError as exc:
                problems.append(str(exc))
        for p in sorted({v.tuple.p for v in self.fv}):
            if p < 3:
                continue
            try:
                a = self.bounds((2, 2, p), p + 1)
                b = self.bounds((3, p), p + 1)
            except VerdictError as exc:
                problems.append(str(exc))
                continue
            if a.low is not None and b.high is not None and a.low > b.high:
                problems.append(
                    f"F_v(2,2,{p};{p + 1}) >= {a.low} exceeds F_v(3,{p};{p + 1}) <= {b.high}"
                )
        return problems


def sandwich_report(t, ledger: VerdictLedger) -> dict:
    """Brackets F_v(2_{m-p}, p; m-1) <= F_v(t; m-1) <= wFv(m|p|m-1)."""
    t = normalize_tuple(t)
    m, p = t.m, t.p
    q = m - 1
    lower_t = normalize_tuple((2,) * (m - p) + (p,))

    def show(b: Bounds):
        return "unknown" if b.low is None and b.high is None else str(b)

    lower = ledger.bounds(lower_t, q) if _exists(lower_t, q) else Bounds()
    upper = ledger.weak_bounds(m, p, q)
    implied = ledger.bounds(t, q) if _exists(t, q) else Bounds()
    return {
        "tuple": str(t),
        "m": m,
        "p": p,
        "q": q,
        "lower_bracket": f"F_v({lower_t};{q})",
        "lower_value": show(lower),
        "upper_bracket": f"wFv({m}|{p}|{q})",
        "upper_value": show(upper),
        "implied": show(implied),
    }


def record_all(ledger: VerdictLedger, verdicts: Iterable) -> None:
    for v in verdicts:
        ledger.record(v)
