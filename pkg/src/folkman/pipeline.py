"""Staged censuses: base family, then repeated independent-vertex extension.

A ladder climbs from H(base; q; n0) to the target family.  Each rung adds k
independent vertices (and one more 2 to the tuple) to the edge-addition-critical
graphs of the previous rung, merges the maximal graphs with independence number
below k, and closes downward to the critical graphs the next rung needs.  Every
stage persists sorted canonical graph6 files plus a JSON manifest, and a rerun
skips stages whose manifest still matches its inputs.
"""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .arrow import ArrowTuple, arrows, check_family, is_maximal_in_family, normalize_tuple
from .extend import (
    ExtensionTask,
    add_independent_vertices,
    downward_closure,
    edge_addition_critical,
)
from .gen import MAX_GEN_ORDER, GenConstraints, iter_graphs
from .graph import Graph, delete_vertex, independence_number, max_clique_size, stats
from .graphset import GraphSet, file_sha256

log = logging.getLogger(__name__)

# R(k, q) for the small k used by ladders; None where unknown
_RAMSEY3 = {3: 6, 4: 9, 5: 14, 6: 18, 7: 23, 8: 28, 9: 36}
_RAMSEY4 = {4: 18, 5: 25}


class PipelineError(ValueError):
    pass


def ramsey_number(k: int, q: int) -> int | None:
    k, q = min(k, q), max(k, q)
    if k == 1:
        return 1
    if k == 2:
        return q
    if k == 3:
        return _RAMSEY3.get(q)
    if k == 4:
        return _RAMSEY4.get(q)
    return None


def parse_family(text: str) -> tuple[ArrowTuple, int, int]:
    """Parse ``"2,2,5;6;16"`` into (tuple, q, n)."""
    bits = [b.strip() for b in text.split(";")]
    if len(bits) != 3:
        raise PipelineError(f"family must look like 'a1,...,as;q;n', got {text!r}")
    try:
        return normalize_tuple(bits[0]), int(bits[1]), int(bits[2])
    except ValueError as exc:
        raise PipelineError(f"bad family {text!r}: {exc}") from None


@dataclass(frozen=True)
class LadderStep:
    k: int
    tuple: ArrowTuple


@dataclass
class PipelineSpec:
    target_tuple: ArrowTuple
    q: int
    n: int
    ladder: list[LadderStep]
    base_tuple: ArrowTuple
    workdir: str
    closure: str = "critical"  # critical | full | none, for the last stage
    ramsey_sources: dict[int, str] = field(default_factory=dict)
    base_source: str | None = None

    def __post_init__(self):
        self.target_tuple = normalize_tuple(self.target_tuple)
        self.base_tuple = normalize_tuple(self.base_tuple)
        check_family(self.target_tuple, self.q)
        if self.closure not in ("critical", "full", "none"):
            raise PipelineError(f"closure must be critical, full or none, got {self.closure!r}")
        if not self.ladder:
            raise PipelineError("ladder needs at least one step")
        prev = self.base_tuple
        for step in self.ladder:
            if step.k < 1:
                raise PipelineError(f"ladder step adds {step.k} vertices")
            if step.tuple != prev.with_extra_twos(1):
                raise PipelineError(f"step tuple {step.tuple} is not {prev} with one more 2")
            prev = step.tuple
        if prev != self.target_tuple:
            raise PipelineError(f"ladder ends at {prev}, target is {self.target_tuple}")
        if self.base_order < 1:
            raise PipelineError("ladder adds more vertices than the target order")

    @property
    def base_order(self) -> int:
        return self.n - sum(s.k for s in self.ladder)

    @classmethod
    def from_json(cls, data: dict, workdir: str | None = None) -> "PipelineSpec":
        try:
            t, q, n = parse_family(data["target"])
            ladder = [LadderStep(int(s["k"]), normalize_tuple(s["tuple"])) for s in data["ladder"]]
            sources = {int(k): v for k, v in data.get("ramsey_sources", {}).items()}
            if data.get("ramsey_source"):
                sources.setdefault(n, data["ramsey_source"])
            wd = workdir or data.get("workdir") or os.environ.get("FOLKMAN_WORKDIR") or "."
            return cls(
                target_tuple=t,
                q=q,
                n=n,
                ladder=ladder,
                base_tuple=normalize_tuple(data["base_tuple"]),
                workdir=wd,
                closure=data.get("closure", "critical"),
                ramsey_sources=sources,
                base_source=data.get("base_source"),
            )
        except KeyError as exc:
            raise PipelineError(f"pipeline spec is missing {exc}") from None

    @classmethod
    def load(cls, path, workdir: str | None = None) -> "PipelineSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh), workdir)


@dataclass(frozen=True)
class StageReport:
    stage: str
    tuple: ArrowTuple
    q: int
    n: int
    maximal_count: int
    edge_critical_count: int | None
    closure_count: int | None = None
    wall_seconds: float = 0.0
    resumed: bool = False


def stage_name(index: int, t: ArrowTuple, q: int, n: int) -> str:
    return f"{index:02d}-{'_'.join(map(str, t.parts))}-q{q}-n{n}"


def _line_count(path) -> int:
    with open(path, encoding="ascii") as fh:
        return sum(1 for line in fh if line.strip())


class _Stage:
    def __init__(self, spec: PipelineSpec, index: int, t: ArrowTuple, n: int):
        self.spec = spec
        self.index = index
        self.t = t
        self.n = n
        self.name = stage_name(index, t, spec.q, n)
        self.dir = os.path.join(spec.workdir, self.name)
        self.inputs: list[dict] = []
        self.t0 = time.monotonic()

    def path(self, what: str) -> str:
        return os.path.join(self.dir, f"{what}.g6")

    def add_input(self, path):
        self.inputs.append({"path": os.path.abspath(path), "sha256": file_sha256(path)})

    def cached(self, required: tuple[str, ...] = ("maximal", "edge_critical")) -> StageReport | None:
        mpath = os.path.join(self.dir, "manifest.json")
        if not os.path.exists(mpath):
            return None
        with open(mpath, encoding="utf-8") as fh:
            man = json.load(fh)
        if (
            man.get("tuple") != list(self.t.parts)
            or man.get("q") != self.spec.q
            or man.get("n") != self.n
            or man.get("inputs") != self.inputs
        ):
            return None
        counts = man["counts"]
        if any(counts.get(what) is None for what in required):
            return None
        for what in ("maximal", "edge_critical", "closure"):
            fname = "critical" if what == "edge_critical" else what
            if counts.get(what) is not None:
                p = self.path(fname)
                if not os.path.exists(p) or _line_count(p) != counts[what]:
                    return None
        return StageReport(
            self.name,
            self.t,
            self.spec.q,
            self.n,
            counts["maximal"],
            counts.get("edge_critical"),
            counts.get("closure"),
            man.get("wall_seconds", 0.0),
            resumed=True,
        )

    def finish(self, maximal: GraphSet, critical: GraphSet | None, closure: GraphSet | None):
        os.makedirs(self.dir, exist_ok=True)
        maximal.save(self.path("maximal"))
        if critical is not None:
            critical.save(self.path("critical"))
        if closure is not None:
            closure.save(self.path("closure"))
        wall = round(time.monotonic() - self.t0, 3)
        man = {
            "stage": self.name,
            "tuple": list(self.t.parts),
            "q": self.spec.q,
            "n": self.n,
            "counts": {
                "maximal": len(maximal),
                "edge_critical": None if critical is None else len(critical),
                "closure": None if closure is None else len(closure),
            },
            "inputs": self.inputs,
            "wall_seconds": wall,
        }
        tmp = os.path.join(self.dir, "manifest.json.tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(man, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, os.path.join(self.dir, "manifest.json"))
        return StageReport(
            self.name,
            self.t,
            self.spec.q,
            self.n,
            len(maximal),
            man["counts"]["edge_critical"],
            man["counts"]["closure"],
            wall,
        )


def _base_family(spec: PipelineSpec, stage: _Stage) -> tuple[GraphSet, GraphSet]:
    q, t, n = spec.q, spec.base_tuple, stage.n
    maximal, critical = GraphSet(), GraphSet()
    if spec.base_source:
        source: Iterable[Graph] = GraphSet.load(spec.base_source)
    elif n <= MAX_GEN_ORDER:
        source = iter_graphs(GenConstraints(n, max_clique=q))
    else:
        raise PipelineError(f"base order {n} exceeds the generation cap; supply base_source")
    for g in source:
        if g.n != n or max_clique_size(g.adj, g.vertex_mask) >= q:
            continue
        if not edge_addition_critical(g, q) or not arrows(g, t):
            continue
        critical.add(g)
        if is_maximal_in_family(g, q):
            maximal.add(g)
    return maximal, critical


def _alpha_branch(spec: PipelineSpec, stage: _Stage, k: int, jobs: int) -> GraphSet:
    """Maximal graphs of the stage family whose independence number is below k."""
    q, n, t = spec.q, stage.n, stage.t
    r = ramsey_number(k, q)
    out = GraphSet()
    if r is not None and n >= r:
        log.info("%s: R(%d,%d) = %d, small-alpha branch empty", stage.name, k, q, r)
        return out
    if n in spec.ramsey_sources:
        source: Iterable[Graph] = GraphSet.load(spec.ramsey_sources[n])
    elif n <= MAX_GEN_ORDER:
        source = iter_graphs(GenConstraints(n, max_clique=q, max_alpha=k), jobs)
    else:
        raise PipelineError(
            f"{stage.name}: graphs with alpha < {k} and omega < {q} on {n} vertices "
            "may exist; supply a ramsey source for this order"
        )
    for g in source:
        if g.n != n or independence_number(g) >= k:
            continue
        if max_clique_size(g.adj, g.vertex_mask) >= q:
            continue
        if is_maximal_in_family(g, q) and arrows(g, t):
            out.add(g)
    return out


def run_pipeline(spec: PipelineSpec, jobs: int = 1, resume: bool = True) -> list[StageReport]:
    os.makedirs(spec.workdir, exist_ok=True)
    reports = []
    q = spec.q
    n = spec.base_order
    stage = _Stage(spec, 0, spec.base_tuple, n)
    if spec.base_source:
        stage.add_input(spec.base_source)
    report = stage.cached() if resume else None
    if report is None:
        maximal, critical = _base_family(spec, stage)
        report = stage.finish(maximal, critical, None)
    log.info("%s: maximal %d, critical %s", report.stage, report.maximal_count, report.edge_critical_count)
    reports.append(report)
    prev = stage
    for i, step in enumerate(spec.ladder, 1):
        n += step.k
        last = i == len(spec.ladder)
        stage = _Stage(spec, i, step.tuple, n)
        stage.add_input(prev.path("critical"))
        if n in spec.ramsey_sources:
            stage.add_input(spec.ramsey_sources[n])
        required = ["maximal"]
        if not last or spec.closure != "none":
            required.append("edge_critical")
        if last and spec.closure == "full":
            required.append("closure")
        report = stage.cached(tuple(required)) if resume else None
        if report is None:
            # the small-alpha branch first, so a missing source fails fast
            small_alpha = _alpha_branch(spec, stage, step.k, jobs)
            base = GraphSet.load(prev.path("critical"), canonical=True)
            task = ExtensionTask(base, step.k, step.tuple, q, n)
            maximal = add_independent_vertices(task, jobs=jobs, check_base=False)
            maximal = maximal.union(small_alpha)
            critical = closure = None
            if not last or spec.closure != "none":
                critical = downward_closure(maximal, step.tuple, q, critical=True, jobs=jobs)
            if last and spec.closure == "full":
                closure = downward_closure(maximal, step.tuple, q, jobs=jobs)
            report = stage.finish(maximal, critical, closure)
        log.info(
            "%s: maximal %d, critical %s, closure %s",
            report.stage,
            report.maximal_count,
            report.edge_critical_count,
            report.closure_count,
        )
        reports.append(report)
        prev = stage
    return reports


def final_stage_dir(spec: PipelineSpec) -> str:
    last = spec.ladder[-1]
    return os.path.join(spec.workdir, stage_name(len(spec.ladder), last.tuple, spec.q, spec.n))


# -- checks and reports ----------------------------------------------------------


def vertex_deletion_check(graphs: Iterable[Graph], t, q: int) -> bool:
    """True iff no one-vertex deletion of any graph lies in H(t; q; n-1).

    This only reports the scan.  Read as an emptiness proof it needs the set to
    be the complete census at order n: any member at order n-1 plus an isolated
    vertex would be a member at order n, and deleting that vertex gives it back.
    """
    t = normalize_tuple(t)
    check_family(t, q)
    for g in graphs:
        for v in range(g.n):
            h = delete_vertex(g, v)
            if max_clique_size(h.adj, h.vertex_mask) < q and arrows(h, t):
                return False
    return True


PROPS_COLUMNS = ("edges", "min_degree", "max_degree", "alpha", "chi", "aut_order")


def props_table(graphs: Iterable[Graph]) -> dict[str, list[tuple[int, int]]]:
    """Histogram per column: sorted (value, count) pairs."""
    counters = {c: Counter() for c in PROPS_COLUMNS}
    for g in graphs:
        s = stats(g)
        for c in PROPS_COLUMNS:
            counters[c][getattr(s, c)] += 1
    return {c: sorted(counters[c].items()) for c in PROPS_COLUMNS}


def format_props_table(table: dict[str, list[tuple[int, int]]]) -> str:
    lines = []
    for c in PROPS_COLUMNS:
        lines.append(c)
        for value, count in table[c]:
            lines.append(f"  {value:>8} {count:>8}")
    return "\n".join(lines)
