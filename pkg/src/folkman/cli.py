"""Command-line interface: ``folkman <command> [flags]``.

Set-consuming commands read graph6 lines from ``--in`` or stdin (``--g6`` gives
a single graph inline) and write to stdout or ``--out``.  Exit status is 0 on
success, 1 on domain errors and 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Iterable, Iterator

from .arrow import (
    arrows_uni,
    classify,
    find_free_coloring,
    normalize_tuple,
)
from .canon import canonical_form
from .extend import ExtensionTask, add_independent_vertices, downward_closure, populate
from .gen import GenConstraints, iter_graphs, make_predicate
from .graph import Graph, bits_of
from .graph6 import decode
from .graphset import GraphSet
from .pipeline import (
    PipelineSpec,
    format_props_table,
    props_table,
    run_pipeline,
    vertex_deletion_check,
)
from .verdicts import FolkmanVerdict, R0Verdict, VerdictLedger, WeakVerdict, sandwich_report

log = logging.getLogger("folkman")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _default_jobs() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _tuple_arg(text: str):
    t = normalize_tuple(text)
    raw = [int(x) for x in text.replace(" ", "").split(",") if x]
    if list(t.parts) != raw:
        log.warning("tuple %s normalized to (%s)", text, t)
    return t


def _read_lines(args) -> Iterator[str]:
    if getattr(args, "g6", None):
        for line in args.g6:
            yield line.strip()
        return
    src = getattr(args, "input", None)
    fh = open(src, encoding="ascii") if src and src != "-" else sys.stdin
    try:
        for raw in fh:
            s = raw.strip()
            if s and not s.startswith(">>graph6<<"):
                yield s
            elif s.startswith(">>graph6<<") and s[10:]:
                yield s[10:]
    finally:
        if fh is not sys.stdin:
            fh.close()


def _graphs(args) -> Iterator[Graph]:
    for line in _read_lines(args):
        yield decode(line)


class _Out:
    def __init__(self, path):
        self.fh = open(path, "w", encoding="ascii") if path else sys.stdout

    def __enter__(self):
        return self

    def write(self, text: str):
        self.fh.write(text + "\n")

    def __exit__(self, *exc):
        if self.fh is not sys.stdout:
            self.fh.close()
        else:
            self.fh.flush()


def _write_set(args, graphs: Iterable[Graph]):
    with _Out(args.out) as out:
        for g in graphs:
            out.write(g.to_g6())


def _labelled(args, values: list[tuple[str, str]]):
    # a single graph prints the bare verdict, several get their line as prefix
    with _Out(args.out) as out:
        if len(values) == 1:
            out.write(values[0][1])
        else:
            for line, v in values:
                out.write(f"{line}\t{v}")


# -- commands -----------------------------------------------------------------------


def cmd_check(args):
    t = args.tuple
    rows = []
    for line in _read_lines(args):
        g = decode(line)
        w = find_free_coloring(g, t)
        text = f"arrows: {'false' if w else 'true'}"
        if w and args.witness:
            text += " witness: " + ",".join(map(str, w.assignment))
        rows.append((line, text))
    _labelled(args, rows)


def cmd_check_uni(args):
    rows = []
    for line in _read_lines(args):
        ok = arrows_uni(decode(line), args.m, args.p, args.mode)
        rows.append((line, "true" if ok else "false"))
    _labelled(args, rows)


def cmd_classify(args):
    rows = []
    for line in _read_lines(args):
        r = classify(decode(line), args.tuple, args.q)
        rows.append(
            (
                line,
                f"in_family: {str(r.in_family).lower()} maximal: {str(r.maximal).lower()} "
                f"minimal: {str(r.minimal).lower()} bicritical: {str(r.bicritical).lower()}",
            )
        )
    _labelled(args, rows)


def cmd_kfree(args):
    from .kfree import maximal_kfree_subsets

    with _Out(args.out) as out:
        for g in _graphs(args):
            fam = maximal_kfree_subsets(g, args.t)
            out.write(f"{g.to_g6()} {len(fam)}")
            for s in fam:
                out.write("  " + " ".join(map(str, bits_of(s))))


def cmd_extend(args):
    base = GraphSet(_graphs(args))
    orders = {g.n for g in base}
    if len(orders) > 1:
        raise UsageError(f"base graphs have mixed orders {sorted(orders)}")
    n = (orders.pop() if orders else 0) + args.k
    task = ExtensionTask(base, args.k, args.tuple, args.q, n)
    _write_set(args, add_independent_vertices(task, jobs=args.jobs))


def cmd_closure(args):
    seed = GraphSet(_graphs(args))
    _write_set(args, downward_closure(seed, args.tuple, args.q, critical=args.critical, jobs=args.jobs))


def cmd_populate(args):
    seed = GraphSet(_graphs(args))
    _write_set(args, populate(seed, args.tuple, args.q, rounds=args.rounds, jobs=args.jobs))


def cmd_gen(args):
    c = GenConstraints(args.n, max_clique=args.max_clique, max_alpha=args.max_alpha)
    preds = [make_predicate(f) for f in args.filter]
    with _Out(args.out) as out:
        for g in iter_graphs(c, args.jobs):
            if all(p(g) for p in preds):
                out.write(canonical_form(g).canon_g6)


def cmd_filter(args):
    preds = [make_predicate(f) for f in args.predicate]
    _write_set(args, (g for g in _graphs(args) if all(p(g) for p in preds)))


def cmd_canon(args):
    seen = set()
    with _Out(args.out) as out:
        for g in _graphs(args):
            cf = canonical_form(g)
            if args.unique:
                if cf.canon_g6 in seen:
                    continue
                seen.add(cf.canon_g6)
            out.write(f"{cf.canon_g6}\t{cf.aut_order}" if args.aut else cf.canon_g6)


def cmd_props(args):
    with _Out(args.out) as out:
        out.write(format_props_table(props_table(_graphs(args))))


def cmd_deletion(args):
    ok = vertex_deletion_check(_graphs(args), args.tuple, args.q)
    with _Out(args.out) as out:
        out.write("no deletion stays in the family" if ok else "some deletion stays in the family")


def cmd_pipeline(args):
    spec = PipelineSpec.load(args.spec, workdir=args.workdir)
    reports = run_pipeline(spec, jobs=args.jobs, resume=not args.fresh)
    with _Out(args.out) as out:
        for r in reports:
            parts = [
                f"H({r.tuple};{r.q};{r.n})",
                f"maximal={r.maximal_count}",
                f"critical={'-' if r.edge_critical_count is None else r.edge_critical_count}",
            ]
            if r.closure_count is not None:
                parts.append(f"closure={r.closure_count}")
            parts.append(f"seconds={r.wall_seconds:.1f}")
            if r.resumed:
                parts.append("(resumed)")
            out.write(" ".join(parts))


def cmd_verdicts(args):
    ledger = VerdictLedger(args.ledger)
    with _Out(args.out) as out:
        if args.action == "show":
            for rec in ledger.records():
                out.write(json.dumps(rec.to_json(), sort_keys=True))
        elif args.action == "bounds":
            _need(args, "tuple", "q")
            out.write(f"F_v({args.tuple};{args.q}) = {ledger.bounds(args.tuple, args.q)}")
        elif args.action == "sandwich":
            _need(args, "tuple")
            rep = sandwich_report(args.tuple, ledger)
            for key, value in rep.items():
                out.write(f"{key}: {value}")
        elif args.action == "record":
            ledger.record(_verdict_from_args(args))
            out.write("recorded")
        elif args.action == "check":
            problems = ledger.consistency_problems()
            for p in problems:
                out.write(p)
            if problems:
                raise UsageError(f"{len(problems)} consistency problem(s)")
            out.write("consistent")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def _verdict_from_args(args):
    src = args.source
    if args.r0 is not None:
        _need(args, "p")
        return R0Verdict(args.p, args.r0, src, args.note)
    if args.m is not None:
        _need(args, "p", "q")
        return WeakVerdict(args.m, args.p, args.q, args.upper, args.lower, src, args.note)
    _need(args, "tuple", "q")
    return FolkmanVerdict(args.tuple, args.q, args.upper, args.lower, src, args.note)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="folkman", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def graphs_in(p):
        p.add_argument("--in", dest="input", help="graph6 file (default: stdin)")
        p.add_argument("--g6", action="append", help="inline graph6 line (repeatable)")
        p.add_argument("--out", help="output file (default: stdout)")

    def jobs(p):
        p.add_argument("--jobs", type=int, default=_default_jobs())

    p = sub.add_parser("check", help="decide G -> (a1,...,as)")
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--witness", action="store_true", help="print a free colouring when one exists")
    graphs_in(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("check-uni", help="decide G -> uni(m|p)")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--mode", choices=("reduced", "full"), default="reduced")
    graphs_in(p)
    p.set_defaults(func=cmd_check_uni)

    p = sub.add_parser("classify", help="membership, maximality and minimality in H(t;q)")
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    graphs_in(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("kfree", help="maximal K_t-free vertex subsets")
    p.add_argument("--t", type=int, required=True)
    graphs_in(p)
    p.set_defaults(func=cmd_kfree)

    p = sub.add_parser("extend", help="add k independent vertices to critical base graphs")
    p.add_argument("--tuple", type=_tuple_arg, required=True, help="target tuple")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    graphs_in(p)
    jobs(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("closure", help="downward closure by edge deletion")
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--critical", action="store_true", help="keep only edge-addition-critical graphs")
    graphs_in(p)
    jobs(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("populate", help="grow a set of maximal graphs")
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--rounds", type=int, default=2)
    graphs_in(p)
    jobs(p)
    p.set_defaults(func=cmd_populate)

    p = sub.add_parser("gen", help="all graphs of order n up to isomorphism")
    p.add_argument("--n", "-n", type=int, required=True)
    p.add_argument("--max-clique", type=int, help="keep omega < this")
    p.add_argument("--max-alpha", type=int, help="keep alpha < this")
    p.add_argument(
        "--filter",
        action="append",
        default=[],
        help="omega=k, omega<q, alpha<p, arrows:a,b,c or critical:q (repeatable)",
    )
    p.add_argument("--out")
    jobs(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("filter", help="keep graphs satisfying predicates")
    p.add_argument("predicate", nargs="+")
    graphs_in(p)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("canon", help="canonical graph6 lines")
    p.add_argument("--unique", action="store_true", help="drop isomorphic repeats")
    p.add_argument("--aut", action="store_true", help="append |Aut(G)|")
    graphs_in(p)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("props", help="histograms of edges, degrees, alpha, chi, |Aut|")
    graphs_in(p)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("deletion-check", help="scan one-vertex deletions for family members")
    p.add_argument("--tuple", type=_tuple_arg, required=True)
    p.add_argument("--q", type=int, required=True)
    graphs_in(p)
    p.set_defaults(func=cmd_deletion)

    p = sub.add_parser("pipeline", help="run a staged census from a JSON spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--workdir", default=os.environ.get("FOLKMAN_WORKDIR"))
    p.add_argument("--fresh", action="store_true", help="ignore existing stage manifests")
    p.add_argument("--out")
    jobs(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verdicts", help="Folkman-number ledger")
    p.add_argument("action", choices=("show", "bounds", "sandwich", "record", "check"))
    p.add_argument(
        "--ledger",
        default=os.path.join(os.environ.get("FOLKMAN_WORKDIR", "."), "verdicts.jsonl"),
    )
    p.add_argument("--tuple", type=_tuple_arg)
    p.add_argument("--q", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("-p", type=int)
    p.add_argument("--r0", type=int)
    p.add_argument("--upper", type=int, help="order of a known witness")
    p.add_argument("--lower", type=int, help="order at which the family is empty")
    p.add_argument("--source", default="computed", choices=("computed", "literature"))
    p.add_argument("--note", default="")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verdicts)
    return parser


def main(argv: list[str] | None = None) -> int:
    # fresh handler each call so it writes to the current sys.stderr
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.WARNING)
    log.propagate = False
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.getLogger("folkman").setLevel(logging.INFO if args.verbose == 1 else logging.DEBUG)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130
    return 0


if __name__ == "__main__":
    sys.exit(main())
