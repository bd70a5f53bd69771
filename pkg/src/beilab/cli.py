"""Command-line front end.

    beilab reg    --family cycle --n 5 --s 1..2
    beilab betti  --graph g.txt --s 2 --format table
    beilab verify --theorem ohtani --family cycle --n 4..6
    beilab verify --all --budget ci
    beilab seq    --check quadratic --family star --n 3
    beilab probe  --family g2 --n 6 --s 3

Exit codes: 0 when every record passes, 1 on any violation (or a failed
sequence check), 2 on budget exhaustion or bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import bei
from . import graph as gr
from . import sequences as sq
from .graph import Graph, GraphError
from .ideal import Ideal
from .poly import DEFAULT_PRIME
from .resolution import BudgetExceeded

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET = 0, 1, 2


@dataclass(frozen=True)
class Budget:
    max_frame: int | None
    max_n: int
    s_max: int


BUDGETS = {
    "ci": Budget(max_frame=200_000, max_n=4, s_max=2),
    "laptop": Budget(max_frame=2_000_000, max_n=5, s_max=2),
    "overnight": Budget(max_frame=None, max_n=7, s_max=3),
}


class UsageError(ValueError):
    pass


def parse_range(text: str | None) -> list[int]:
    """``"3"``, ``"3..6"`` or ``"1,4,7"``."""
    if text is None:
        return []
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None


def resolve_budget(flag: str | None) -> tuple[str, Budget]:
    name = flag or os.environ.get("BEILAB_BUDGET") or "laptop"
    if name not in BUDGETS:
        raise UsageError(f"unknown budget {name!r}; choose from {sorted(BUDGETS)}")
    return name, BUDGETS[name]


def _graphs(args) -> list[tuple[dict, Graph]]:
    """``(params, graph)`` pairs from ``--graph`` or ``--family``."""
    if args.graph:
        with open(args.graph) as fh:
            G = Graph.from_text(fh.read())
        return [({"graph": G.to_json()}, G)]
    if not args.family:
        raise UsageError("give --family or --graph")
    if args.args:
        extra = [int(t) for t in args.args.split(",")]
        return [({"family": args.family, "args": extra}, gr.make_family(args.family, *extra))]
    ns = parse_range(args.n) or [None]
    ms = parse_range(args.m) or [None]
    out = []
    for n in ns:
        for m in ms:
            vals = [v for v in (n, m) if v is not None]
            if not vals:
                raise UsageError(f"family {args.family!r} needs --n, --m or --args")
            params = {"family": args.family, "args": vals}
            out.append((params, gr.make_family(args.family, *vals)))
    return out


def _primes(args) -> list[int]:
    return args.prime or [DEFAULT_PRIME]


def _emit(args, records: list[dict], text: str | None = None):
    if args.format == "json":
        body = "\n".join(json.dumps(r, sort_keys=True) for r in records) + ("\n" if records else "")
    else:
        body = text if text is not None else "\n".join(_record_line(r) for r in records) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _record_line(r: dict) -> str:
    params = ",".join(f"{k}={json.dumps(v, separators=(',', ':'))}"
                      for k, v in sorted(r.get("params", {}).items()))
    line = f"{r.get('theorem', '-'):14} {params:40} computed={r.get('computed')} " \
           f"expected={json.dumps(r.get('expected'))} p={r.get('prime')} {r.get('verdict')}"
    if r.get("attained"):
        line += f" ({r['attained']})"
    return line


def _exit_code(verdicts) -> int:
    verdicts = list(verdicts)
    if bei.VIOLATION in verdicts:
        return EXIT_VIOLATION
    if bei.BUDGET in verdicts:
        return EXIT_BUDGET
    return EXIT_OK


# --------------------------------------------------------------------------
# workers (module level so process pools can pickle them)
# --------------------------------------------------------------------------

def _run_verify(task) -> dict:
    theorem, params, prime, max_frame, timing = task
    bei.set_frame_budget(max_frame)
    return bei.verify_theorem(theorem, params, prime).to_json(timing)


def _run_reg(task) -> dict:
    params, G, s, prime, max_frame, timing = task
    bei.set_frame_budget(max_frame)
    fam = params.get("family")
    if fam in ("path", "cycle", "complete", "star") and len(params.get("args", [])) == 1:
        rep = bei.verify_theorem(fam, {"n": params["args"][0], "s": s}, prime)
        out = rep.to_json(timing)
        out["params"] = dict(params, s=s)
        out["command"] = "reg"
        return out
    rec = {"command": "reg", "theorem": "reg", "params": dict(params, s=s), "prime": prime,
           "expected": {}}
    try:
        rec["computed"] = bei.reg_power(G, s, prime)
        rec["verdict"] = "computed"
    except BudgetExceeded as exc:
        rec["computed"] = None
        rec["verdict"] = bei.BUDGET
        rec["details"] = [str(exc)]
    return rec


def _map(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_reg(args) -> int:
    _, budget = resolve_budget(args.budget)
    ss = parse_range(args.s) or [1]
    tasks = [(params, G, s, p, budget.max_frame, not args.no_timing)
             for params, G in _graphs(args) for s in ss for p in _primes(args)]
    records = _map(_run_reg, tasks, args.jobs)
    _emit(args, records)
    return _exit_code(r["verdict"] for r in records)


def cmd_betti(args) -> int:
    _, budget = resolve_budget(args.budget)
    ss = parse_range(args.s) or [1]
    records, blocks = [], []
    code = EXIT_OK
    for params, G in _graphs(args):
        for s in ss:
            for p in _primes(args):
                rec = {"command": "betti", "params": dict(params, s=s), "prime": p}
                try:
                    table = bei.betti_power(G, s, p, budget.max_frame)
                    rec.update(table.to_json())
                    rec["regularity"] = table.regularity()
                    blocks.append(f"# {json.dumps(rec['params'], sort_keys=True)} p={p}\n{table}")
                except BudgetExceeded as exc:
                    rec["verdict"] = bei.BUDGET
                    rec["details"] = [str(exc)]
                    blocks.append(f"# {json.dumps(rec['params'], sort_keys=True)} p={p}\nBUDGET: {exc}")
                    code = EXIT_BUDGET
                records.append(rec)
    _emit(args, records, "\n\n".join(blocks) + "\n")
    return code


def _sweep_graphs(theorem: str, max_n: int) -> list[dict]:
    """Default graph sweep for a graph-valued theorem."""
    if theorem == "aci-tree":
        return [{"graph": G.to_json()} for G in bei.aci_trees(max_n)]
    if theorem == "caterpillar":
        return [{"graph": G.to_json()} for G in bei.aci_trees(max_n) if gr.is_caterpillar(G)]
    if theorem in ("unicyclic",):
        return [{"graph": G.to_json()} for G in bei.aci_unicyclic(max_n)]
    if theorem == "balloon":
        return [{"graph": G.to_json()} for G in bei.aci_unicyclic(max_n) if gr.is_g1_based(G)]
    if theorem == "fm-colon":
        return [{"graph": G.to_json()} for G in bei.aci_trees(max_n) if gr.is_h_type(G)]
    return [{"graph": G.to_json()} for n in range(2, max_n + 1) for G in gr.connected_graphs(n)]


_NUMERIC = {"path": ("n", "s"), "complete": ("n", "s"), "star": ("n", "s"), "cycle": ("n", "s"),
            "conca-initial": ("n", "s"), "clique-sum": ("n", "m"), "g1": ("m",), "g2": ("m",)}
_NO_S = {"ohtani", "fm-colon", "clique-sum", "g1", "g2"}


def _verify_params(theorem: str, args, budget: Budget) -> list[dict]:
    ss = parse_range(args.s) or list(range(1, budget.s_max + 1))
    if theorem in _NUMERIC:
        keys = _NUMERIC[theorem]
        if theorem in ("g1", "g2") and not args.m and args.n:
            args.m = args.n
        grids = []
        for k in keys:
            vals = parse_range(getattr(args, k))
            if not vals:
                raise UsageError(f"theorem {theorem!r} needs --{k}")
            grids.append([(k, v) for v in vals])
        out = [{}]
        for grid in grids:
            out = [dict(p, **{k: v}) for p in out for k, v in grid]
        return out
    if args.graph or args.family:
        graphs = [p for p, _ in _graphs(args)]
    else:
        graphs = _sweep_graphs(theorem, max(parse_range(args.n) or [budget.max_n]))
    if theorem in _NO_S:
        return graphs
    return [dict(g, s=s) for g in graphs for s in ss]


def acceptance_matrix(budget: Budget) -> list[tuple[str, dict]]:
    """The verification sweep run by ``verify --all``, scaled by budget."""
    cells: list[tuple[str, dict]] = []
    small = min(budget.max_n, 5)
    for n in range(3, 7):
        for s in (1, 2):
            cells.append(("path", {"n": n, "s": s}))
    if budget.s_max >= 3:
        cells += [("path", {"n": n, "s": 3}) for n in (3, 4)]
    cells += [(t, {"n": n, "s": s}) for t in ("complete", "conca-initial") for n in (3, 4) for s in (1, 2)]
    cells += [("star", {"n": n, "s": s}) for n in (3, 4, 5) for s in (1, 2)]
    cells += [("cycle", {"n": n, "s": 1}) for n in (3, 4, 5, 6)]
    cells += [("cycle", {"n": n, "s": 2}) for n in (3, 4, 5)]
    tree_n = 7 if budget.max_n >= 5 else 6
    for G in bei.aci_trees(tree_n):
        for s in (1, 2):
            cells.append(("aci-tree", {"graph": G.to_json(), "s": s}))
            if gr.is_caterpillar(G):
                cells.append(("caterpillar", {"graph": G.to_json(), "s": s}))
    for G in bei.aci_unicyclic(7 if budget.max_n >= 5 else 6):
        for s in (1, 2):
            cells.append(("unicyclic", {"graph": G.to_json(), "s": s}))
    for G in bei.aci_unicyclic(6):
        if gr.is_g1_based(G):
            cells += [("balloon", {"graph": G.to_json(), "s": s}) for s in (1, 2)]
    cells += [("clique-sum", {"n": n, "m": m}) for n in (4, 5) for m in (3, 4)]
    cells += [("g1", {"m": m}) for m in (4, 5, 6)] + [("g2", {"m": m}) for m in (6, 7)]
    for n in range(2, small + 1):
        for G in gr.connected_graphs(n):
            gj = G.to_json()
            cells.append(("ohtani", {"graph": gj}))
            for s in (1, 2):
                cells.append(("contraction", {"graph": gj, "s": s}))
                cells.append(("monotonicity", {"graph": gj, "s": s}))
                cells.append(("lower-bound", {"graph": gj, "s": s}))
    for G in bei.aci_trees(tree_n):
        if gr.is_h_type(G):
            cells.append(("fm-colon", {"graph": G.to_json()}))
    return cells


def cmd_verify(args) -> int:
    _, budget = resolve_budget(args.budget)
    if args.all:
        cells = acceptance_matrix(budget)
    else:
        if not args.theorem:
            raise UsageError("give --theorem or --all")
        cells = []
        for t in args.theorem:
            if t not in bei.THEOREMS:
                raise UsageError(f"unknown theorem id {t!r}; choose from {sorted(bei.THEOREMS)}")
            cells += [(t, p) for p in _verify_params(t, args, budget)]
    tasks = [(t, p, prime, budget.max_frame, not args.no_timing)
             for t, p in cells for prime in _primes(args)]
    records = _map(_run_verify, tasks, args.jobs)
    verdicts = [r["verdict"] for r in records]
    if args.format == "table":
        summary = {v: verdicts.count(v) for v in sorted(set(verdicts))}
        text = "\n".join(_record_line(r) for r in records)
        text += f"\n\nsummary: {len(records)} records, " + ", ".join(f"{k}={v}" for k, v in summary.items()) + "\n"
        _emit(args, records, text)
    else:
        _emit(args, records)
    return _exit_code(verdicts)


def _sequence_for(args) -> list[tuple[dict, Graph, list]]:
    """Generators ``f_e`` in sequence order: sorted edges, except that a
    cycle's closing edge ``{1, n}`` comes last."""
    out = []
    for params, G in _graphs(args):
        edges = G.sorted_edges()
        if params.get("family") == "cycle":
            edges = [e for e in edges if e != (1, G.n)] + [(1, G.n)]
        out.append((params, G, edges))
    return out


def cmd_seq(args) -> int:
    _, budget = resolve_budget(args.budget)
    bei.set_frame_budget(budget.max_frame)
    if not args.check and not args.bound:
        raise UsageError("give --check dseq|quadratic or --bound")
    records = []
    code = EXIT_OK
    for prime in _primes(args):
        for params, G, edges in _sequence_for(args):
            B = bei.build_bei(G, prime)
            polys = [bei.edge_binomial(B.ring, G.n, i, j) for i, j in edges]
            base = {"command": "seq", "params": params, "prime": prime,
                    "generators": [list(e) for e in edges]}
            if args.poset:
                with open(args.poset) as fh:
                    P = sq.Poset.from_json(fh.read())
            else:
                P = sq.Poset.chain(len(polys))
            seq = sq.PosetSequence(P, tuple(polys), Ideal(B.ring))
            if args.check == "dseq":
                res = sq.is_d_sequence(polys)
                rec = dict(base, check="dseq", result=res.ok, failing_index=res.failing_index,
                           nondegenerate=res.nondegenerate)
                code = max(code, EXIT_OK if res.ok else EXIT_VIOLATION)
                records.append(rec)
            elif args.check == "quadratic":
                if P.k > sq.DEFAULT_CAP:
                    raise sq.CapExceeded(f"|Lambda| = {P.k} exceeds cap {sq.DEFAULT_CAP}")
                res = sq.is_quadratic_sequence(seq)
                rec = dict(base, check="quadratic", poset=P.to_json(), result=res.ok, **res.to_json())
                rec.pop("ok")
                code = max(code, EXIT_OK if res.ok else EXIT_VIOLATION)
                records.append(rec)
            if args.bound:
                for s in parse_range(args.s) or [1]:
                    rec = dict(base, s=s)
                    try:
                        reg = bei.reg_power(G, s, prime)
                    except BudgetExceeded as exc:
                        records.append(dict(rec, verdict=bei.BUDGET, details=[str(exc)]))
                        code = max(code, EXIT_BUDGET)
                        continue
                    fb = sq.filtration_bound(seq, s)
                    rec.update(reg=reg, filtration_bound=fb)
                    dres = sq.is_d_sequence(polys)
                    if dres.ok and sq.is_regular_sequence(polys[:-1]):
                        rec["d_sequence_bound"] = sq.d_sequence_bound(polys, s, check=False)
                    bounds = [b for b in (fb, rec.get("d_sequence_bound")) if b is not None]
                    ok = all(reg <= b for b in bounds)
                    rec["bound"] = min(bounds)
                    rec["verdict"] = bei.WITHIN if ok else bei.VIOLATION
                    if not ok:
                        code = EXIT_VIOLATION
                    records.append(rec)
    _emit(args, records, "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n")
    return code


def cmd_probe(args) -> int:
    _, budget = resolve_budget(args.budget)
    s_vals = parse_range(args.s)
    s_max = max(s_vals) if s_vals else budget.s_max + 1
    records = []
    code = EXIT_OK
    for params, G in _graphs(args):
        for p in _primes(args):
            res = bei.stabilization_probe(G, s_max, p, budget.max_frame)
            records.append({"command": "probe", "params": params, "prime": p, **res.to_json()})
            if res.failures:
                code = EXIT_BUDGET
    text = "\n".join(f"{json.dumps(r['params'], sort_keys=True)} p={r['prime']}: "
                     f"{r['sequence']} stable_from={r['stable_from']}" for r in records) + "\n"
    _emit(args, records, text)
    return code


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help=f"graph family: {', '.join(sorted(gr.FAMILIES))}")
    common.add_argument("--graph", help="graph file: vertex count, then one 'i j' edge per line")
    common.add_argument("--n", help="range such as 5, 3..6 or 3,5")
    common.add_argument("--m", help="second family parameter (range)")
    common.add_argument("--args", help="comma-separated family parameters, e.g. 1,1,2 for t-type")
    common.add_argument("--s", help="power(s) of the ideal (range)")
    common.add_argument("--prime", type=int, action="append", help="coefficient prime (repeatable)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--budget", choices=sorted(BUDGETS),
                        help="truncation profile (default: $BEILAB_BUDGET or laptop)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--no-timing", action="store_true", help="omit wall-time fields")

    parser = argparse.ArgumentParser(prog="beilab", description="Regularity of powers of binomial edge ideals.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("reg", parents=[common], help="regularity of S/J_G^s")
    sub.add_parser("betti", parents=[common], help="graded Betti table of S/J_G^s")
    v = sub.add_parser("verify", parents=[common], help="run theorem verifiers")
    v.add_argument("--theorem", action="append", help=f"one of: {', '.join(sorted(bei.THEOREMS))}")
    v.add_argument("--all", action="store_true", help="run the whole verification matrix")
    q = sub.add_parser("seq", parents=[common], help="d-sequence / quadratic-sequence checks")
    q.add_argument("--check", choices=("dseq", "quadratic"))
    q.add_argument("--bound", action="store_true", help="filtration and d-sequence bounds")
    q.add_argument("--poset", help='JSON file {"k": int, "covers": [[a, b], ...]}')
    sub.add_parser("probe", parents=[common], help="reg(S/J_G^s) for s = 1..max(--s)")
    return parser


COMMANDS = {"reg": cmd_reg, "betti": cmd_betti, "verify": cmd_verify, "seq": cmd_seq, "probe": cmd_probe}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BUDGET if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GraphError, bei.VerifierError, sq.PosetError, sq.CapExceeded,
            OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"beilab: error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BudgetExceeded as exc:
        print(f"beilab: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
