"""Binomial edge ideals and checks of the regularity formulas for their powers.

``J_G`` lives in ``K[x_1..x_n, y_1..y_n]`` with generators
``f_ij = x_i y_j - x_j y_i`` for the edges ``{i, j}``, ``i < j``.
Each verifier returns a :class:`TheoremReport`; identity checks (Ohtani
decomposition, contraction, monotonicity, ...) report the number of verified
instances against the number attempted.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from . import graph as gr
from .graph import Graph
from .ideal import Ideal, colon_element, contract_to_variables, ideal_equal, initial_ideal, intersect, power
from .poly import DEFAULT_PRIME, MonomialOrder, Polynomial, Ring, bei_ring
from .resolution import BettiTable, BudgetExceeded, minimal_resolution

SECOND_PRIME = 101
PRIMES = (DEFAULT_PRIME, SECOND_PRIME)


class VerifierError(ValueError):
    """Unknown theorem id or parameters outside a result's hypotheses."""


@dataclass(frozen=True)
class BinomialEdgeIdeal:
    graph: Graph
    ring: Ring
    ideal: Ideal

    @property
    def gens(self) -> tuple[Polynomial, ...]:
        return self.ideal.gens


def edge_binomial(ring: Ring, n: int, i: int, j: int) -> Polynomial:
    """``x_i y_j - x_j y_i`` in a ring laid out as ``x_1..x_n, y_1..y_n``."""
    if i > j:
        i, j = j, i
    return ring.var(i - 1) * ring.var(n + j - 1) - ring.var(j - 1) * ring.var(n + i - 1)


def build_bei(G: Graph, prime: int = DEFAULT_PRIME, ring: Ring | None = None) -> BinomialEdgeIdeal:
    ring = ring or bei_ring(G.n, prime)
    n = ring.nvars // 2
    gens = [edge_binomial(ring, n, i, j) for i, j in G.sorted_edges()]
    return BinomialEdgeIdeal(G, ring, Ideal(ring, gens))


def vertex_variables(n: int, vs) -> list[int]:
    """Ring indices of ``x_v, y_v`` for the given vertices."""
    out = []
    for v in vs:
        out += [v - 1, n + v - 1]
    return sorted(out)


# --------------------------------------------------------------------------
# regularity of powers (cached per process)
# --------------------------------------------------------------------------

_BETTI_CACHE: dict[tuple, BettiTable] = {}
_FRAME_BUDGET: list[int | None] = [None]


def set_frame_budget(max_frame: int | None) -> int | None:
    """Default frame cap for resolutions started by the verifiers; returns
    the previous value."""
    old = _FRAME_BUDGET[0]
    _FRAME_BUDGET[0] = max_frame
    return old


def betti_power(G: Graph, s: int, prime: int = DEFAULT_PRIME,
                max_frame: int | None = None) -> BettiTable:
    """Graded Betti numbers of ``S/J_G^s``."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if max_frame is None:
        max_frame = _FRAME_BUDGET[0]
    key = (G.n, G.edges, s, prime)
    table = _BETTI_CACHE.get(key)
    if table is None:
        J = build_bei(G, prime).ideal
        table = minimal_resolution(power(J, s), max_frame=max_frame)
        _BETTI_CACHE[key] = table
    return table


def reg_power(G: Graph, s: int, prime: int = DEFAULT_PRIME, max_frame: int | None = None):
    """``reg(S/J_G^s)``; ``-inf`` for the zero module is impossible here
    since ``J_G`` is proper, and an edgeless graph gives 0."""
    table = betti_power(G, s, prime, max_frame)
    if not table.complete:
        raise BudgetExceeded("truncated resolution")
    return table.regularity()


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

MATCH = "match"
WITHIN = "within-bounds"
VIOLATION = "VIOLATION"
BUDGET = "BUDGET"


@dataclass
class TheoremReport:
    theorem: str
    params: dict
    computed: int | None
    expected: dict
    verdict: str
    prime: int
    ms: int = 0
    attained: str | None = None
    details: list = field(default_factory=list)

    def to_json(self, timing: bool = True) -> dict:
        out = {"theorem": self.theorem, "params": self.params, "computed": self.computed,
               "expected": self.expected, "verdict": self.verdict, "prime": self.prime}
        if self.attained is not None:
            out["attained"] = self.attained
        if self.details:
            out["details"] = self.details
        if timing:
            out["ms"] = self.ms
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True)

    @property
    def ok(self) -> bool:
        return self.verdict in (MATCH, WITHIN)


def _exact(value, expected: int) -> tuple[dict, str]:
    return {"exact": expected}, MATCH if value == expected else VIOLATION


def _bounds(value, lower, upper) -> tuple[dict, str, str | None]:
    ok = (lower is None or value >= lower) and (upper is None or value <= upper)
    attained = None
    if ok:
        if value == lower and value == upper:
            attained = "both"
        elif value == lower:
            attained = "lower"
        elif value == upper:
            attained = "upper"
    return {"lower": lower, "upper": upper}, WITHIN if ok else VIOLATION, attained


def _graph_param(params: dict) -> Graph:
    if "graph" in params:
        g = params["graph"]
        return g if isinstance(g, Graph) else Graph.from_json(g)
    fam = params.get("family")
    if fam is None:
        raise VerifierError("need a graph or a family")
    args = params.get("args")
    if args is None:
        args = [params[k] for k in ("n", "m") if k in params]
    return gr.make_family(fam, *args)


def _public_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        out[k] = v.to_json() if isinstance(v, Graph) else v
    return out


# --------------------------------------------------------------------------
# verifiers: regularity formulas
# --------------------------------------------------------------------------

def _v_path(p, prime):
    n, s = p["n"], p["s"]
    if n < 2:
        raise VerifierError("path needs n >= 2")
    r = reg_power(gr.path(n), s, prime)
    return (r,) + _exact(r, 2 * s + n - 3)


def _v_complete(p, prime):
    n, s = p["n"], p["s"]
    if n < 2:
        raise VerifierError("complete graph needs n >= 2")
    r = reg_power(gr.complete(n), s, prime)
    return (r,) + _exact(r, 2 * s - 1)


def _v_star(p, prime):
    n, s = p["n"], p["s"]
    if n < 3:
        raise VerifierError("star formula needs n >= 3")
    r = reg_power(gr.star(n), s, prime)
    return (r,) + _exact(r, 2 * s)


def _v_cycle(p, prime):
    n, s = p["n"], p["s"]
    if n < 3:
        raise VerifierError("cycle needs n >= 3")
    r = reg_power(gr.cycle(n), s, prime)
    return (r,) + _exact(r, 2 * s + n - 4)


def _v_aci_tree(p, prime):
    G = _graph_param(p)
    if not (gr.is_t_type(G) or gr.is_h_type(G)):
        raise VerifierError("graph is not a T-type or H-type tree")
    s = p["s"]
    k = gr.iv(G)
    r = reg_power(G, s, prime)
    return (r,) + _bounds(r, 2 * s + k - 2, 2 * s + k - 1)


def _v_caterpillar(p, prime):
    G = _graph_param(p)
    if not gr.is_caterpillar(G) or not (gr.is_t_type(G) or gr.is_h_type(G)):
        raise VerifierError("graph is not an almost-complete-intersection caterpillar")
    s = p["s"]
    r = reg_power(G, s, prime)
    return (r,) + _exact(r, 2 * s + gr.iv(G) - 1)


def _v_lower_bound(p, prime):
    G = _graph_param(p)
    if not G.is_connected():
        raise VerifierError("lower bound needs a connected graph")
    s = p["s"]
    r = reg_power(G, s, prime)
    return (r,) + _bounds(r, 2 * s + gr.ell(G) - 2, None)


def _v_clique_sum(p, prime):
    n, m = p["n"], p["m"]
    r = reg_power(gr.clique_sum(n, m), 1, prime)
    return (r,) + _exact(r, n - 1)


def _v_g1(p, prime):
    m = p["m"]
    if m < 4:
        raise VerifierError("G1 formula needs m >= 4")
    r = reg_power(gr.g1(m), 1, prime)
    return (r,) + _exact(r, m - 2)


def _v_g2(p, prime):
    m = p["m"]
    if m < 6:
        raise VerifierError("G2 formula needs m >= 6")
    r = reg_power(gr.g2(m), 1, prime)
    return (r,) + _exact(r, m - 3)


def _v_unicyclic(p, prime):
    G = _graph_param(p)
    if not (gr.is_g1_based(G) or gr.is_g2_based(G)) or gr.girth(G) < 4:
        raise VerifierError("graph is not a G1/G2-based unicyclic graph of girth >= 4")
    s = p["s"]
    r = reg_power(G, s, prime)
    return (r,) + _bounds(r, 2 * s + G.n - 5, 2 * s + G.n - 4)


def _v_balloon(p, prime):
    G = _graph_param(p)
    if not gr.is_g1_based(G) or gr.girth(G) < 4:
        raise VerifierError("graph is not a balloon of girth >= 4")
    s = p["s"]
    r = reg_power(G, s, prime)
    return (r,) + _exact(r, 2 * s + G.n - 4)


# --------------------------------------------------------------------------
# verifiers: identities (computed = verified instances)
# --------------------------------------------------------------------------

def _count(checks) -> tuple[int, dict, str, list]:
    total = 0
    good = 0
    failures = []
    for label, ok in checks:
        total += 1
        if ok:
            good += 1
        else:
            failures.append(label)
    return good, {"exact": total}, MATCH if good == total else VIOLATION, failures


def _v_monotonicity(p, prime):
    """Betti numbers of ``S/J_H^s`` are bounded by those of ``S/J_G^s``."""
    G = _graph_param(p)
    s = p["s"]
    big = betti_power(G, s, prime)

    def checks():
        for vs in gr.induced_subsets(G, 1):
            if len(vs) == G.n:
                continue
            H = G.induced(vs)
            small = betti_power(H, s, prime)
            yield list(vs), small.dominated_by(big)

    return _count(checks())


def _v_contraction(p, prime):
    """``J_H^s = J_G^s cap S_H`` for induced subgraphs ``H = G[A]``."""
    G = _graph_param(p)
    s = p["s"]
    n = G.n
    bei = build_bei(G, prime)
    Js = power(bei.ideal, s)

    def checks():
        for A in gr.induced_subsets(G, 1):
            if len(A) == n:
                continue
            H = Graph(n, G.induced_edges(A))
            JH = power(build_bei(H, ring=bei.ring).ideal, s)
            cut = contract_to_variables(Js, vertex_variables(n, A))
            yield list(A), ideal_equal(cut, JH)

    return _count(checks())


def ohtani_holds(G: Graph, v: int, prime: int = DEFAULT_PRIME) -> bool:
    """``J_G = (J_{G minus v} + (x_v, y_v)) cap J_{G_v}``."""
    ring = bei_ring(G.n, prime)
    J = build_bei(G, ring=ring).ideal
    left = build_bei(G.isolate(v), ring=ring).ideal + Ideal(ring, [ring.var(v - 1), ring.var(G.n + v - 1)])
    right = build_bei(G.neighborhood_complete(v), ring=ring).ideal
    return ideal_equal(intersect(left, right), J)


def _v_ohtani(p, prime):
    G = _graph_param(p)

    def checks():
        for v in G.vertices:
            if not G.is_simplicial(v):
                yield v, ohtani_holds(G, v, prime)

    return _count(checks())


def fm_colon_holds(G: Graph, e: tuple[int, int], prime: int = DEFAULT_PRIME) -> bool:
    """``(J_{G minus e} : f_e) + J_G = J_{(G minus e)_e + e}`` for an edge ``e``."""
    ring = bei_ring(G.n, prime)
    H = G.delete_edge(e)
    fe = edge_binomial(ring, G.n, *e)
    left = colon_element(build_bei(H, ring=ring).ideal, fe) + build_bei(G, ring=ring).ideal
    right = build_bei(H.double_complete(e).add_edge(e), ring=ring).ideal
    return ideal_equal(left, right)


def _v_fm_colon(p, prime):
    G = _graph_param(p)
    edges = p.get("edges")
    edges = [tuple(e) for e in edges] if edges else G.sorted_edges()
    return _count((list(e), fm_colon_holds(G, e, prime)) for e in edges)


def initial_ideal_graph(I: Ideal, n: int) -> Graph:
    """Graph on ``2n`` vertices (``x_i -> i``, ``y_i -> n + i``) of a quadratic
    squarefree monomial ideal."""
    edges = []
    for g in I.gens:
        (m,) = g.terms
        support = [k for k, e in enumerate(I.ring.unpack(m)) if e]
        if len(support) != 2 or I.ring.mdeg(m) != 2:
            raise ValueError("not a quadratic squarefree monomial ideal")
        edges.append((support[0] + 1, support[1] + 1))
    return Graph(2 * n, edges)


def _v_conca_initial(p, prime):
    """For ``K_n``: ``in_lex(J)^s = in_lex(J^s)``, and the graph of ``in_lex(J)``
    has induced matching number 1."""
    n, s = p["n"], p["s"]
    bei = build_bei(gr.complete(n), prime)
    lex = MonomialOrder.lex(bei.ring.nvars)
    init = initial_ideal(bei.ideal, lex)
    H = initial_ideal_graph(init, n)
    checks = [
        ("power", ideal_equal(power(init, s), initial_ideal(power(bei.ideal, s), lex))),
        ("nu", gr.induced_matching_number(H) == 1),
    ]
    return _count(checks)


THEOREMS: dict[str, Callable] = {
    "path": _v_path,
    "complete": _v_complete,
    "star": _v_star,
    "cycle": _v_cycle,
    "aci-tree": _v_aci_tree,
    "caterpillar": _v_caterpillar,
    "lower-bound": _v_lower_bound,
    "clique-sum": _v_clique_sum,
    "g1": _v_g1,
    "g2": _v_g2,
    "unicyclic": _v_unicyclic,
    "balloon": _v_balloon,
    "monotonicity": _v_monotonicity,
    "contraction": _v_contraction,
    "ohtani": _v_ohtani,
    "conca-initial": _v_conca_initial,
    "fm-colon": _v_fm_colon,
}

IDENTITY_THEOREMS = {"monotonicity", "contraction", "ohtani", "conca-initial", "fm-colon"}


def verify_theorem(theorem: str, params: dict, prime: int = DEFAULT_PRIME) -> TheoremReport:
    """Run one verifier.  Budget exhaustion yields verdict ``BUDGET``."""
    fn = THEOREMS.get(theorem)
    if fn is None:
        raise VerifierError(f"unknown theorem id {theorem!r}; choose from {sorted(THEOREMS)}")
    start = time.perf_counter()
    attained = None
    details: list = []
    try:
        out = fn(params, prime)
    except BudgetExceeded as exc:
        ms = int((time.perf_counter() - start) * 1000)
        return TheoremReport(theorem, _public_params(params), None, {}, BUDGET, prime, ms,
                             details=[str(exc)])
    if theorem in IDENTITY_THEOREMS:
        computed, expected, verdict, details = out
    elif len(out) == 4:
        computed, expected, verdict, attained = out
    else:
        computed, expected, verdict = out
    ms = int((time.perf_counter() - start) * 1000)
    return TheoremReport(theorem, _public_params(params), computed, expected, verdict, prime, ms,
                         attained, details)


# --------------------------------------------------------------------------
# multiple primes and stabilization
# --------------------------------------------------------------------------

@dataclass
class PrimeComparison:
    values: dict[int, object]

    @property
    def anomaly(self) -> bool:
        return len(set(self.values.values())) > 1


def reg_across_primes(G: Graph, s: int, primes=PRIMES) -> PrimeComparison:
    """``reg(S/J_G^s)`` over several prime fields; disagreement is an anomaly."""
    return PrimeComparison({p: reg_power(G, s, p) for p in primes})


@dataclass
class ProbeResult:
    sequence: list[tuple[int, object]]
    stable_from: int | None
    failures: dict[int, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"sequence": [list(t) for t in self.sequence], "stable_from": self.stable_from,
                "failures": {str(k): v for k, v in self.failures.items()}}


def stabilization_probe(G: Graph, s_max: int, prime: int = DEFAULT_PRIME,
                        max_frame: int | None = None) -> ProbeResult:
    """``reg(S/J_G^s)`` for ``s = 1..s_max``.

    ``stable_from`` is the least ``s0`` such that ``reg(s + 1) - reg(s)`` is
    the same for every ``s >= s0`` in range, provided at least two such
    differences were observed.
    """
    if s_max < 2:
        raise ValueError("s_max must be >= 2")
    seq = []
    failures = {}
    for s in range(1, s_max + 1):
        try:
            seq.append((s, reg_power(G, s, prime, max_frame)))
        except BudgetExceeded as exc:
            failures[s] = str(exc)
            break
    regs = [r for _, r in seq]
    diffs = [b - a for a, b in zip(regs, regs[1:])]
    stable = None
    for s0 in range(1, len(diffs) + 1):
        tail = diffs[s0 - 1:]
        if len(tail) >= 2 and len(set(tail)) == 1:
            stable = s0
            break
    return ProbeResult(seq, stable, failures)


# --------------------------------------------------------------------------
# sweep families used by the acceptance suite and the CLI
# --------------------------------------------------------------------------

def aci_trees(max_n: int) -> list[Graph]:
    """T-type and H-type trees with at most ``max_n`` vertices, one per
    isomorphism class."""
    out = []
    seen = set()
    for a in range(1, max_n):
        for b in range(1, a + 1):
            for c in range(1, b + 1):
                if a + b + c + 1 <= max_n:
                    G = gr.t_type(a, b, c)
                    key = G.canonical_form()
                    if key not in seen:
                        seen.add(key)
                        out.append(G)
    for a in range(1, max_n):
        for b in range(1, a + 1):
            for c in range(1, max_n):
                for d in range(1, c + 1):
                    if a + b + c + d + 2 <= max_n:
                        G = gr.h_type(a, b, c, d)
                        key = G.canonical_form()
                        if key not in seen:
                            seen.add(key)
                            out.append(G)
    return out


def aci_unicyclic(max_n: int) -> list[Graph]:
    """G1-based (balloon) and G2-based unicyclic graphs of girth >= 4 on at
    most ``max_n`` vertices."""
    out = []
    for m in range(5, max_n + 1):
        for t in range(0, max_n - m + 1):
            out.append(gr.balloon(m, t))
    for m in range(6, max_n + 1):
        for a in range(0, max_n - m + 1):
            for b in range(0, max_n - m - a + 1):
                out.append(gr.g2_based(m, a, b))
    return out
