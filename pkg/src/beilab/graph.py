"""Simple graphs on ``[n] = {1, ..., n}``: family constructors, vertex and
edge surgeries, and the combinatorial invariants that enter the regularity
formulas (longest induced path, internal vertices, girth, induced matching
number).

All invariants are exhaustive searches; the graphs handled here have at most
eight or so vertices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Iterator


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise GraphError("negative vertex count")
        norm = set()
        for e in edges:
            i, j = tuple(e)
            if i == j:
                raise GraphError(f"loop at {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphError(f"edge {{{i},{j}}} outside [1, {n}]")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    def __repr__(self):
        return f"Graph({self.n}, {sorted(self.edges)})"

    # basic structure ----------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in self.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list[set[int]]:
        left = set(self.vertices)
        out = []
        while left:
            v = left.pop()
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            out.append(comp)
        return out

    def is_clique(self, vs: Iterable[int]) -> bool:
        return all(self.has_edge(a, b) for a, b in combinations(vs, 2))

    def is_simplicial(self, v: int) -> bool:
        return self.is_clique(self.adjacency[v])

    def induced(self, vs: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled to ``1..k`` in increasing vertex order."""
        vs = sorted(set(vs))
        pos = {v: k + 1 for k, v in enumerate(vs)}
        return Graph(len(vs), [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos])

    def induced_edges(self, vs: Iterable[int]) -> frozenset[tuple[int, int]]:
        """Edges of the induced subgraph, keeping the original labels."""
        vs = set(vs)
        return frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)

    # surgeries ----------------------------------------------------------
    def delete_vertex(self, v: int) -> "Graph":
        """``G minus v`` on ``n - 1`` vertices; vertices above ``v`` shift down by one.

        Use ``isolate`` to keep the original labels instead.
        """
        self._check_vertex(v)
        return self.induced([u for u in self.vertices if u != v])

    def isolate(self, v: int) -> "Graph":
        """Remove every edge at ``v`` but keep all labels, so that
        ``J_{G minus v}`` lives in the same ring as ``J_G``."""
        self._check_vertex(v)
        return Graph(self.n, [e for e in self.edges if v not in e])

    def neighborhood_complete(self, v: int) -> "Graph":
        """``G_v``: add every edge between two neighbours of ``v``."""
        self._check_vertex(v)
        extra = combinations(sorted(self.adjacency[v]), 2)
        return Graph(self.n, list(self.edges) + list(extra))

    def delete_edge(self, e: tuple[int, int]) -> "Graph":
        i, j = sorted(e)
        if (i, j) not in self.edges:
            raise GraphError(f"{{{i},{j}}} is not an edge")
        return Graph(self.n, self.edges - {(i, j)})

    def add_edge(self, e: tuple[int, int]) -> "Graph":
        return Graph(self.n, list(self.edges) + [tuple(e)])

    def double_complete(self, e: tuple[int, int]) -> "Graph":
        """``G_e`` for a non-edge ``e = {u, v}``: join ``x, y`` whenever both lie
        in ``N(u)`` or both lie in ``N(v)``."""
        u, v = sorted(e)
        self._check_vertex(u)
        self._check_vertex(v)
        if self.has_edge(u, v):
            raise GraphError(f"{{{u},{v}}} is already an edge")
        extra = list(combinations(sorted(self.adjacency[u]), 2))
        extra += list(combinations(sorted(self.adjacency[v]), 2))
        return Graph(self.n, list(self.edges) + extra)

    def _check_vertex(self, v: int):
        if not 1 <= v <= self.n:
            raise GraphError(f"vertex {v} not in [1, {self.n}]")

    # I/O ----------------------------------------------------------------
    def to_text(self) -> str:
        return "\n".join([str(self.n)] + [f"{i} {j}" for i, j in self.sorted_edges()]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise GraphError("empty graph file")
        try:
            n = int(lines[0])
            edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        except ValueError as exc:
            raise GraphError(f"malformed graph file: {exc}") from None
        if any(len(e) != 2 for e in edges):
            raise GraphError("each edge line needs exactly two vertices")
        return cls(n, edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], data["edges"])

    def relabel(self, perm: dict[int, int]) -> "Graph":
        return Graph(self.n, [(perm[i], perm[j]) for i, j in self.edges])

    def canonical_form(self) -> tuple[int, tuple[tuple[int, int], ...]]:
        """Lexicographically least edge list over all relabellings (n <= 8)."""
        best = None
        for perm in permutations(range(1, self.n + 1)):
            es = tuple(sorted((min(perm[i - 1], perm[j - 1]), max(perm[i - 1], perm[j - 1]))
                              for i, j in self.edges))
            if best is None or es < best:
                best = es
        return (self.n, best or ())


# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------

def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, combinations(range(1, n + 1), 2))


def star(n: int) -> Graph:
    """``K_{1,n}`` on ``n + 1`` vertices with centre ``n + 1``."""
    if n < 1:
        raise GraphError("star needs n >= 1")
    return Graph(n + 1, [(i, n + 1) for i in range(1, n + 1)])


def g1(m: int) -> Graph:
    """Path ``1..m`` plus the chord ``{2, m}``."""
    if m < 4:
        raise GraphError("G1 needs m >= 4")
    return Graph(m, [(i, i + 1) for i in range(1, m)] + [(2, m)])


def g2(m: int) -> Graph:
    """Path ``1..m`` plus the chord ``{2, m - 1}``."""
    if m < 5:
        raise GraphError("G2 needs m >= 5")
    return Graph(m, [(i, i + 1) for i in range(1, m)] + [(2, m - 1)])


def _attach_path(edges: list, n: int, at: int, length: int) -> tuple[list, int]:
    """Hang ``length`` new vertices as a path off vertex ``at``."""
    prev = at
    for _ in range(length):
        n += 1
        edges.append((prev, n))
        prev = n
    return edges, n


def balloon(m: int, tail: int = 0) -> Graph:
    """``G1(m)`` with a path of ``tail`` further vertices hung from vertex 1
    (a path identified at its pendant vertex with the pendant vertex 1)."""
    base = g1(m)
    edges, n = _attach_path(list(base.edges), m, 1, tail)
    return Graph(n, edges)


def g2_based(m: int, a: int = 0, b: int = 0) -> Graph:
    """``G2(m)`` with paths of ``a`` and ``b`` further vertices hung from 1 and m."""
    base = g2(m)
    edges, n = _attach_path(list(base.edges), m, 1, a)
    edges, n = _attach_path(edges, n, m, b)
    return Graph(n, edges)


def clique_sum(n: int, m: int) -> Graph:
    """``C_n`` glued to ``K_m`` along the cycle edge ``{n - 1, n}``.

    The clique occupies ``{n - 1, n, n + 1, ..., n + m - 2}``.
    """
    if n < 3 or m < 3:
        raise GraphError("clique sum needs n, m >= 3")
    clique = [n - 1, n] + list(range(n + 1, n + m - 1))
    return Graph(n + m - 2, list(cycle(n).edges) + list(combinations(clique, 2)))


def two_path_tree(p: int, k: int, q: int, l: int | None = None) -> Graph:
    """Path ``1..p`` and path ``p+1..p+q`` joined by the edge ``{k, l}``.

    ``l`` defaults to ``p + 1`` (an end of the second path).  With ``k``
    internal and ``l`` an end the tree is T-type; with both internal it is
    H-type.
    """
    if p < 1 or q < 1:
        raise GraphError("both paths need at least one vertex")
    l = p + 1 if l is None else l
    if not (1 <= k <= p and p + 1 <= l <= p + q):
        raise GraphError("joining edge must run between the two paths")
    edges = [(i, i + 1) for i in range(1, p)] + [(i, i + 1) for i in range(p + 1, p + q)]
    return Graph(p + q, edges + [(k, l)])


def t_type(a: int, b: int, c: int) -> Graph:
    """Spider with legs of ``a, b, c`` edges (``a, b >= 1``, ``c >= 1``).

    Built as path ``1..a+b+1`` whose vertex ``a + 1`` is joined to the end of
    a second path with ``c`` vertices.
    """
    if min(a, b, c) < 1:
        raise GraphError("T-type legs need length >= 1")
    p = a + b + 1
    return two_path_tree(p, a + 1, c)


def h_type(a: int, b: int, c: int, d: int) -> Graph:
    """Two adjacent branch vertices: the first carries legs ``a, b``, the
    second legs ``c, d`` (all >= 1)."""
    if min(a, b, c, d) < 1:
        raise GraphError("H-type legs need length >= 1")
    p = a + b + 1
    q = c + d + 1
    return two_path_tree(p, a + 1, q, p + c + 1)


FAMILIES = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "g1": g1,
    "g2": g2,
    "balloon": balloon,
    "g2-based": g2_based,
    "clique-sum": clique_sum,
    "t-type": t_type,
    "h-type": h_type,
}


def make_family(kind: str, *params: int) -> Graph:
    try:
        ctor = FAMILIES[kind]
    except KeyError:
        raise GraphError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}") from None
    return ctor(*params)


# --------------------------------------------------------------------------
# invariants
# --------------------------------------------------------------------------

def maximal_cliques(G: Graph) -> list[frozenset[int]]:
    """Bron-Kerbosch with pivoting."""
    adj = G.adjacency
    out: list[frozenset[int]] = []

    def bk(r: set[int], p: set[int], x: set[int]):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            bk(r | {v}, p & adj[v], x & adj[v])
            p.discard(v)
            x.add(v)

    bk(set(), set(G.vertices), set())
    return out


def internal_vertices(G: Graph) -> set[int]:
    """Vertices lying in at least two maximal cliques."""
    count: dict[int, int] = {}
    for c in maximal_cliques(G):
        for v in c:
            count[v] = count.get(v, 0) + 1
    return {v for v, k in count.items() if k >= 2}


def iv(G: Graph) -> int:
    return len(internal_vertices(G))


def longest_induced_path(G: Graph) -> list[int]:
    """Vertex sequence of a longest induced path (depth-first extension)."""
    adj = G.adjacency
    best: list[int] = [1] if G.n else []

    def extend(seq: list[int], blocked: set[int]):
        nonlocal best
        if len(seq) > len(best):
            best = list(seq)
        tail = seq[-1]
        for w in adj[tail]:
            if w in blocked:
                continue
            # w may touch only the current end of the path
            if any(u in adj[w] for u in seq[:-1]):
                continue
            seq.append(w)
            blocked.add(w)
            extend(seq, blocked)
            seq.pop()
            blocked.discard(w)

    for v in G.vertices:
        extend([v], {v})
    return best


def ell(G: Graph) -> int:
    """Length (number of edges) of a longest induced path."""
    return max(len(longest_induced_path(G)) - 1, 0)


def girth(G: Graph) -> float:
    """Length of a shortest cycle; ``inf`` for forests."""
    best = math.inf
    adj = G.adjacency
    for s in G.vertices:
        dist = {s: 0}
        parent = {s: 0}
        queue = [s]
        for v in queue:
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def induced_matching_number(G: Graph) -> int:
    """Largest set of edges no two of which are joined by an edge of ``G``."""
    edges = G.sorted_edges()
    adj = G.adjacency

    def compatible(e, f):
        a, b = e
        c, d = f
        if {a, b} & {c, d}:
            return False
        return not (c in adj[a] or d in adj[a] or c in adj[b] or d in adj[b])

    best = 0

    def rec(start: int, chosen: list):
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (len(edges) - start) <= best:
            return
        for k in range(start, len(edges)):
            e = edges[k]
            if all(compatible(e, f) for f in chosen):
                chosen.append(e)
                rec(k + 1, chosen)
                chosen.pop()

    rec(0, [])
    return best


nu = induced_matching_number


def leaves(G: Graph) -> list[int]:
    return [v for v in G.vertices if G.degree(v) == 1]


def is_tree(G: Graph) -> bool:
    return G.n >= 1 and G.is_connected() and len(G.edges) == G.n - 1


def is_unicyclic(G: Graph) -> bool:
    return G.n >= 3 and G.is_connected() and len(G.edges) == G.n


def is_path_graph(G: Graph) -> bool:
    return is_tree(G) and all(G.degree(v) <= 2 for v in G.vertices)


def is_caterpillar(G: Graph) -> bool:
    """Tree whose non-leaf vertices induce a path (or nothing)."""
    if not is_tree(G):
        return False
    spine = [v for v in G.vertices if G.degree(v) > 1]
    if len(spine) <= 1:
        return True
    H = G.induced(spine)
    return is_path_graph(H)


def _cycle_vertices(G: Graph) -> set[int]:
    """Vertices on the unique cycle of a unicyclic graph (strip leaves)."""
    deg = {v: G.degree(v) for v in G.vertices}
    alive = set(G.vertices)
    stack = [v for v in alive if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in G.adjacency[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return alive


def is_t_type(G: Graph) -> bool:
    """Tree with exactly one vertex of degree 3 and none larger."""
    if not is_tree(G):
        return False
    degs = [G.degree(v) for v in G.vertices]
    return max(degs, default=0) == 3 and degs.count(3) == 1


def is_h_type(G: Graph) -> bool:
    """Tree with exactly two vertices of degree 3, adjacent, none larger."""
    if not is_tree(G):
        return False
    big = [v for v in G.vertices if G.degree(v) >= 3]
    return (len(big) == 2 and all(G.degree(v) == 3 for v in big)
            and G.has_edge(*big))


def is_g1_based(G: Graph) -> bool:
    """Unicyclic, a single vertex of degree 3 (on the cycle), all others of
    degree at most 2: a cycle with one path hanging from it."""
    if not is_unicyclic(G):
        return False
    big = [v for v in G.vertices if G.degree(v) >= 3]
    return len(big) == 1 and G.degree(big[0]) == 3


def is_g2_based(G: Graph) -> bool:
    """Unicyclic with exactly two degree-3 vertices, adjacent on the cycle,
    each carrying one hanging path."""
    if not is_unicyclic(G):
        return False
    big = [v for v in G.vertices if G.degree(v) >= 3]
    if len(big) != 2 or any(G.degree(v) != 3 for v in big):
        return False
    cyc = _cycle_vertices(G)
    return set(big) <= cyc and G.has_edge(*big)


@dataclass(frozen=True)
class GraphInvariants:
    ell: int
    iv: int
    girth: float
    nu: int
    flags: frozenset[str]

    def to_json(self) -> dict:
        return {"ell": self.ell, "iv": self.iv,
                "girth": None if self.girth == math.inf else self.girth,
                "nu": self.nu, "flags": sorted(self.flags)}


FAMILY_FLAGS = ("path", "cycle", "complete", "star", "caterpillar", "T-type", "H-type",
                "G1-based", "G2-based")


def classify(G: Graph) -> frozenset[str]:
    """Structural flags.  ``unclassified`` marks graphs outside every family
    the recognizers know about."""
    flags = set()
    tree = is_tree(G)
    uni = is_unicyclic(G)
    if tree:
        flags.add("tree")
        if is_caterpillar(G):
            flags.add("caterpillar")
        if is_path_graph(G):
            flags.add("path")
        if is_t_type(G):
            flags.add("T-type")
        if is_h_type(G):
            flags.add("H-type")
        if G.n >= 3 and any(G.degree(v) == G.n - 1 for v in G.vertices):
            flags.add("star")
    if uni:
        flags.add("unicyclic")
        if all(G.degree(v) == 2 for v in G.vertices):
            flags.add("cycle")
        if is_g1_based(G):
            flags.add("G1-based")
            flags.add("balloon")
        if is_g2_based(G):
            flags.add("G2-based")
    if G.n >= 1 and len(G.edges) == G.n * (G.n - 1) // 2:
        flags.add("complete")
    if not flags & set(FAMILY_FLAGS):
        flags.add("unclassified")
    return frozenset(flags)


def invariants(G: Graph) -> GraphInvariants:
    return GraphInvariants(ell(G), iv(G), girth(G), induced_matching_number(G), classify(G))


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

def connected_graphs(n: int) -> list[Graph]:
    """One representative of every isomorphism class of connected graphs on
    ``n`` vertices (``n <= 7``), from the networkx graph atlas."""
    import networkx as nx

    if n > 7:
        raise GraphError("atlas covers n <= 7 only")
    out = []
    for H in nx.graph_atlas_g():
        if H.number_of_nodes() != n or (n and not nx.is_connected(H)):
            continue
        out.append(Graph(n, [(u + 1, v + 1) for u, v in H.edges()]))
    return out


def induced_subsets(G: Graph, min_size: int = 1) -> Iterator[tuple[int, ...]]:
    for k in range(min_size, G.n + 1):
        yield from combinations(G.vertices, k)
