"""d-sequences, quadratic sequences over finite posets, related ideals, and
the regularity bounds for powers that they yield.

Containments "modulo I" are decided in the ambient ring by adding the
generators of ``I`` to both sides.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .ideal import Ideal, colon_element, ideal_equal, ideal_product, intersect, power
from .poly import Polynomial, Ring
from .resolution import hilbert_numerator, minimal_resolution, regularity

DEFAULT_CAP = 8


class CapExceeded(ValueError):
    """Poset too large for exhaustive poset-ideal enumeration."""


class PosetError(ValueError):
    pass


class Poset:
    """Partial order on ``{1, ..., k}`` given by covering relations ``a < b``."""

    def __init__(self, k: int, covers: Iterable[tuple[int, int]] = ()):
        self.k = k
        less = [[False] * (k + 1) for _ in range(k + 1)]
        for a, b in covers:
            if not (1 <= a <= k and 1 <= b <= k) or a == b:
                raise PosetError(f"bad cover ({a}, {b})")
            less[a][b] = True
        # transitive closure (Warshall)
        for m in range(1, k + 1):
            for a in range(1, k + 1):
                if less[a][m]:
                    for b in range(1, k + 1):
                        if less[m][b]:
                            less[a][b] = True
        for a in range(1, k + 1):
            if less[a][a]:
                raise PosetError("covering relations contain a cycle")
        self._less = less
        self.covers = tuple(sorted(set(map(tuple, covers))))

    @classmethod
    def chain(cls, k: int) -> "Poset":
        return cls(k, [(i, i + 1) for i in range(1, k)])

    @classmethod
    def antichain(cls, k: int) -> "Poset":
        return cls(k, [])

    @classmethod
    def from_json(cls, data) -> "Poset":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["k"], [tuple(c) for c in data.get("covers", [])])

    def to_json(self) -> dict:
        return {"k": self.k, "covers": [list(c) for c in self.covers]}

    @property
    def elements(self) -> range:
        return range(1, self.k + 1)

    def less(self, a: int, b: int) -> bool:
        return self._less[a][b]

    def leq(self, a: int, b: int) -> bool:
        return a == b or self._less[a][b]

    def is_ideal(self, S: Iterable[int]) -> bool:
        S = set(S)
        return all(a in S for b in S for a in self.elements if self._less[a][b])

    def ideals(self) -> list[frozenset[int]]:
        """All poset ideals (down-sets), by size then lexicographically."""
        out = []
        for r in range(self.k + 1):
            for S in combinations(self.elements, r):
                if self.is_ideal(S):
                    out.append(frozenset(S))
        return out

    def minimal_elements(self, within: Iterable[int] | None = None) -> list[int]:
        within = set(self.elements if within is None else within)
        return [a for a in sorted(within) if not any(self._less[b][a] for b in within)]

    def restrict(self, keep: Iterable[int]) -> tuple["Poset", dict[int, int]]:
        """Induced order on ``keep``, relabelled ``1..|keep|``; returns the
        poset and the old-to-new label map."""
        keep = sorted(set(keep))
        pos = {v: i + 1 for i, v in enumerate(keep)}
        covers = [(pos[a], pos[b]) for a in keep for b in keep if self._less[a][b]]
        return Poset(len(keep), covers), pos


def lies_inside_or_just_above(P: Poset, sigma: Iterable[int], lam: int) -> bool:
    sigma = set(sigma)
    if not P.is_ideal(sigma):
        raise PosetError(f"{sorted(sigma)} is not a poset ideal")
    if lam in sigma:
        return True
    return all(s in sigma for s in P.elements if P.less(s, lam))


def admissible_pairs(P: Poset) -> list[tuple[frozenset[int], int]]:
    """Every ``(Sigma, lambda)`` with ``lambda`` inside or just above ``Sigma``."""
    out = []
    for S in P.ideals():
        for lam in P.elements:
            if lies_inside_or_just_above(P, S, lam):
                out.append((S, lam))
    return out


@dataclass
class PosetSequence:
    """Elements ``u_1..u_k`` indexed by a poset, with an ambient ideal ``I``."""

    poset: Poset
    elements: tuple[Polynomial, ...]
    ambient: Ideal | None = None

    def __post_init__(self):
        self.elements = tuple(self.elements)
        if len(self.elements) != self.poset.k:
            raise PosetError("need one element per poset element")
        degs = []
        for u in self.elements:
            ok, d = u.is_homogeneous()
            if not u.terms or not ok or not d:
                raise ValueError("elements must be nonzero homogeneous of positive degree")
            degs.append(d)
        self.degrees = tuple(degs)
        self.ring: Ring = self.elements[0].ring
        if self.ambient is None:
            self.ambient = Ideal(self.ring)

    @property
    def d(self) -> int:
        return max(self.degrees)

    def u(self, lam: int) -> Polynomial:
        return self.elements[lam - 1]

    def U(self, S: Iterable[int]) -> Ideal:
        return Ideal(self.ring, [self.elements[i - 1] for i in sorted(S)])

    def U_plus_I(self, S: Iterable[int]) -> Ideal:
        return self.U(S) + self.ambient

    @property
    def U_all(self) -> Ideal:
        return self.U(self.poset.elements)


def chain_sequence(polys: Sequence[Polynomial], ambient: Ideal | None = None) -> PosetSequence:
    return PosetSequence(Poset.chain(len(polys)), tuple(polys), ambient)


# --------------------------------------------------------------------------
# d-sequences
# --------------------------------------------------------------------------

@dataclass
class DSequenceResult:
    ok: bool
    failing_index: int | None
    nondegenerate: bool
    redundant_index: int | None

    def __bool__(self):
        return self.ok


def is_d_sequence(polys: Sequence[Polynomial]) -> DSequenceResult:
    """Costa's criterion: ``((u_1..u_{i-1}) : u_i) cap (u_1..u_k) = (u_1..u_{i-1})``
    for every ``i``.  Non-degeneracy (no ``u_i`` in the ideal of the others)
    is reported separately."""
    polys = list(polys)
    if not polys:
        return DSequenceResult(True, None, True, None)
    ring = polys[0].ring
    U = Ideal(ring, polys)
    failing = None
    for i in range(1, len(polys) + 1):
        prev = Ideal(ring, polys[: i - 1])
        lhs = intersect(colon_element(prev, polys[i - 1]), U)
        if not ideal_equal(lhs, prev):
            failing = i
            break
    redundant = None
    for i, u in enumerate(polys, start=1):
        if Ideal(ring, polys[: i - 1] + polys[i:]).contains(u):
            redundant = i
            break
    return DSequenceResult(failing is None, failing, redundant is None, redundant)


def is_regular_sequence(polys: Sequence[Polynomial]) -> bool:
    """Homogeneous regular sequence test: the Hilbert series of ``S/(u)``
    equals ``prod (1 - t^{d_i}) / (1 - t)^N``."""
    polys = list(polys)
    if not polys:
        return True
    ring = polys[0].ring
    expect = {0: 1}
    for u in polys:
        ok, d = u.is_homogeneous()
        if not ok or d is None or d == 0:
            return False
        nxt: dict[int, int] = dict(expect)
        for e, c in expect.items():
            nxt[e + d] = nxt.get(e + d, 0) - c
        expect = {e: c for e, c in nxt.items() if c}
    return hilbert_numerator(Ideal(ring, polys)) == expect


# --------------------------------------------------------------------------
# quadratic sequences
# --------------------------------------------------------------------------

@dataclass
class QuadraticResult:
    ok: bool
    witnesses: dict[tuple[frozenset[int], int], frozenset[int]]
    failure: tuple[frozenset[int], int] | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "witnesses": [{"sigma": sorted(S), "lambda": lam, "theta": sorted(T)}
                              for (S, lam), T in self.witnesses.items()],
                "failure": None if self.failure is None else
                {"sigma": sorted(self.failure[0]), "lambda": self.failure[1]}}


def _pair_conditions(seq: PosetSequence, S, lam):
    """Pieces of the two containments that do not depend on ``Theta``."""
    I = seq.ambient
    left = intersect(colon_element(seq.U_plus_I(S), seq.u(lam)), seq.U_all + I)
    target = ideal_product(seq.U_plus_I(S), seq.U_all) if (S or not I.is_zero()) else None
    return left, target


def theta_works(seq: PosetSequence, S, lam, theta, _cache=None) -> bool:
    """Both containments for one ``(Sigma, lambda, Theta)``."""
    left, target = _cache or _pair_conditions(seq, S, lam)
    if not left.issubset(seq.U_plus_I(theta)):
        return False
    prods = [seq.u(lam) * seq.u(t) for t in sorted(theta)]
    if not prods:
        return True
    if target is None:
        return False
    gb = target.groebner()
    return all(gb.contains(f) for f in prods)


def is_quadratic_sequence(seq: PosetSequence, cap: int = DEFAULT_CAP) -> QuadraticResult:
    """Search every poset ideal ``Theta`` for each admissible ``(Sigma, lambda)``."""
    if seq.poset.k > cap:
        raise CapExceeded(f"|Lambda| = {seq.poset.k} exceeds cap {cap}")
    ideals = seq.poset.ideals()
    witnesses = {}
    for S, lam in admissible_pairs(seq.poset):
        cache = _pair_conditions(seq, S, lam)
        for T in ideals:
            if theta_works(seq, S, lam, T, cache):
                witnesses[(S, lam)] = T
                break
        else:
            return QuadraticResult(False, witnesses, (S, lam))
    return QuadraticResult(True, witnesses)


# --------------------------------------------------------------------------
# related ideals and bounds
# --------------------------------------------------------------------------

@dataclass
class RelatedIdeal:
    pair: tuple[frozenset[int], int] | None  # None marks U_Lambda itself
    ideal: Ideal
    unit: bool

    def describe(self) -> str:
        if self.pair is None:
            return "U_Lambda"
        S, lam = self.pair
        return f"(U_{{{','.join(map(str, sorted(S)))}}} : u_{lam}) + U_Lambda"


def related_ideals(seq: PosetSequence, cap: int = DEFAULT_CAP) -> list[RelatedIdeal]:
    """``U_Lambda`` and every ``(U_Sigma : u_lambda) + U_Lambda``, deduplicated
    by ideal equality (first occurrence kept); unit ideals are flagged."""
    if seq.poset.k > cap:
        raise CapExceeded(f"|Lambda| = {seq.poset.k} exceeds cap {cap}")
    U = seq.U_all
    found = [RelatedIdeal(None, U, U.is_unit())]
    for S, lam in admissible_pairs(seq.poset):
        if lam in S:
            V = Ideal.unit(seq.ring)
        else:
            V = colon_element(seq.U(S), seq.u(lam)) + U if S else U
        if any(ideal_equal(V, r.ideal) for r in found):
            continue
        found.append(RelatedIdeal((S, lam), V, V.is_unit()))
    return found


def _reg(I: Ideal):
    return -math.inf if I.is_unit() else regularity(I)


def filtration_bound(seq: PosetSequence, s: int, cap: int = DEFAULT_CAP):
    """``d (s - 1) + max reg(R / V)`` over related ideals ``V`` (unit ideals
    contribute ``-inf``)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    regs = [_reg(r.ideal) for r in related_ideals(seq, cap)]
    return seq.d * (s - 1) + max(regs)


@dataclass
class BoundReport:
    holds: bool
    left: object
    right: object
    details: dict = field(default_factory=dict)


def _check_dseq_hypotheses(polys: Sequence[Polynomial]):
    res = is_d_sequence(polys)
    if not res.ok:
        raise ValueError(f"not a d-sequence (fails at {res.failing_index})")
    if not is_regular_sequence(polys[:-1]):
        raise ValueError("leading elements are not a regular sequence")


def d_sequence_bound(polys: Sequence[Polynomial], s: int, check: bool = True):
    """``d (s - 1) + max{reg(R/U), sum_{i<k} d_i - k}`` for a d-sequence whose
    first ``k - 1`` elements form a regular sequence."""
    polys = list(polys)
    if check:
        _check_dseq_hypotheses(polys)
    ring = polys[0].ring
    degs = [u.is_homogeneous()[1] for u in polys]
    k = len(polys)
    d = max(degs)
    return d * (s - 1) + max(regularity(Ideal(ring, polys)), sum(degs[:-1]) - k)


def check_prop_2_10(polys: Sequence[Polynomial], check: bool = True) -> BoundReport:
    """``reg(R/(((u_1..u_{k-1}) : u_k), u_k)) <= max{reg(R/U), sum_{i<k} d_i - k}``."""
    polys = list(polys)
    if check:
        _check_dseq_hypotheses(polys)
    ring = polys[0].ring
    degs = [u.is_homogeneous()[1] for u in polys]
    k = len(polys)
    head = Ideal(ring, polys[:-1])
    left_ideal = colon_element(head, polys[-1]) + Ideal(ring, [polys[-1]])
    left = _reg(left_ideal)
    reg_u = regularity(Ideal(ring, polys))
    right = max(reg_u, sum(degs[:-1]) - k)
    return BoundReport(left <= right, left, right, {"reg_U": reg_u, "degree_term": sum(degs[:-1]) - k})


def check_lemma_2_4(seq: PosetSequence, sigma: Iterable[int], s: int) -> bool:
    """``U_Sigma cap U_Lambda^s = U_Sigma U_Lambda^{s-1}``."""
    sigma = frozenset(sigma)
    if not seq.poset.is_ideal(sigma):
        raise PosetError(f"{sorted(sigma)} is not a poset ideal")
    if s < 1:
        raise ValueError("s must be >= 1")
    US = seq.U(sigma)
    if not sigma:
        return True
    left = intersect(US, power(seq.U_all, s))
    right = US if s == 1 else ideal_product(US, power(seq.U_all, s - 1))
    return ideal_equal(left, right)


def koszul_shape_is_regular(polys: Sequence[Polynomial]) -> bool:
    """Second opinion on regularity of a sequence: Betti numbers of ``S/U``
    are those of the Koszul complex on the degrees."""
    polys = list(polys)
    ring = polys[0].ring
    degs = [u.is_homogeneous()[1] for u in polys]
    expect: dict[tuple[int, int], int] = {}
    for r in range(len(degs) + 1):
        for sub in combinations(degs, r):
            key = (r, sum(sub))
            expect[key] = expect.get(key, 0) + 1
    table = minimal_resolution(Ideal(ring, polys))
    return table.nonzero() == expect


# --------------------------------------------------------------------------
# generators for tests
# --------------------------------------------------------------------------

def random_regular_sequence(ring: Ring, degrees: Sequence[int], rng, density: float = 0.5
                            ) -> list[Polynomial]:
    """``u_i = x_i^{d_i} + (random lex-smaller terms)`` in variables ``x_i, x_{i+1}, ...``.

    Under lex the leading terms are the pairwise coprime pure powers
    ``x_i^{d_i}``, so the sequence is regular by construction.
    """
    from .resolution import _monomials_of_degree
    from .poly import WIDTH

    out = []
    N = ring.nvars
    for i, d in enumerate(degrees):
        if i >= N:
            raise ValueError("more elements than variables")
        sub = _monomials_of_degree(N - i, d)
        terms = {d << (WIDTH * i): 1}
        for m in sub:
            full = m << (WIDTH * i)
            if (full >> (WIDTH * i)) & 0xFF >= d:
                continue
            if rng.random() < density:
                terms[full] = rng.randrange(1, ring.p)
        out.append(Polynomial(ring, terms))
    return out
