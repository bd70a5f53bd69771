"""Graded free resolutions and Betti tables.

The resolution is Schreyer's: level 1 is a degrevlex Groebner basis of the
ideal, and every higher level consists of the syzygies obtained from the
S-pairs of the level below.  By Schreyer's theorem each level is itself a
Groebner basis of the syzygy module for the induced order, so the whole frame
(all leading terms) is determined combinatorially and every element is filled
in by reducing one S-vector to zero.

The resolution is usually not minimal.  Graded Betti numbers are read off from
it without an explicit minimization:

    beta_{i,j} = f_{i,j} - rank D_{i,j} - rank D_{i+1,j}

where ``f_{i,j}`` counts level-``i`` generators of degree ``j`` and ``D_{i,j}``
is the scalar matrix of unit entries of the ``i``-th differential between
generators of degree ``j`` (the homology of ``F tensor K``).

Term encoding.  A term ``m * e_c`` of a free module in the resolution is the
integer ``(T << CB) | c`` where ``T`` is the *total* monomial ``m * lead(e_c)``
in the polynomial ring.  For homogeneous vectors under degrevlex, the Schreyer
order is then plain integer order: smaller key means larger term.  Multiplying
a term by a monomial ``q`` is adding ``q << CB``.  Stored tails pack a term
and its coefficient into one integer, ``(key << cw) | c`` with ``cw`` the bit
length of the prime, which roughly halves the memory of large levels.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .groebner import GroebnerBasis
from .ideal import Ideal
from .poly import WIDTH, MonomialOrder, Polynomial, Ring

CB = 32
CMASK = (1 << CB) - 1
NEG_INF = -math.inf


class BudgetExceeded(RuntimeError):
    """A resolution would exceed its configured size or degree budget."""


class NonHomogeneousError(ValueError):
    pass


# --------------------------------------------------------------------------
# Betti tables
# --------------------------------------------------------------------------

@dataclass
class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]`` of a cyclic module ``S/I``.

    ``complete`` is False when truncation bounds cut the computation short;
    entries with ``i <= hom_limit`` and ``j <= deg_limit`` are exact either way.
    """

    entries: dict[tuple[int, int], int]
    complete: bool = True
    hom_limit: int | None = None
    deg_limit: int | None = None

    def __getitem__(self, ij):
        return self.entries.get(ij, 0)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def regularity(self):
        nz = [j - i for (i, j), v in self.entries.items() if v]
        return max(nz) if nz else NEG_INF

    def projective_dimension(self):
        nz = [i for (i, j), v in self.entries.items() if v]
        return max(nz) if nz else NEG_INF

    def totals(self) -> list[int]:
        pd = self.projective_dimension()
        if pd == NEG_INF:
            return []
        return [sum(v for (i, _), v in self.entries.items() if i == k) for k in range(pd + 1)]

    def alternating_sums(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, j), v in self.entries.items():
            if v:
                out[j] = out.get(j, 0) + (-1) ** i * v
        return {j: c for j, c in out.items() if c}

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def dominated_by(self, other: "BettiTable") -> bool:
        return all(v <= other[k] for k, v in self.entries.items())

    def to_json(self) -> dict:
        return {"betti": [[i, j, v] for (i, j), v in self.nonzero().items()],
                "complete": self.complete}

    def __str__(self):
        nz = self.nonzero()
        if not nz:
            return "zero module"
        cols = max(i for i, _ in nz) + 1
        rows = sorted({j - i for i, j in nz})
        rows = list(range(min(rows), max(rows) + 1))
        tot = self.totals()
        width = max(len(str(v)) for v in list(nz.values()) + tot) + 1
        lines = [" " * 7 + "".join(f"{i:>{width}}" for i in range(cols)),
                 "total:" + " " + "".join(f"{t:>{width}}" for t in tot)]
        for r in rows:
            cells = []
            for i in range(cols):
                v = nz.get((i, i + r), 0)
                cells.append(f"{(v if v else '.'):>{width}}")
            lines.append(f"{r:>5}: " + "".join(cells))
        return "\n".join(lines)


# --------------------------------------------------------------------------
# free module elements (public view of syzygies)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FreeModuleElement:
    """Vector in a graded free module ``F = sum S(-shift_k)``."""

    coords: dict[int, Polynomial]
    shifts: tuple[int, ...]

    def evaluate(self, images: Sequence[Polynomial]) -> Polynomial:
        """Apply the map ``e_k -> images[k]``."""
        total = None
        for k, f in self.coords.items():
            term = f * images[k]
            total = term if total is None else total + term
        if total is None:
            raise ValueError("empty vector needs a ring to evaluate in")
        return total

    def is_homogeneous(self) -> bool:
        degs = set()
        for k, f in self.coords.items():
            ok, d = f.is_homogeneous()
            if not ok:
                return False
            if d is not None:
                degs.add(d + self.shifts[k])
        return len(degs) <= 1

    def degree(self) -> int | None:
        for k, f in self.coords.items():
            ok, d = f.is_homogeneous()
            if ok and d is not None:
                return d + self.shifts[k]
        return None


# --------------------------------------------------------------------------
# Schreyer resolution
# --------------------------------------------------------------------------

class _Level:
    """Generators of one free module in the resolution."""

    __slots__ = ("comp", "lead", "deg", "tail", "const")

    def __init__(self):
        self.comp: list[int] = []
        self.lead: list[int] = []
        self.deg: list[int] = []
        # packed terms, see the module docstring
        self.tail: list[list[int]] = []
        # unit entries of the differential: {index at level below: coeff}
        self.const: list[dict[int, int]] = []

    def __len__(self):
        return len(self.lead)

    def terms(self, idx: int, cw: int) -> list[tuple[int, int]]:
        """All terms of generator ``idx`` as ``(key, coeff)``, lead first."""
        mask = (1 << cw) - 1
        head = ((self.lead[idx] << CB) | self.comp[idx], 1)
        return [head] + [(v >> cw, v & mask) for v in self.tail[idx]]


def _sort_for_termination(entries, var: int):
    """Order new generators by component, then by decreasing exponent of
    ``var`` in the relative leading monomial (Schreyer's trick: the next
    level's leading terms then avoid ``var`` and the frame has finite length).
    """
    shift = WIDTH * var

    def key(item):
        comp, rel = item[0], item[1]
        return (comp, -((rel >> shift) & 0xFF) if var >= 0 else 0)

    return sorted(entries, key=key)


def _minimal_pair_lcms(level: _Level, ring: Ring, deg_bound):
    """Frame of the next level: for each generator ``a``, minimal generators of
    the monomial ideal of ``lcm(lead_a, lead_b) / lead_a`` over later ``b`` in
    the same component.  Returns ``(a, b, lcm)`` triples and whether anything
    was dropped by ``deg_bound``."""
    lcm_of = ring.lcm
    g = ring.guard
    mdeg = ring.mdeg
    by_comp: dict[int, list[int]] = {}
    for idx, c in enumerate(level.comp):
        by_comp.setdefault(c, []).append(idx)
    out = []
    truncated = False
    for idxs in by_comp.values():
        leads = [level.lead[i] for i in idxs]
        for pos in range(len(idxs)):
            Ta = leads[pos]
            cands = []
            for q in range(pos + 1, len(idxs)):
                L = lcm_of(Ta, leads[q])
                cands.append((mdeg(L), q, L))
            cands.sort()
            kept: list[tuple[int, int, int]] = []
            for d, q, L in cands:
                Lg = L | g
                if any((Lg - K) & g == g for _, _, K in kept):
                    continue
                kept.append((d, q, L))
            for d, q, L in kept:
                if deg_bound is not None and d > deg_bound:
                    truncated = True
                    continue
                out.append((idxs[pos], idxs[q], L))
    return out, truncated


def _fill_level(prev: _Level, frame, ring: Ring, var: int, budget) -> _Level:
    """Compute the generators of the next level by reducing S-vectors."""
    p = ring.p
    g = ring.guard
    cw = p.bit_length()
    cmask = (1 << cw) - 1
    items = [(a, L - prev.lead[a], b, L) for a, b, L in frame]
    items = _sort_for_termination(items, var)
    if budget is not None and len(items) > budget:
        raise BudgetExceeded(f"resolution level would have {len(items)} generators (budget {budget})")

    reducers: dict[int, list[tuple[int, int]]] = {}
    for idx, c in enumerate(prev.comp):
        reducers.setdefault(c, []).append((prev.lead[idx], idx))
    memo: dict[int, int] = {}
    lead = prev.lead
    tails = prev.tail
    comps = prev.comp

    new = _Level()
    heappush = heapq.heappush
    heappop = heapq.heappop
    for a, _, b, L in items:
        qa = (L - lead[a]) << CB
        qb = (L - lead[b]) << CB
        cur: dict[int, int] = {}
        for v in tails[a]:
            cur[(v >> cw) + qa] = v & cmask
        for v in tails[b]:
            nk = (v >> cw) + qb
            v = (cur.get(nk, 0) - (v & cmask)) % p
            if v:
                cur[nk] = v
            else:
                cur.pop(nk, None)
        heap = list(cur)
        heapq.heapify(heap)
        syz: dict[int, int] = {(L << CB) | b: p - 1}
        while heap:
            k = heappop(heap)
            c = cur.pop(k, 0)
            if not c:
                continue
            e = memo.get(k)
            if e is None:
                t = k >> CB
                tg = t | g
                for Te, idx in reducers.get(k & CMASK, ()):
                    if (tg - Te) & g == g:
                        e = idx
                        break
                else:
                    raise ArithmeticError("S-vector failed to reduce to zero; frame is inconsistent")
                memo[k] = e
            q = k - ((lead[e] << CB) | comps[e])
            sk = ((k >> CB) << CB) | e
            syz[sk] = (syz.get(sk, 0) - c) % p
            for w in tails[e]:
                nk = (w >> cw) + q
                d = c * (w & cmask)
                old = cur.get(nk)
                if old is None:
                    cur[nk] = -d % p
                    heappush(heap, nk)
                else:
                    v = (old - d) % p
                    if v:
                        cur[nk] = v
                    else:
                        del cur[nk]
        tail = []
        const = {}
        for sk, c in syz.items():
            if not c:
                continue
            tail.append((sk << cw) | c)
            e = sk & CMASK
            if (sk >> CB) == lead[e]:
                const[e] = c
        new.comp.append(a)
        new.lead.append(L)
        new.deg.append(ring.mdeg(L))
        new.tail.append(tail)
        new.const.append(const)
    return new


def rank_mod_p(rows: Sequence[dict[int, int]], p: int) -> int:
    """Rank of a sparse matrix given as a list of ``{column: value}`` rows."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        v = {k: c % p for k, c in row.items() if c % p}
        while v:
            col = min(v)
            prow = pivots.get(col)
            if prow is None:
                inv = pow(v[col], -1, p)
                pivots[col] = {k: c * inv % p for k, c in v.items()}
                rank += 1
                break
            c = v[col]
            for k, pc in prow.items():
                nv = (v.get(k, 0) - c * pc) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return rank


@dataclass
class SchreyerResolution:
    """A (generally non-minimal) Schreyer resolution of ``S/I``.

    ``levels[i]`` for ``i >= 1`` holds the generators of ``F_i``; ``F_0 = S``.
    Only frame data and unit entries are retained unless ``keep_vectors``.
    """

    ring: Ring
    sizes: list[dict[int, int]]           # level -> {degree: count}
    const: list[list[dict[int, int]]]     # level -> per generator unit entries
    degs: list[list[int]]
    complete: bool
    hom_limit: int
    deg_limit: int | None
    levels: list[_Level] = field(default_factory=list, repr=False)
    gb: GroebnerBasis | None = field(default=None, repr=False)
    order_map: list[int] = field(default_factory=list, repr=False)

    def frame_size(self) -> int:
        return sum(sum(s.values()) for s in self.sizes)

    def betti(self) -> BettiTable:
        p = self.ring.p
        ranks: dict[tuple[int, int], int] = {}
        for i in range(1, len(self.degs)):
            by_deg: dict[int, list[dict[int, int]]] = {}
            for idx, d in enumerate(self.degs[i]):
                row = self.const[i][idx]
                if row:
                    by_deg.setdefault(d, []).append(row)
            for d, rows in by_deg.items():
                ranks[(i, d)] = rank_mod_p(rows, p)
        entries: dict[tuple[int, int], int] = {}
        for i in range(len(self.degs)):
            for d, f in self.sizes[i].items():
                b = f - ranks.get((i, d), 0) - ranks.get((i + 1, d), 0)
                if b < 0:
                    raise ArithmeticError("negative Betti number; resolution is inconsistent")
                if b:
                    entries[(i, d)] = b
        return BettiTable(entries, self.complete, self.hom_limit, self.deg_limit)


def schreyer_resolution(I: Ideal, hom_bound: int | None = None, deg_bound: int | None = None,
                        max_frame: int | None = None, keep_vectors: bool = False
                        ) -> SchreyerResolution:
    """Schreyer resolution of ``S/I`` for a homogeneous ideal ``I``.

    ``hom_bound`` caps the homological degree (default: number of variables,
    which never truncates).  ``deg_bound`` caps the internal degree ``j``:
    frame generators of higher degree are never formed.  Reducing a
    homogeneous S-vector of degree ``j`` only uses generators of degree at
    most ``j``, so every entry with ``j <= deg_bound`` stays exact.
    ``max_frame`` bounds the number of generators in any single level and
    raises ``BudgetExceeded`` beyond it.
    """
    ring = I.ring
    if not I.is_homogeneous():
        raise NonHomogeneousError("resolution needs a homogeneous ideal")
    nvars = ring.nvars
    hom_bound = nvars if hom_bound is None else hom_bound
    order = MonomialOrder.degrevlex(nvars)
    gb = I.groebner(order)
    p = ring.p
    cw = p.bit_length()

    # level 1: the Groebner basis, sorted for the termination trick
    polys = list(gb.elements)
    entries = []
    for pos, f in enumerate(polys):
        lm, _ = f.lead(order)
        entries.append((0, lm, pos))
    entries = _sort_for_termination(entries, 0)
    truncated = False
    lvl = _Level()
    order_map = []
    for _, lm, pos in entries:
        d = ring.mdeg(lm)
        if deg_bound is not None and d > deg_bound:
            truncated = True
            continue
        f = polys[pos]
        lvl.comp.append(0)
        lvl.lead.append(lm)
        lvl.deg.append(d)
        lvl.tail.append([(m << (CB + cw)) | (c % p) for m, c in f.terms.items() if m != lm])
        lvl.const.append({0: f.terms[lm]} if lm == 0 else {})
        order_map.append(pos)
    levels = [None, lvl]
    sizes = [{0: 1}]
    consts: list[list[dict[int, int]]] = [[{}]]
    degs: list[list[int]] = [[0]]

    def record(level: _Level):
        s: dict[int, int] = {}
        for d in level.deg:
            s[d] = s.get(d, 0) + 1
        sizes.append(s)
        consts.append(level.const)
        degs.append(list(level.deg))

    if max_frame is not None and len(lvl) > max_frame:
        raise BudgetExceeded(f"Groebner basis has {len(lvl)} elements (budget {max_frame})")
    record(lvl)
    i = 1
    while len(levels[i]) and i <= hom_bound:
        frame, cut = _minimal_pair_lcms(levels[i], ring, deg_bound)
        truncated |= cut
        if not frame:
            break
        nxt = _fill_level(levels[i], frame, ring, i, max_frame)
        levels.append(nxt)
        record(nxt)
        if not keep_vectors and i >= 2:
            levels[i - 1] = None
        i += 1
    if len(levels) - 1 > hom_bound and len(levels[-1]):
        # level hom_bound + 1 was built only for its unit entries
        last = levels[-1]
        frame, _ = _minimal_pair_lcms(last, ring, deg_bound)
        if frame:
            truncated = True
    if len(levels) - 1 > nvars + 1 or (len(levels) - 1 == nvars + 1 and len(levels[-1])):
        raise ArithmeticError("Schreyer frame longer than the number of variables")
    return SchreyerResolution(ring, sizes, consts, degs, not truncated, hom_bound, deg_bound,
                              levels if keep_vectors else [], gb, order_map)


def minimal_resolution(I: Ideal, hom_bound: int | None = None, deg_bound: int | None = None,
                       max_frame: int | None = None) -> BettiTable:
    """Graded Betti numbers of ``S/I``."""
    res = schreyer_resolution(I, hom_bound, deg_bound, max_frame)
    table = res.betti()
    if hom_bound is not None:
        table.entries = {k: v for k, v in table.entries.items() if k[0] <= hom_bound}
    return table


def regularity(I: Ideal, hom_bound: int | None = None, deg_bound: int | None = None,
               max_frame: int | None = None):
    """Castelnuovo-Mumford regularity of ``S/I`` (quotient convention).

    The unit ideal gives the zero module, whose regularity is ``-inf``.
    Raises ``BudgetExceeded`` if truncation makes the value uncertain.
    """
    table = minimal_resolution(I, hom_bound, deg_bound, max_frame)
    if not table.complete:
        raise BudgetExceeded("resolution truncated; regularity not certified")
    return table.regularity()


def syzygies(gb: GroebnerBasis) -> list[FreeModuleElement]:
    """Schreyer syzygies of the elements of a homogeneous degrevlex basis.

    Coordinates index ``gb.elements``; the result is a Groebner basis of the
    syzygy module for the induced Schreyer order.
    """
    ring = gb.ring
    I = Ideal(ring, gb.elements)
    I._gb[gb.order] = gb
    if gb.order != MonomialOrder.degrevlex(ring.nvars):
        raise ValueError("syzygies are computed from a degrevlex basis")
    res = schreyer_resolution(I, hom_bound=2, keep_vectors=True)
    lvl1, lvl2 = res.levels[1], res.levels[2] if len(res.levels) > 2 else _Level()
    shifts = tuple(g.is_homogeneous()[1] for g in gb.elements)
    out = []
    for idx in range(len(lvl2)):
        coords: dict[int, dict[int, int]] = {}
        for k, c in lvl2.terms(idx, ring.p.bit_length()):
            e = k & CMASK
            mono = (k >> CB) - lvl1.lead[e]
            orig = res.order_map[e]
            coords.setdefault(orig, {})
            coords[orig][mono] = (coords[orig].get(mono, 0) + c) % ring.p
        out.append(FreeModuleElement(
            {e: Polynomial(ring, {m: c for m, c in t.items() if c}) for e, t in coords.items()},
            shifts))
    return out


def verify_complex(res: SchreyerResolution) -> bool:
    """Check ``d o d = 0`` on every generator (needs ``keep_vectors=True``)."""
    p = res.ring.p
    cw = p.bit_length()
    levels = res.levels
    for i in range(2, len(levels)):
        upper, lower = levels[i], levels[i - 1]
        for idx in range(len(upper)):
            acc: dict[int, int] = {}
            for k, c in upper.terms(idx, cw):
                e = k & CMASK
                q = (k >> CB) - lower.lead[e]
                for kk, cc in lower.terms(e, cw):
                    nk = kk + (q << CB)
                    acc[nk] = (acc.get(nk, 0) + c * cc) % p
            if any(acc.values()):
                return False
    return True


# --------------------------------------------------------------------------
# Koszul homology oracle
# --------------------------------------------------------------------------

def _monomials_of_degree(nvars: int, d: int) -> list[int]:
    out = []

    def rec(k, left, acc):
        if k == nvars - 1:
            out.append(acc | (left << (WIDTH * k)))
            return
        for e in range(left, -1, -1):
            rec(k + 1, left - e, acc | (e << (WIDTH * k)))

    if nvars == 0:
        return [0] if d == 0 else []
    rec(0, d, 0)
    return out


class KoszulOracle:
    """``dim Tor_i(S/I, K)_j`` from the Koszul complex on the variables.

    Every graded piece ``K_i tensor (S/I)_{j-i}`` is a finite-dimensional vector
    space with basis (subset of variables) x (standard monomial).  When the ring
    carries a multigrading for which ``I`` is homogeneous, pieces split further
    by multidegree and each rank is taken blockwise.
    """

    def __init__(self, I: Ideal):
        if not I.is_homogeneous():
            raise NonHomogeneousError("oracle needs a homogeneous ideal")
        self.ideal = I
        self.ring = I.ring
        self.gb = I.groebner(MonomialOrder.degrevlex(self.ring.nvars))
        self.leads = self.gb.lead_monomials()
        self._std: dict[int, list[int]] = {}
        self._nf: dict[int, dict[int, int]] = {}
        self._bases: dict[tuple[int, int], dict] = {}
        self._ranks: dict[tuple[int, int], dict] = {}
        self.mdeg = self._grading(I)

    def _grading(self, I: Ideal) -> Callable[[int], int]:
        """Additive multidegree map, packed into an integer (16 bits per
        coordinate) so that degrees of products are sums of integers."""
        ring = self.ring
        weights = ring.weights
        if weights is not None:
            packed = [sum(w << (16 * c) for c, w in enumerate(row)) for row in weights]

            def md(m):
                return sum(e * packed[k] for k, e in enumerate(ring.unpack(m)) if e)

            if all(len({md(m) for m in g.terms}) == 1 for g in I.gens):
                return md
        return ring.mdeg

    def standard(self, d: int) -> list[int]:
        s = self._std.get(d)
        if s is None:
            g = self.ring.guard
            s = [m for m in _monomials_of_degree(self.ring.nvars, d)
                 if not any(((m | g) - L) & g == g for L in self.leads)]
            self._std[d] = s
        return s

    def _normal(self, m: int) -> dict[int, int]:
        r = self._nf.get(m)
        if r is None:
            r = self.gb.normal_form(Polynomial(self.ring, {m: 1})).terms
            self._nf[m] = r
        return r

    def _basis(self, i: int, j: int):
        """Basis of ``(K_i tensor S/I)_j`` grouped by multidegree."""
        key = (i, j)
        hit = self._bases.get(key)
        if hit is not None:
            return hit
        n = self.ring.nvars
        groups: dict[object, list[tuple[tuple[int, ...], int]]] = {}
        if 0 <= i <= n and j - i >= 0:
            std = self.standard(j - i)
            if std:
                md = self.mdeg
                std_deg = [(m, md(m)) for m in std]
                for T in combinations(range(n), i):
                    td = md(sum(1 << (WIDTH * k) for k in T))
                    for m, d in std_deg:
                        groups.setdefault(td + d, []).append((T, m))
        self._bases[key] = groups
        return groups

    def _rank(self, i: int, j: int) -> dict[object, int]:
        """Blockwise ranks of the Koszul differential ``d_i`` in degree ``j``."""
        key = (i, j)
        hit = self._ranks.get(key)
        if hit is not None:
            return hit
        p = self.ring.p
        src = self._basis(i, j)
        out: dict[object, int] = {}
        if src and i >= 1:
            tgt = self._basis(i - 1, j)
            for D, block in src.items():
                low = tgt.get(D)
                if not low:
                    continue
                index = {b: k for k, b in enumerate(low)}
                rows = []
                for T, m in block:
                    row: dict[int, int] = {}
                    for pos, k in enumerate(T):
                        sign = -1 if pos % 2 else 1
                        rest = T[:pos] + T[pos + 1:]
                        for mm, c in self._normal(m + (1 << (WIDTH * k))).items():
                            col = index[(rest, mm)]
                            row[col] = (row.get(col, 0) + sign * c) % p
                    rows.append(row)
                out[D] = rank_mod_p(rows, p)
        self._ranks[key] = out
        return out

    def tor(self, i: int, j: int) -> int:
        Ci = self._basis(i, j)
        if not Ci:
            return 0
        r_out = self._rank(i, j)
        r_in = self._rank(i + 1, j)
        return sum(len(block) - r_out.get(D, 0) - r_in.get(D, 0) for D, block in Ci.items())


def koszul_tor_oracle(I: Ideal, i: int, j: int) -> int:
    """``beta_{i,j}(S/I)`` computed from Koszul homology, independent of the
    Schreyer pipeline."""
    return KoszulOracle(I).tor(i, j)


# --------------------------------------------------------------------------
# Hilbert series numerators of monomial ideals
# --------------------------------------------------------------------------

def _poly_sub(a: dict[int, int], b: dict[int, int], shift: int = 0, sign: int = 1) -> dict[int, int]:
    out = dict(a)
    for d, c in b.items():
        out[d + shift] = out.get(d + shift, 0) + sign * c
    return {d: c for d, c in out.items() if c}


def _minimalize(ring: Ring, gens: list[int]) -> list[int]:
    gens = sorted(set(gens), key=lambda m: (ring.mdeg(m), m))
    out: list[int] = []
    for m in gens:
        if not any(ring.divides(o, m) for o in out):
            out.append(m)
    return out


def monomial_hilbert_numerator(ring: Ring, gens: Sequence[int]) -> dict[int, int]:
    """Numerator ``K(t)`` with ``HS(S/M) = K(t) / (1 - t)^N`` for a monomial ideal.

    Inclusion-exclusion organised as a pivot recursion on variables:
    ``K(M) = K(M + (x)) + t K(M : x)``.
    """
    memo: dict[tuple[int, ...], dict[int, int]] = {}

    def rec(G: list[int]) -> dict[int, int]:
        if not G:
            return {0: 1}
        if 0 in G:
            return {}
        key = tuple(G)
        hit = memo.get(key)
        if hit is not None:
            return hit
        # coprime generators: product of (1 - t^d)
        used = 0
        coprime = True
        for m in G:
            if m & used:
                coprime = False
                break
            used |= _spread(m)
        if coprime:
            res = {0: 1}
            for m in G:
                res = _poly_sub(res, res, ring.mdeg(m), -1)
            memo[key] = res
            return res
        counts = [0] * ring.nvars
        for m in G:
            for k, e in enumerate(ring.unpack(m)):
                if e:
                    counts[k] += 1
        x = max(range(ring.nvars), key=lambda k: counts[k])
        xm = 1 << (WIDTH * x)
        plus = _minimalize(ring, [m for m in G if not ring.divides(xm, m)] + [xm])
        colon = _minimalize(ring, [m - xm if ring.divides(xm, m) else m for m in G])
        res = _poly_sub(rec(plus), rec(colon), 1, 1)
        memo[key] = res
        return res

    return rec(_minimalize(ring, list(gens)))


def _spread(m: int) -> int:
    """Mask covering every byte in which ``m`` is nonzero."""
    out = 0
    k = 0
    while m:
        if m & 0xFF:
            out |= 0xFF << (WIDTH * k)
        m >>= WIDTH
        k += 1
    return out


def hilbert_numerator(I: Ideal) -> dict[int, int]:
    """Numerator of the Hilbert series of ``S/I`` computed from ``in(I)``."""
    gb = I.groebner(MonomialOrder.degrevlex(I.ring.nvars))
    return monomial_hilbert_numerator(I.ring, gb.lead_monomials())


def hilbert_function(I: Ideal, d: int) -> int:
    """``dim_K (S/I)_d`` from the Hilbert series numerator."""
    K = hilbert_numerator(I)
    n = I.ring.nvars
    total = 0
    for e, c in K.items():
        k = d - e
        if k >= 0:
            total += c * math.comb(k + n - 1, n - 1) if n else (c if k == 0 else 0)
    return total
