"""Buchberger's algorithm with the Gebauer-Moeller pair update.

Internally a basis element is a monic polynomial stored as its packed leading
monomial, the additive order key of that monomial, and a tail list of
``(monomial, key, coefficient)`` triples.  Reduction multiplies tails by a
monomial ``q`` by adding ``q`` to the packed monomials and ``key(q)`` to the
keys, so no order key is recomputed inside the inner loop.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .poly import MonomialOrder, Polynomial, Ring, RingMismatchError


class _Elem:
    __slots__ = ("lm", "lk", "tail", "deg")

    def __init__(self, lm, lk, tail, deg):
        self.lm = lm
        self.lk = lk
        self.tail = tail
        self.deg = deg


def _make_elem(terms: dict[int, int], key, ring: Ring) -> _Elem:
    p = ring.p
    keyed = sorted(((key(m), m, c) for m, c in terms.items()), reverse=True)
    lk, lm, lc = keyed[0]
    inv = pow(lc, -1, p)
    tail = [(m, k, c * inv % p) for k, m, c in keyed[1:]]
    return _Elem(lm, lk, tail, ring.mdeg(lm))


def _reduce(terms: dict[int, int], basis: Sequence[_Elem], key, ring: Ring,
            full: bool = True) -> dict[int, int]:
    """Remainder of ``terms`` modulo ``basis`` (full reduction by default)."""
    if not terms or not basis:
        return dict(terms)
    p = ring.p
    g = ring.guard
    cur: dict[int, int] = {}
    monos: dict[int, int] = {}
    heap: list[int] = []
    for m, c in terms.items():
        k = key(m)
        cur[k] = c
        monos[k] = m
        heap.append(-k)
    heapq.heapify(heap)
    rem: dict[int, int] = {}
    leads = [(b.lm, b) for b in basis]
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        c = cur.pop(k, 0)
        if not c:
            continue
        m = monos[k]
        mg = m | g
        for lm, b in leads:
            if (mg - lm) & g == g:
                break
        else:
            rem[m] = c
            if not full:
                for kk in heap:
                    kk = -kk
                    cc = cur.pop(kk, 0)
                    if cc:
                        rem[monos[kk]] = cc
                break
            continue
        q = m - lm
        kq = k - b.lk
        for tm, tk, tc in b.tail:
            nk = tk + kq
            old = cur.get(nk)
            if old is None:
                cur[nk] = (-c * tc) % p
                monos[nk] = tm + q
                push(heap, -nk)
            else:
                v = (old - c * tc) % p
                if v:
                    cur[nk] = v
                else:
                    del cur[nk]
    return rem


def _spoly(a: _Elem, b: _Elem, ring: Ring) -> dict[int, int]:
    lcm = ring.lcm(a.lm, b.lm)
    qa = lcm - a.lm
    qb = lcm - b.lm
    p = ring.p
    out: dict[int, int] = {}
    for m, _, c in a.tail:
        out[m + qa] = c
    for m, _, c in b.tail:
        mm = m + qb
        v = (out.get(mm, 0) - c) % p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic, interreduced, sorted by leading term."""

    ring: Ring
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    _elems: tuple = field(repr=False, compare=False, default=())

    reduced = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def lead_monomials(self) -> list[int]:
        return [e.lm for e in self._elems]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        return Polynomial(self.ring, _reduce(f.terms, self._elems, self.order.key, self.ring))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f).terms

    def is_unit(self) -> bool:
        return any(e.lm == 0 for e in self._elems)


def _from_elems(ring: Ring, order: MonomialOrder, elems: list[_Elem]) -> GroebnerBasis:
    elems = sorted(elems, key=lambda e: e.lk)
    polys = []
    for e in elems:
        terms = {e.lm: 1}
        for m, _, c in e.tail:
            terms[m] = c
        polys.append(Polynomial(ring, terms))
    return GroebnerBasis(ring, order, tuple(polys), tuple(elems))


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder,
               ring: Ring | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy: smallest lcm degree first,
    then creation order.  Coprime leading terms and the chain criterion are
    applied through the Gebauer-Moeller update.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    if order.nvars != ring.nvars:
        raise RingMismatchError("order and ring disagree on the number of variables")
    for f in gens:
        if f.ring != ring:
            raise RingMismatchError(f"{f.ring} vs {ring}")
    key = order.key
    divides = ring.divides
    lcm_of = ring.lcm
    mdeg = ring.mdeg

    basis: list[_Elem] = []
    active: list[bool] = []
    pairs: list[tuple] = []  # (lcm degree, serial, i, j, lcm)
    serial = 0

    def update(h: _Elem):
        nonlocal pairs, serial
        hi = len(basis)
        hl = h.lm
        cands = []
        for i, g in enumerate(basis):
            if active[i]:
                cands.append((i, lcm_of(g.lm, hl), g.lm + hl == lcm_of(g.lm, hl)))
        # chain criterion among new pairs (Gebauer-Moeller)
        kept = []
        for idx, (i, L, coprime) in enumerate(cands):
            if coprime:
                kept.append((i, L, coprime))
                continue
            dominated = False
            for jdx, (j, L2, _) in enumerate(cands):
                if jdx == idx:
                    continue
                if L2 != L and divides(L2, L):
                    dominated = True
                    break
                if L2 == L and jdx < idx:
                    dominated = True
                    break
            if not dominated:
                kept.append((i, L, coprime))
        # a coprime pair sharing its lcm with another new pair kills that lcm class
        coprime_lcms = {L for _, L, cp in kept if cp}
        fresh = [(i, L) for i, L, cp in kept if not cp and L not in coprime_lcms]
        survivors = []
        for pr in pairs:
            _, _, i, j, L = pr
            if divides(hl, L) and lcm_of(basis[i].lm, hl) != L and lcm_of(basis[j].lm, hl) != L:
                continue
            survivors.append(pr)
        for i, L in fresh:
            survivors.append((mdeg(L), serial, i, hi, L))
            serial += 1
        pairs = survivors
        for i, g in enumerate(basis):
            if active[i] and divides(hl, g.lm):
                active[i] = False
        basis.append(h)
        active.append(True)

    p = ring.p
    for f in gens:
        terms = {m: c % p for m, c in f.terms.items() if c % p}
        if not terms:
            continue
        r = _reduce(terms, [b for b, a in zip(basis, active) if a], key, ring)
        if r:
            update(_make_elem(r, key, ring))
            if basis[-1].lm == 0:
                break

    while pairs and not any(b.lm == 0 and a for b, a in zip(basis, active)):
        best = min(range(len(pairs)), key=lambda t: pairs[t][:2])
        _, _, i, j, _ = pairs.pop(best)
        s = _spoly(basis[i], basis[j], ring)
        if not s:
            continue
        r = _reduce(s, [b for b, a in zip(basis, active) if a], key, ring)
        if r:
            update(_make_elem(r, key, ring))

    # minimal basis, then interreduce tails
    live = [b for b, a in zip(basis, active) if a]
    if any(b.lm == 0 for b in live):
        return _from_elems(ring, order, [_Elem(0, key(0), [], 0)])
    live.sort(key=lambda e: e.lk)
    minimal: list[_Elem] = []
    for e in live:
        if not any(divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    reduced = []
    for idx, e in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = _reduce({m: c for m, _, c in e.tail}, others, key, ring)
        terms = dict(tail)
        terms[e.lm] = 1
        reduced.append(_make_elem(terms, key, ring))
    return _from_elems(ring, order, reduced)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ring = f.ring
    a = _make_elem(f.terms, order.key, ring)
    b = _make_elem(g.terms, order.key, ring)
    return Polynomial(ring, _spoly(a, b, ring))


def is_groebner_basis(polys: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Check every S-polynomial reduces to zero (independent of ``buchberger``)."""
    polys = [f for f in polys if f.terms]
    if not polys:
        return True
    ring = polys[0].ring
    elems = [_make_elem(f.terms, order.key, ring) for f in polys]
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            s = _spoly(elems[i], elems[j], ring)
            if s and _reduce(s, elems, order.key, ring):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    """No leading term divides any term of another element; all monic."""
    ring = gb.ring
    leads = [f.lead(gb.order) for f in gb.elements]
    if any(c != 1 for _, c in leads):
        return False
    for i, f in enumerate(gb.elements):
        for j, (lm, _) in enumerate(leads):
            if i != j and any(ring.divides(lm, m) for m in f.terms):
                return False
    return True
