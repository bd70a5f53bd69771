"""Ideals of a polynomial ring and the operations on them: sums, products,
powers, colon by an element, intersection, elimination and initial ideals.

Intersection and elimination share one mechanism: a Groebner basis in an
elimination order, with a tag variable ``t`` appended for intersections
(``I cap J = (t I + (1 - t) J) cap S``).
"""

from __future__ import annotations

import threading
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, _make_elem, _reduce, buchberger
from .poly import WIDTH, MonomialOrder, Polynomial, Ring, RingMismatchError


class Ideal:
    """Finitely generated ideal with a per-order Groebner basis cache."""

    def __init__(self, ring: Ring, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        seen = set()
        out = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError(f"{g.ring} vs {ring}")
            if not g.terms:
                continue
            h = frozenset(g.terms.items())
            if h in seen:
                continue
            seen.add(h)
            out.append(g)
        self.gens: tuple[Polynomial, ...] = tuple(out)
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, [ring.one()])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def __len__(self):
        return len(self.gens)

    # Groebner bases --------------------------------------------------------
    def groebner(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or MonomialOrder.degrevlex(self.ring.nvars)
        gb = self._gb.get(order)
        if gb is None:
            with self._lock:
                gb = self._gb.get(order)
                if gb is None:
                    gb = buchberger(self.gens, order, self.ring)
                    self._gb[order] = gb
        return gb

    def contains(self, f: Polynomial) -> bool:
        return self.groebner().contains(f)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.groebner().is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous()[0] for g in self.gens)

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.gens)

    def issubset(self, other: "Ideal") -> bool:
        _check_rings(self, other)
        gb = other.groebner()
        return all(gb.contains(g) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        return ideal_equal(self, other)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, s: int) -> "Ideal":
        return power(self, s)

    def with_prime(self, p: int) -> "Ideal":
        ring = self.ring.with_prime(p)
        return Ideal(ring, [g.change_ring(ring) for g in self.gens])


def _check_rings(*ideals: Ideal):
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != ring:
            raise RingMismatchError(f"{I.ring} vs {ring}")


def ideal_sum(*ideals: Ideal) -> Ideal:
    _check_rings(*ideals)
    return Ideal(ideals[0].ring, [g for I in ideals for g in I.gens])


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_rings(I, J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def power(I: Ideal, s: int) -> Ideal:
    """All ``s``-fold products of generators, deduplicated.

    ``s = 0`` gives the unit ideal.
    """
    if s < 0:
        raise ValueError("power must be non-negative")
    if s == 0:
        return Ideal.unit(I.ring)
    if s == 1:
        return Ideal(I.ring, I.gens)
    cache: dict[tuple, Polynomial] = {}
    out = []
    for combo in combinations_with_replacement(range(len(I.gens)), s):
        prefix = combo[:-1]
        base = cache.get(prefix)
        if base is None:
            base = I.ring.one()
            for k in prefix:
                base = base * I.gens[k]
            cache[prefix] = base
        out.append(base * I.gens[combo[-1]])
    return Ideal(I.ring, out)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Equality by mutual Groebner-basis membership of generators."""
    return I.issubset(J) and J.issubset(I)


def eliminate(I: Ideal, variables: Iterable[int]) -> Ideal:
    """``I cap K[remaining variables]``, via an elimination-order basis."""
    variables = sorted(set(variables))
    ring = I.ring
    if not variables or I.is_zero():
        return Ideal(ring, I.gens)
    order = MonomialOrder.elimination(ring.nvars, variables)
    gb = I.groebner(order)
    mask = ring.support_mask(variables)
    keep = [f for f in gb.elements if not any(m & mask for m in f.terms)]
    return Ideal(ring, keep)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I cap J`` through a tag variable appended after the ring's variables."""
    _check_rings(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    big = ring.extend(["_t"])
    t = big.var(ring.nvars)
    one_minus_t = big.one() - t
    gens = [t * f.change_ring(big) for f in I.gens]
    gens += [one_minus_t * g.change_ring(big) for g in J.gens]
    order = MonomialOrder.elimination(big.nvars, [ring.nvars])
    gb = buchberger(gens, order, big)
    tmask = 0xFF << (WIDTH * ring.nvars)
    keep = [f.change_ring(ring) for f in gb.elements if not any(m & tmask for m in f.terms)]
    return Ideal(ring, keep)


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient ``g / f``; raises if ``f`` does not divide ``g``."""
    ring = g.ring
    order = MonomialOrder.degrevlex(ring.nvars)
    key = order.key
    fe = _make_elem(f.terms, key, ring)
    _, lc = f.lead(order)
    inv = pow(lc, -1, ring.p)
    p = ring.p
    cur = dict(g.terms)
    quotient: dict[int, int] = {}
    while cur:
        m = max(cur, key=key)
        c = cur.pop(m)
        if not ring.divides(fe.lm, m):
            raise ValueError("divisor does not divide dividend")
        q = m - fe.lm
        quotient[q] = c * inv % p
        for tm, _, tc in fe.tail:
            nm = tm + q
            v = (cur.get(nm, 0) - c * tc) % p
            if v:
                cur[nm] = v
            else:
                cur.pop(nm, None)
    return Polynomial(ring, quotient)


def colon_element(I: Ideal, f: Polynomial) -> Ideal:
    """``(I : f) = {g : g f in I}``, computed as ``(I cap (f)) / f``."""
    ring = I.ring
    if not f.terms:
        raise ValueError("colon by the zero polynomial")
    if I.is_zero():
        return Ideal(ring)
    if I.contains(f):
        return Ideal.unit(ring)
    inter = intersect(I, Ideal(ring, [f]))
    return Ideal(ring, [divide_exact(g, f) for g in inter.gens])


def initial_ideal(I: Ideal, order: MonomialOrder | None = None) -> Ideal:
    """Monomial ideal of leading terms of the reduced Groebner basis."""
    ring = I.ring
    order = order or MonomialOrder.degrevlex(ring.nvars)
    gb = I.groebner(order)
    return Ideal(ring, [Polynomial(ring, {lm: 1}) for lm in gb.lead_monomials()])


def contract_to_variables(I: Ideal, keep: Iterable[int]) -> Ideal:
    """``I cap K[keep]`` -- elimination of the complementary variables."""
    keep = set(keep)
    return eliminate(I, [k for k in range(I.ring.nvars) if k not in keep])


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """A minimal homogeneous generating set, chosen greedily from ``I.gens``.

    Degree by degree, a generator is kept when its normal form modulo the
    ideal of lower-degree kept generators is independent of those already
    kept in its degree.
    """
    ring = I.ring
    if not I.is_homogeneous():
        raise ValueError("minimal generators need a homogeneous ideal")
    p = ring.p
    by_deg: dict[int, list[Polynomial]] = {}
    for g in I.gens:
        by_deg.setdefault(g.is_homogeneous()[1], []).append(g)
    kept: list[Polynomial] = []
    order = MonomialOrder.degrevlex(ring.nvars)
    for d in sorted(by_deg):
        gb = buchberger(kept, order, ring) if kept else None
        pivots: dict[int, dict[int, int]] = {}
        for g in by_deg[d]:
            v = dict(g.terms) if gb is None else dict(gb.normal_form(g).terms)
            # reduce against pivots chosen so far in this degree
            while v:
                piv = max(v, key=order.key)
                row = pivots.get(piv)
                if row is None:
                    inv = pow(v[piv], -1, p)
                    pivots[piv] = {m: c * inv % p for m, c in v.items()}
                    kept.append(g)
                    break
                c = v[piv]
                for m, rc in row.items():
                    nv = (v.get(m, 0) - c * rc) % p
                    if nv:
                        v[m] = nv
                    else:
                        v.pop(m, None)
    return kept


def ideal_of(ring: Ring, polys: Sequence[Polynomial]) -> Ideal:
    return Ideal(ring, polys)
