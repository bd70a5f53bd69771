import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from beilab.bei import build_bei, edge_binomial
from beilab.graph import complete, cycle, path
from beilab.groebner import buchberger, is_groebner_basis, is_reduced, normal_form, s_polynomial
from beilab.ideal import Ideal
from beilab.poly import DEFAULT_PRIME, MonomialOrder, Ring, bei_ring

P = DEFAULT_PRIME


def to_sympy(f, syms):
    expr = 0
    for m, c in f.terms.items():
        c = c if c <= P // 2 else c - P
        term = sympy.Integer(c)
        for k, e in enumerate(f.ring.unpack(m)):
            term *= syms[k] ** e
        expr += term
    return expr


def sympy_reduced_gb(polys, order_name):
    ring = polys[0].ring
    syms = sympy.symbols(" ".join(ring.names))
    syms = syms if isinstance(syms, tuple) else (syms,)
    G = sympy.groebner([to_sympy(f, syms) for f in polys], *syms, order=order_name, modulus=P)
    out = set()
    for g in G.exprs:
        poly = sympy.Poly(g, *syms, modulus=P)
        lc = int(poly.LC(order=order_name)) % P
        inv = pow(lc, -1, P)
        out.add(frozenset((mon, int(c) * inv % P) for mon, c in poly.terms()))
    return out


def ours_as_set(gb):
    return {frozenset((gb.ring.unpack(m), c) for m, c in f.terms.items()) for f in gb.elements}


# --- normal form ---------------------------------------------------------

def test_member_reduces_to_zero():
    R = bei_ring(3)
    J = build_bei(path(3)).ideal
    gb = J.groebner()
    f = R.parse("x1*y2 - x2*y1") * R.parse("x3 + y1") + R.parse("x2*y3 - x3*y2") * R.var(0)
    assert normal_form(f, gb).is_zero()


def test_multiple_of_single_generator():
    R = bei_ring(2)
    g = R.parse("x1*y2 - x2*y1")
    gb = buchberger([g], MonomialOrder.lex(4))
    assert normal_form(R.parse("x1*y2") * g, gb).is_zero()


def test_x1y3_is_already_reduced_mod_path():
    R = bei_ring(3)
    gb = build_bei(path(3)).ideal.groebner(MonomialOrder.lex(6))
    f = R.parse("x1*y3")
    assert normal_form(f, gb) == f


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(1, P - 1)), min_size=1, max_size=6))
def test_normal_form_is_canonical(multipliers):
    """``f - nf(f)`` lies in the ideal and ``nf`` has no reducible term."""
    R = bei_ring(3)
    J = build_bei(cycle(3)).ideal
    gb = J.groebner()
    gens = J.gens
    f = R.var(0) * R.var(4)
    for a, b, c in multipliers:
        f = f + gens[(a + b) % len(gens)] * R.var(a) * R.var(b) * c + R.var(a) * R.var(b) * R.var(5) * c
    r = normal_form(f, gb)
    assert gb.contains(f - r)
    leads = gb.lead_monomials()
    assert not any(R.divides(l, m) for l in leads for m in r.terms)
    assert normal_form(r, gb) == r


# --- buchberger ------------------------------------------------------------

def test_linear_gaussian_elimination():
    R = Ring(3, names=["x", "y", "z"])
    gb = buchberger([R.parse("x - y"), R.parse("y - z")], MonomialOrder.lex(3))
    assert set(map(str, gb.elements)) == {str(R.parse("x - z")), str(R.parse("y - z"))}


def test_path_generators_are_their_own_lex_basis():
    B = build_bei(path(3))
    gb = B.ideal.groebner(MonomialOrder.lex(6))
    assert ours_as_set(gb) == {frozenset((B.ring.unpack(m), c) for m, c in f.monic(gb.order).terms.items())
                               for f in B.gens}


def test_nonhomogeneous_example_against_sympy():
    R = Ring(2, names=["x", "y"])
    F = [R.parse("x^2*y - 1"), R.parse("x*y^2 - x")]
    gb = buchberger(F, MonomialOrder.lex(2))
    assert ours_as_set(gb) == sympy_reduced_gb(F, "lex")
    assert is_groebner_basis(list(gb.elements), gb.order)
    assert is_reduced(gb)
    assert gb.contains(R.parse("y^2 - 1"))


@pytest.mark.parametrize("G", [path(4), cycle(4), complete(4), cycle(5)])
@pytest.mark.parametrize("order_name", ["lex", "grevlex"])
def test_binomial_edge_bases_against_sympy(G, order_name):
    B = build_bei(G)
    n = B.ring.nvars
    order = MonomialOrder.lex(n) if order_name == "lex" else MonomialOrder.degrevlex(n)
    gb = B.ideal.groebner(order)
    assert ours_as_set(gb) == sympy_reduced_gb(list(B.gens), order_name)


def _random_quadrics(rng, ring, k):
    out = []
    for _ in range(k):
        f = ring.zero()
        for _ in range(3):
            a, b = rng.randrange(ring.nvars), rng.randrange(ring.nvars)
            f = f + ring.var(a) * ring.var(b) * rng.randrange(1, P)
        if f:
            out.append(f)
    return out


@pytest.mark.parametrize("seed", range(6))
def test_gb_invariants_random(seed):
    rng = random.Random(seed)
    R = Ring(5)
    F = _random_quadrics(rng, R, 4)
    for order in (MonomialOrder.degrevlex(5), MonomialOrder.lex(5)):
        gb = buchberger(F, order)
        assert all(gb.contains(f) for f in F)
        assert is_groebner_basis(list(gb.elements), order)
        assert is_reduced(gb)
        for i, a in enumerate(gb.elements):
            for b in gb.elements[i + 1:]:
                assert gb.normal_form(s_polynomial(a, b, order)).is_zero()


def test_deterministic_output():
    rng = random.Random(7)
    R = Ring(5)
    F = _random_quadrics(rng, R, 4)
    a = buchberger(F, MonomialOrder.degrevlex(5))
    b = buchberger(list(F), MonomialOrder.degrevlex(5))
    assert [f.terms for f in a.elements] == [f.terms for f in b.elements]


def test_empty_input_gives_zero_ideal():
    R = Ring(2)
    gb = buchberger([], MonomialOrder.lex(2), ring=R)
    assert len(gb) == 0
    assert not gb.contains(R.var(0))


@pytest.mark.parametrize("seed", range(100))
def test_membership_independent_of_order(seed):
    rng = random.Random(1000 + seed)
    R = bei_ring(4)
    J = build_bei(cycle(4)).ideal
    lex = J.groebner(MonomialOrder.lex(8))
    drl = J.groebner(MonomialOrder.degrevlex(8))
    f = R.zero()
    for _ in range(3):
        if rng.random() < 0.5:
            f = f + J.gens[rng.randrange(4)] * rng.randrange(1, P)
        else:
            i, j = rng.sample(range(1, 5), 2)
            f = f + edge_binomial(R, 4, i, j) * rng.randrange(1, P)
    assert lex.contains(f) == drl.contains(f)


# --- membership -------------------------------------------------------------

def test_membership_examples():
    R = bei_ring(3)
    J = build_bei(path(3)).ideal
    assert all(J.contains(f) for f in J.gens)
    assert not J.contains(R.var(0))
    assert not J.contains(edge_binomial(R, 3, 1, 3))


def test_f13_in_complete_graph():
    R = bei_ring(3)
    assert Ideal(R, build_bei(complete(3)).gens).contains(edge_binomial(R, 3, 1, 3))
