import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beilab.bei import build_bei
from beilab.graph import complete, connected_graphs, cycle, path, star
from beilab.ideal import Ideal, initial_ideal, minimal_generators, power
from beilab.poly import MonomialOrder, Ring, bei_ring
from beilab.resolution import (
    BettiTable,
    BudgetExceeded,
    KoszulOracle,
    NonHomogeneousError,
    hilbert_function,
    hilbert_numerator,
    koszul_tor_oracle,
    minimal_resolution,
    monomial_hilbert_numerator,
    regularity,
    schreyer_resolution,
    syzygies,
    verify_complex,
)


def J(G):
    return build_bei(G).ideal


def oracle_table(I):
    """Every Tor dimension inside the box allowed by the Hilbert series."""
    K = KoszulOracle(I)
    n = I.ring.nvars
    top = max(hilbert_numerator(I)) if hilbert_numerator(I) else 0
    out = {}
    for i in range(n + 1):
        for j in range(i, top + 1):
            v = K.tor(i, j)
            if v:
                out[(i, j)] = v
    return out


# --- syzygies -----------------------------------------------------------------

def test_koszul_syzygy_of_regular_pair():
    R = Ring(2, names=["x", "y"])
    x, y = R.gens()
    gb = Ideal(R, [x * x, y * y * y]).groebner()
    syz = syzygies(gb)
    assert len(syz) == 1
    (v,) = syz
    assert v.evaluate(list(gb.elements)).is_zero()
    assert v.is_homogeneous() and v.degree() == 5


def test_syzygies_of_three_variables():
    R = Ring(3)
    gb = Ideal(R, R.gens()).groebner()
    syz = syzygies(gb)
    assert len(syz) == 3
    assert all(v.evaluate(list(gb.elements)).is_zero() for v in syz)
    assert {v.degree() for v in syz} == {2}


def test_syzygies_of_triangle():
    gb = J(complete(3)).groebner()
    syz = syzygies(gb)
    assert all(v.evaluate(list(gb.elements)).is_zero() for v in syz)
    assert minimal_resolution(J(complete(3)))[(2, 3)] == 2


@pytest.mark.parametrize("G", [cycle(4), complete(4), star(3)])
def test_schreyer_complex_squares_to_zero(G):
    res = schreyer_resolution(power(J(G), 2), keep_vectors=True)
    assert verify_complex(res)


# --- Betti tables -----------------------------------------------------------------

def test_principal_ideal():
    R = bei_ring(2)
    f = build_bei(path(2)).gens[0]
    assert minimal_resolution(Ideal(R, [f])).nonzero() == {(0, 0): 1, (1, 2): 1}


def test_path_three_complete_intersection():
    assert minimal_resolution(J(path(3))).nonzero() == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_triangle_linear_resolution():
    t = minimal_resolution(J(complete(3)))
    assert t.nonzero() == {(0, 0): 1, (1, 2): 3, (2, 3): 2}
    assert t.nonzero() == oracle_table(J(complete(3)))


def test_table_invariants():
    t = minimal_resolution(power(J(cycle(4)), 2))
    assert t[(0, 0)] == 1
    assert all(j >= i for (i, j) in t.nonzero())
    assert t.projective_dimension() <= 8
    text = str(t)
    assert text.splitlines()[1].startswith("total:")


def test_nonhomogeneous_rejected():
    R = Ring(2)
    x, y = R.gens()
    with pytest.raises(NonHomogeneousError):
        minimal_resolution(Ideal(R, [x * x - y]))


def test_generator_order_does_not_matter():
    I = power(J(cycle(4)), 2)
    rng = random.Random(3)
    gens = list(I.gens)
    rng.shuffle(gens)
    assert minimal_resolution(Ideal(I.ring, gens)) == minimal_resolution(I)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        minimal_resolution(power(J(cycle(5)), 2), max_frame=5)


@pytest.mark.parametrize("bound", [4, 5, 6, 7])
def test_degree_bound_keeps_low_degrees_exact(bound):
    I = power(J(cycle(5)), 2)
    full = minimal_resolution(I)
    cut = minimal_resolution(I, deg_bound=bound)
    assert not cut.complete
    assert {k: v for k, v in full.nonzero().items() if k[1] <= bound} == cut.nonzero()
    with pytest.raises(BudgetExceeded):
        regularity(I, deg_bound=bound)


def test_hom_bound_truncates_columns():
    I = J(cycle(5))
    t = minimal_resolution(I, hom_bound=2)
    full = minimal_resolution(I)
    assert t.nonzero() == {k: v for k, v in full.nonzero().items() if k[0] <= 2}


# --- regularity --------------------------------------------------------------------

@pytest.mark.parametrize("n", [3, 4, 5])
def test_path_regularity(n):
    assert regularity(J(path(n))) == n - 1


def test_cycle_and_star_regularity():
    assert regularity(J(cycle(5))) == 3
    assert regularity(J(star(3))) == 2


def test_unit_ideal_regularity():
    R = Ring(2)
    assert regularity(Ideal.unit(R)) == -math.inf
    assert BettiTable({}).regularity() == -math.inf


# --- oracle ---------------------------------------------------------------------------

def test_oracle_examples():
    assert koszul_tor_oracle(J(path(3)), 2, 4) == 1
    assert koszul_tor_oracle(J(complete(3)), 1, 2) == 3


@pytest.mark.parametrize("G", [G for n in (2, 3) for G in connected_graphs(n)] + [path(4), star(3)], ids=str)
@pytest.mark.parametrize("s", [1, 2])
def test_oracle_agrees_small(G, s):
    I = power(J(G), s)
    assert minimal_resolution(I).nonzero() == oracle_table(I)


def test_oracle_without_multigrading():
    R = Ring(4)
    a, b, c, d = R.gens()
    I = Ideal(R, [a * b - c * d, a * c, b * d * d - c ** 3])
    assert minimal_resolution(I).nonzero() == oracle_table(I)


monomial = st.lists(st.integers(0, 2), min_size=4, max_size=4).filter(lambda e: sum(e) > 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(monomial, min_size=1, max_size=5))
def test_oracle_agrees_on_random_monomial_ideals(exps):
    R = Ring(4)
    I = Ideal(R, [R.monomial(e) for e in exps])
    assert minimal_resolution(I).nonzero() == oracle_table(I)


# --- Hilbert series --------------------------------------------------------------------

def _count_standard(I, d):
    return len(KoszulOracle(I).standard(d))


@settings(max_examples=60, deadline=None)
@given(st.lists(monomial, min_size=1, max_size=7))
def test_hilbert_numerator_matches_brute_force(exps):
    R = Ring(4)
    I = Ideal(R, [R.monomial(e) for e in exps])
    for d in range(7):
        assert hilbert_function(I, d) == _count_standard(I, d)


@pytest.mark.parametrize("G", [path(4), cycle(4), complete(4), star(3), cycle(5)], ids=str)
@pytest.mark.parametrize("s", [1, 2])
def test_alternating_sums_match_hilbert_numerator(G, s):
    I = power(J(G), s)
    assert minimal_resolution(I).alternating_sums() == hilbert_numerator(I)


def test_coprime_base_case():
    R = Ring(3)
    gens = [R.pack((2, 0, 0)), R.pack((0, 1, 1))]
    assert monomial_hilbert_numerator(R, gens) == {0: 1, 2: -2, 4: 1}


# --- further invariants --------------------------------------------------------------------

@pytest.mark.parametrize("G", [cycle(4), complete(4), star(3), path(4)], ids=str)
@pytest.mark.parametrize("s", [1, 2])
def test_first_column_counts_minimal_generators(G, s):
    I = power(J(G), s)
    t = minimal_resolution(I)
    gens = minimal_generators(I)
    counts = {}
    for g in gens:
        d = g.is_homogeneous()[1]
        counts[d] = counts.get(d, 0) + 1
    assert {j: v for (i, j), v in t.nonzero().items() if i == 1} == counts


@pytest.mark.parametrize("G", [cycle(4), complete(4), star(3), cycle(5)], ids=str)
@pytest.mark.parametrize("order", ["lex", "degrevlex"])
def test_initial_ideal_regularity_is_upper_bound(G, order):
    I = power(J(G), 2) if G.n <= 4 else J(G)
    n = I.ring.nvars
    o = MonomialOrder.lex(n) if order == "lex" else MonomialOrder.degrevlex(n)
    assert regularity(initial_ideal(I, o)) >= regularity(I)


def test_dual_prime_same_table():
    G = cycle(5)
    a = minimal_resolution(build_bei(G, 32003).ideal)
    b = minimal_resolution(build_bei(G, 101).ideal)
    assert a == b
