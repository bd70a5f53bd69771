import pytest

from beilab.bei import build_bei, edge_binomial, fm_colon_holds, vertex_variables
from beilab.graph import Graph, complete, connected_graphs, cycle, h_type, induced_subsets, path
from beilab.ideal import (
    Ideal,
    colon_element,
    contract_to_variables,
    eliminate,
    ideal_equal,
    ideal_product,
    ideal_sum,
    initial_ideal,
    intersect,
    minimal_generators,
    power,
)
from beilab.poly import MonomialOrder, Ring, RingMismatchError, bei_ring
from beilab.resolution import hilbert_function


def J(G, ring=None):
    return build_bei(G, ring=ring).ideal


def xyz():
    R = Ring(3, names=["x", "y", "z"])
    return R, R.gens()


# --- power ---------------------------------------------------------------

def test_power_one_is_identity():
    assert ideal_equal(power(J(path(3)), 1), J(path(3)))


def test_power_of_principal():
    R = bei_ring(2)
    f = edge_binomial(R, 2, 1, 2)
    cube = power(Ideal(R, [f]), 3)
    assert len(cube.gens) == 1 and cube.gens[0] == f ** 3


def test_square_of_cycle_generator_count():
    I2 = power(J(cycle(4)), 2)
    assert len(I2.gens) <= 10
    assert all(g.is_homogeneous() == (True, 4) for g in I2.gens)
    assert len(minimal_generators(I2)) == 10


def test_power_zero_is_unit():
    assert power(J(path(3)), 0).is_unit()


# --- colon ---------------------------------------------------------------

def test_monomial_colon():
    R, (x, y, z) = xyz()
    assert ideal_equal(colon_element(Ideal(R, [x * y, y * z]), y), Ideal(R, [x, z]))


def test_self_colon_is_unit():
    R = bei_ring(2)
    f = edge_binomial(R, 2, 1, 2)
    assert colon_element(Ideal(R, [f]), f).is_unit()


@pytest.mark.parametrize("G,e", [(cycle(4), (1, 4)), (cycle(5), (1, 5)), (path(4), (2, 3)),
                                 (complete(4), (1, 2))])
def test_colon_generators_multiply_into_ideal(G, e):
    R = bei_ring(G.n)
    H = G.delete_edge(e)
    f = edge_binomial(R, G.n, *e)
    I = J(H, R)
    C = colon_element(I, f)
    assert all(I.contains(g * f) for g in C.gens)
    assert I.issubset(C)


def test_colon_of_path_contains_monomial_witness():
    """x2*x3 is in (J_{P_4} : f_{14}) although J_{C_4} has no monomials."""
    R = bei_ring(4)
    JP = J(path(4), R)
    f14 = edge_binomial(R, 4, 1, 4)
    x2x3 = R.var(1) * R.var(2)
    assert JP.contains(x2x3 * f14)
    assert colon_element(JP, f14).contains(x2x3)
    assert not J(cycle(4), R).contains(x2x3)


@pytest.mark.xfail(strict=True, reason="identity needs e to be a bridge; fails on cycles (see ledger)")
def test_fm_colon_identity_on_four_cycle():
    assert fm_colon_holds(cycle(4), (1, 4))


@pytest.mark.parametrize("G", [h_type(1, 1, 1, 1), h_type(2, 1, 1, 1), h_type(1, 1, 2, 1)])
def test_fm_colon_identity_on_bridges(G):
    assert all(fm_colon_holds(G, e) for e in G.sorted_edges())


# --- intersection ----------------------------------------------------------

def test_intersect_with_self():
    I = J(cycle(4))
    assert ideal_equal(intersect(I, I), I)


def test_intersect_coprime_principal():
    R, (x, y, z) = xyz()
    assert ideal_equal(intersect(Ideal(R, [x]), Ideal(R, [y])), Ideal(R, [x * y]))


def test_ohtani_decomposition_of_four_cycle_at_vertex_one():
    R = bei_ring(4)
    G = cycle(4)
    left = J(G.isolate(1), R) + Ideal(R, [R.var(0), R.var(4)])
    Gv = G.neighborhood_complete(1)
    assert Gv.has_edge(2, 4)
    assert ideal_equal(intersect(left, J(Gv, R)), J(G, R))


@pytest.mark.parametrize("G,H", [(cycle(4), path(4)), (complete(3), path(3)), (cycle(5), cycle(5))])
def test_intersection_sandwich(G, H):
    R = bei_ring(G.n)
    I, K = J(G, R), J(Graph(G.n, H.edges), R)
    X = intersect(I, K)
    assert X.issubset(I) and X.issubset(K)
    assert ideal_product(I, K).issubset(X)


# --- elimination --------------------------------------------------------------

def test_linear_elimination():
    R, (x, y, z) = xyz()
    assert ideal_equal(eliminate(Ideal(R, [x - y, y - z]), [0]), Ideal(R, [y - z]))


def test_contracting_four_cycle_to_path():
    R = bei_ring(4)
    JC = J(cycle(4), R)
    P3 = J(Graph(4, [(1, 2), (2, 3)]), R)
    assert ideal_equal(eliminate(JC, [3, 7]), P3)


def test_contracting_square_of_four_cycle():
    R = bei_ring(4)
    JC2 = power(J(cycle(4), R), 2)
    P3 = J(Graph(4, [(1, 2), (2, 3)]), R)
    assert ideal_equal(eliminate(JC2, [3, 7]), power(P3, 2))


@pytest.mark.parametrize("G", [G for n in (3, 4) for G in connected_graphs(n)], ids=str)
@pytest.mark.parametrize("s", [1, 2])
def test_elimination_respects_powers(G, s):
    R = bei_ring(G.n)
    JG = J(G, R)
    Js = power(JG, s)
    for A in induced_subsets(G, 2):
        if len(A) == G.n:
            continue
        keep = vertex_variables(G.n, A)
        assert ideal_equal(contract_to_variables(Js, keep), power(contract_to_variables(JG, keep), s))


# --- initial ideals and equality --------------------------------------------------

def _mons(I):
    return {I.ring.format_monomial(next(iter(g.terms))) for g in I.gens}


def test_initial_ideal_of_path():
    I = initial_ideal(J(path(3)), MonomialOrder.lex(6))
    assert _mons(I) == {"x1*y2", "x2*y3"}


def test_initial_ideal_of_principal():
    R = bei_ring(2)
    f = edge_binomial(R, 2, 1, 2)
    for order in (MonomialOrder.lex(4), MonomialOrder.degrevlex(4)):
        m, _ = f.lead(order)
        assert ideal_equal(initial_ideal(Ideal(R, [f]), order), Ideal(R, [R.from_dict({R.unpack(m): 1})]))


def test_initial_ideal_of_triangle():
    JK = J(complete(3))
    I = initial_ideal(JK, MonomialOrder.lex(6))
    assert _mons(I) == {"x1*y2", "x1*y3", "x2*y3"}
    for d in range(6):
        assert hilbert_function(I, d) == hilbert_function(JK, d)


def test_sum_and_product_identities():
    I = J(cycle(4))
    assert ideal_equal(I + I, I)
    R, (x, y, z) = xyz()
    m = Ideal(R, [x, y])
    assert ideal_equal(m * m, Ideal(R, [x * x, x * y, y * y]))
    assert ideal_equal(ideal_sum(m, Ideal(R, [z])), Ideal(R, [x, y, z]))


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("s", [1, 2])
def test_initial_ideal_commutes_with_powers_for_complete_graphs(n, s):
    JK = J(complete(n))
    lex = MonomialOrder.lex(2 * n)
    assert ideal_equal(power(initial_ideal(JK, lex), s), initial_ideal(power(JK, s), lex))


def test_ring_mismatch_rejected():
    with pytest.raises(RingMismatchError):
        ideal_sum(J(path(3)), J(path(4)))


def test_cached_bases_generate_same_ideal():
    I = J(cycle(5))
    lex = I.groebner(MonomialOrder.lex(10))
    drl = I.groebner()
    assert all(drl.contains(g) for g in lex.elements)
    assert all(lex.contains(g) for g in drl.elements)
