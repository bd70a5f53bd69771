import json

import pytest

from beilab import bei
from beilab.bei import (
    BUDGET,
    MATCH,
    WITHIN,
    VerifierError,
    aci_trees,
    aci_unicyclic,
    build_bei,
    initial_ideal_graph,
    ohtani_holds,
    reg_across_primes,
    reg_power,
    stabilization_probe,
    verify_theorem,
)
from beilab.graph import (
    Graph,
    complete,
    connected_graphs,
    cycle,
    g2,
    girth,
    induced_matching_number,
    is_g1_based,
    is_g2_based,
    is_h_type,
    is_t_type,
    iv,
    path,
    star,
)
from beilab.ideal import initial_ideal
from beilab.poly import MonomialOrder


# --- construction ------------------------------------------------------------

def test_path_generators():
    B = build_bei(path(3))
    assert [str(f) for f in B.gens] == [str(B.ring.parse("x1*y2 - x2*y1")), str(B.ring.parse("x2*y3 - x3*y2"))]


def test_empty_graph_gives_zero_ideal():
    B = build_bei(Graph(3))
    assert B.gens == () and B.ideal.is_zero()


def test_generator_invariants():
    for n in range(2, 6):
        for G in connected_graphs(n):
            gens = build_bei(G).gens
            assert len(gens) == len(G.edges)
            assert all(f.is_homogeneous() == (True, 2) for f in gens)
            assert len(set(map(str, gens))) == len(gens)


def test_triangle_has_three_generators():
    assert len(build_bei(complete(3)).gens) == 3


# --- regularity of powers ----------------------------------------------------------

def test_reg_power_examples():
    assert reg_power(path(4), 2) == 5
    assert reg_power(cycle(5), 1) == 3
    assert reg_power(star(4), 2) == 4


def test_reg_power_rejects_zero_exponent():
    with pytest.raises(ValueError):
        reg_power(path(3), 0)


@pytest.mark.parametrize("G", [path(4), cycle(4), complete(3), star(3), cycle(5)], ids=str)
@pytest.mark.parametrize("s", [1, 2])
def test_primes_agree(G, s):
    assert not reg_across_primes(G, s).anomaly


# --- verifiers ------------------------------------------------------------------------

def test_cycle_verifier_example():
    r = verify_theorem("cycle", {"n": 4, "s": 2})
    assert (r.computed, r.expected, r.verdict) == (4, {"exact": 4}, MATCH)


def test_g2_verifier_example():
    r = verify_theorem("g2", {"m": 6})
    assert (r.computed, r.verdict) == (3, MATCH)


@pytest.mark.parametrize("G", [G for n in range(2, 5) for G in connected_graphs(n)], ids=str)
@pytest.mark.parametrize("s", [1, 2])
def test_lower_bound_sweep(G, s):
    r = verify_theorem("lower-bound", {"graph": G.to_json(), "s": s})
    assert r.verdict == WITHIN


def test_bound_report_records_attained_endpoint():
    T = aci_trees(5)[0]
    r = verify_theorem("aci-tree", {"graph": T.to_json(), "s": 1})
    assert r.verdict == WITHIN
    assert r.attained in ("lower", "upper")
    assert r.expected == {"lower": 2 + iv(T) - 2, "upper": 2 + iv(T) - 1}


def test_family_params_accepted():
    r = verify_theorem("path", {"family": "path", "n": 4, "s": 1})
    assert r.computed == 3 and r.verdict == MATCH


def test_unknown_theorem_rejected():
    with pytest.raises(VerifierError):
        verify_theorem("no-such-theorem", {})


@pytest.mark.parametrize("theorem,params", [
    ("g2", {"m": 5}),
    ("aci-tree", {"graph": cycle(4).to_json(), "s": 1}),
    ("unicyclic", {"graph": path(5).to_json(), "s": 1}),
    ("lower-bound", {"graph": Graph(4, [(1, 2)]).to_json(), "s": 1}),
])
def test_invalid_params_rejected(theorem, params):
    with pytest.raises(VerifierError):
        verify_theorem(theorem, params)


def test_report_json_shape():
    r = verify_theorem("star", {"n": 3, "s": 1})
    d = r.to_json()
    assert {"theorem", "params", "computed", "expected", "verdict", "prime", "ms"} <= set(d)
    assert "ms" not in r.to_json(timing=False)
    assert json.loads(r.dumps(timing=False)) == r.to_json(timing=False)
    assert r.dumps(timing=False) == verify_theorem("star", {"n": 3, "s": 1}).dumps(timing=False)


def test_budget_exhaustion_is_reported():
    G = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 3)])
    bei._BETTI_CACHE.clear()
    old = bei.set_frame_budget(3)
    try:
        r = verify_theorem("lower-bound", {"graph": G.to_json(), "s": 2})
    finally:
        bei.set_frame_budget(old)
    assert r.verdict == BUDGET and r.computed is None and r.details
    assert not r.ok


@pytest.mark.parametrize("G", [cycle(4), complete(4), path(4), Graph(4, [(1, 2), (2, 3), (3, 1), (3, 4)])], ids=str)
def test_ohtani_holds(G):
    assert all(ohtani_holds(G, v) for v in G.vertices if not G.is_simplicial(v))


@pytest.mark.parametrize("theorem", ["contraction", "monotonicity", "ohtani"])
def test_identity_verifiers_on_four_cycle(theorem):
    params = {"graph": cycle(4).to_json()}
    if theorem != "ohtani":
        params["s"] = 2
    r = verify_theorem(theorem, params)
    assert r.verdict == MATCH
    assert r.computed == r.expected["exact"] > 0


@pytest.mark.parametrize("n", [3, 4])
def test_conca_initial(n):
    r = verify_theorem("conca-initial", {"n": n, "s": 2})
    assert r.verdict == MATCH and r.computed == 2


def test_initial_ideal_graph_of_triangle():
    B = build_bei(complete(3))
    H = initial_ideal_graph(initial_ideal(B.ideal, MonomialOrder.lex(6)), 3)
    assert set(H.edges) == {(1, 5), (1, 6), (2, 6)}
    assert induced_matching_number(H) == 1


# --- stabilization probe -------------------------------------------------------------

def test_probe_g2_six():
    assert stabilization_probe(g2(6), 2).sequence == [(1, 3), (2, 6)]


def test_probe_triangle_is_stable_from_one():
    p = stabilization_probe(complete(3), 3)
    assert p.sequence == [(1, 1), (2, 3), (3, 5)]
    assert p.stable_from == 1


def test_probe_path_three():
    p = stabilization_probe(path(3), 2)
    assert p.sequence == [(1, 2), (2, 4)]
    assert p.stable_from is None
    assert p.to_json()["sequence"] == [[1, 2], [2, 4]]


def test_probe_needs_two_steps():
    with pytest.raises(ValueError):
        stabilization_probe(path(3), 1)


# --- sweep families and the unicyclic regularity formula ------------------------------------

def test_aci_tree_sweep_is_classified():
    trees = aci_trees(7)
    assert trees and all(is_t_type(T) or is_h_type(T) for T in trees)
    assert len({T.canonical_form() for T in trees}) == len(trees)


UNICYCLIC = aci_unicyclic(7)


def test_unicyclic_sweep_is_classified():
    assert UNICYCLIC and all(is_g1_based(G) or is_g2_based(G) for G in UNICYCLIC)
    assert all(girth(G) >= 4 for G in UNICYCLIC)


@pytest.mark.parametrize("G", UNICYCLIC, ids=str)
def test_unicyclic_regularity_at_most_n_minus_two(G):
    r = reg_power(G, 1)
    assert r <= G.n - 2
    assert r == (G.n - 2 if is_g1_based(G) else G.n - 3)


@pytest.mark.xfail(strict=True, reason="with iv counted via maximal cliques, iv + 1 overshoots (see ledger)")
def test_unicyclic_regularity_equals_iv_plus_one():
    assert all(reg_power(G, 1) == iv(G) + 1 for G in UNICYCLIC)
