import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from monodepth.errors import PreconditionError
from monodepth.graphs import (
    Graph,
    clique_clutter,
    cm_square_predicates,
    colon_structure_check,
    combinatorial_cm2,
    components,
    dominating_triangle,
    is_bipartite,
    is_strongly_perfect,
    limit_depth_check,
    maximal_cliques,
    strongly_perfect_certificate,
    strongly_perfect_symbolic_check,
    structure,
    triangles,
    very_well_covered_check,
    weighted_cm_reduction_check,
)
from monodepth.ideals import VarContext
from monodepth.polarization import WeightedDigraph
from monodepth.suite import load_fixture

C3 = Graph.standard(3, [(1, 2), (2, 3), (1, 3)])
C4 = Graph.standard(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
C5 = Graph.standard(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
P3 = Graph.standard(3, [(1, 2), (2, 3)])
TWO_EDGES = Graph.standard(4, [(1, 2), (3, 4)])
WHISKERED = Graph.standard(6, [(1, 2), (2, 3), (1, 3), (1, 4), (2, 5), (3, 6)])


def test_structure_examples():
    s = structure(C4)
    assert (s.c0, s.isolated, s.limit_depth_formula) == (1, (), 1)
    t = structure(Graph.standard(4, [(1, 2), (2, 3), (1, 3)]))
    assert (t.c0, t.isolated, t.limit_depth_formula) == (0, ("x4",), 1)
    assert structure(TWO_EDGES).c0 == 2 == structure(TWO_EDGES).limit_depth_formula
    assert structure(C4).perfect_matching is not None
    assert structure(C3).perfect_matching is None


def test_colon_structure_examples():
    for G in (C3, C4, P3):
        assert colon_structure_check(G, 0, 1).part_b
    r = colon_structure_check(C4, "x1", 2)
    assert r.bipartite_a and r.bipartite_b
    assert colon_structure_check(P3, "x2", 2).part_a


def test_clique_clutter_examples():
    assert clique_clutter(C3).edge_names() == [("x1", "x2", "x3")]
    assert clique_clutter(C4).edges == C4.as_clutter().edges
    assert clique_clutter(P3).edge_names() == [("x1", "x2"), ("x2", "x3")]


def test_strong_perfection_examples():
    assert strongly_perfect_certificate(C4) == ("x1", "x3")
    assert is_strongly_perfect(C4).status == "yes"
    assert strongly_perfect_certificate(C5) is None
    r = is_strongly_perfect(C5)
    assert r.status == "no" and r.witness_subgraph == C5.names(C5.full)
    assert is_strongly_perfect(C5, budget=3).status == "inconclusive"


def test_symbolic_check_examples():
    r = strongly_perfect_symbolic_check(P3, 3)
    assert all(r.identities)
    k3 = strongly_perfect_symbolic_check(C3, 3)
    assert all(k3.identities)
    c4 = strongly_perfect_symbolic_check(C4, 3)
    assert c4.depth_non_increasing and c4.reg_non_decreasing
    with pytest.raises(PreconditionError):
        strongly_perfect_symbolic_check(C5, 2)


def test_cm_square_examples():
    r = cm_square_predicates(TWO_EDGES)
    assert r.combinatorial_cm2 and r.homological_cm2 and r.agree
    r = cm_square_predicates(C3)
    assert r.depth_zero_triangle and r.depth_square == 0 and r.agree
    G = load_fixture("gorenstein8").bindings["G"]
    assert combinatorial_cm2(G)
    with pytest.raises(PreconditionError):
        cm_square_predicates(Graph.standard(3, [(1, 2)]))


def test_very_well_covered_examples():
    r = very_well_covered_check(C4, 3)
    assert all(r.identities) and r.reg_non_decreasing
    edge = Graph.standard(2, [(1, 2)])
    assert all(very_well_covered_check(edge, 4).identities)
    assert all(very_well_covered_check(WHISKERED, 2).identities)
    with pytest.raises(PreconditionError):
        very_well_covered_check(P3, 2)


def test_limit_depth():
    r = limit_depth_check(C4, 3)
    assert r.formula == 1 and r.consistent
    assert limit_depth_check(TWO_EDGES, 3).consistent


def test_weighted_reduction_examples():
    X2, X3, X4 = (VarContext.standard(n) for n in (2, 3, 4))
    assert weighted_cm_reduction_check(WeightedDigraph.from_names(X2, [("x1", "x2")], {"x2": 5}))
    path = WeightedDigraph.from_names(X3, [("x1", "x2"), ("x2", "x3")], {"x2": 3, "x3": 2})
    assert weighted_cm_reduction_check(path)
    star = WeightedDigraph.from_names(X4, [("x2", "x1"), ("x3", "x1"), ("x4", "x1")], {"x1": 4})
    assert weighted_cm_reduction_check(star)


def test_graph_validation():
    with pytest.raises(PreconditionError):
        Graph.standard(2, [(1, 1)])


# --------------------------------------------------------------------------
# properties against networkx

graphs6 = st.integers(0, 10 ** 6).map(lambda s: _random_graph(random.Random(s), 6))


def _random_graph(rng, n_max):
    n = rng.randint(1, n_max)
    p = rng.random()
    pairs = [(a + 1, b + 1) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph.standard(n, pairs)


@given(graphs6)
def test_cliques_match_networkx(G):
    ours = sorted(tuple(i for i in range(G.n) if m >> i & 1) for m in maximal_cliques(G))
    ref = sorted(tuple(sorted(c)) for c in nx.find_cliques(G.to_networkx()))
    assert ours == ref


@given(graphs6)
def test_components_and_bipartite_match_networkx(G):
    H = G.to_networkx()
    assert is_bipartite(G) == nx.is_bipartite(H)
    assert len(components(G)) == nx.number_connected_components(H)
    tri = sum(nx.triangles(H).values()) // 3
    assert len(triangles(G)) == tri


@given(graphs6)
def test_dominating_triangle_forces_depth_zero(G):
    if not G.edges or structure(G).isolated:
        return
    r = cm_square_predicates(G)
    assert r.agree
    if dominating_triangle(G) is not None:
        assert r.depth_square == 0


@given(graphs6)
def test_bipartite_graphs_are_strongly_perfect(G):
    if is_bipartite(G):
        assert is_strongly_perfect(G).status == "yes"


@given(graphs6)
def test_limit_depth_lower_bound(G):
    if not G.edges:
        return
    r = limit_depth_check(G, 3)
    known = [d for d in r.depths if d is not None]
    assert min(known) >= r.formula
    assert r.consistent
