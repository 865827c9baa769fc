import pytest
from hypothesis import given
from hypothesis import strategies as st

from monodepth.errors import PreconditionError
from monodepth.homology import betti_table, homological_summary
from monodepth.ideals import MonomialIdeal, VarContext, colon, radical
from monodepth.parser import parse_monomial
from monodepth.polarization import (
    WeightedDigraph,
    collapse_top_power,
    format_polarized,
    latex_var,
    lower_top_degree,
    polarize_full,
    polarize_with,
    radical_chain,
    stretch_variable,
    weight_reduce,
    weighted_digraph_ideal,
)
from monodepth.suite import POLARIZATION_EXPECTED, load_fixture, polarization_example

from oracles import taylor_invariants

X3 = VarContext.standard(3)
X4 = VarContext.standard(4)
X5 = VarContext.standard(5)


def ideal(ctx, *texts):
    return MonomialIdeal(ctx, [parse_monomial(t, ctx) for t in texts])


def test_worked_example_strings():
    assert polarization_example() == POLARIZATION_EXPECTED


def test_squarefree_is_unchanged():
    I = ideal(X3, "x1*x2", "x2*x3")
    pol = polarize_full(I)
    assert pol.new_vars == ()
    assert pol.ideal == I


def test_pure_power():
    pol = polarize_full(ideal(VarContext.standard(1), "x1^3"))
    assert [format_polarized(pol, e) for e in pol.images] == ["x_{1,2}x_{1,3}x_1"]
    assert sorted(latex_var(v) for v in pol.new_vars) == ["x_{1,2}", "x_{1,3}"]


def test_depolarize_inverts_images():
    I = ideal(X3, "x1^3*x2^3", "x1^2*x3", "x1*x3^2", "x2^2*x3")
    pol = polarize_full(I)
    assert sorted(pol.depolarize(m).exps for m in pol.polarized_gens()) == sorted(I.exps)
    assert pol.ideal.is_squarefree()


def test_lowering_examples():
    d = lower_top_degree(ideal(X5, "x1^7*x2*x3^2", "x1^7*x5^3", "x1^6*x3^2*x4", "x2*x5^7"), "x1")
    assert (d.q, d.p) == (7, 6)
    assert sorted(str(m) for m in d.B) == sorted(["x1^7*x2*x3^2", "x1^7*x5^3"])
    assert d.L == ideal(X5, "x1^6*x2*x3^2", "x1^6*x5^3", "x1^6*x3^2*x4", "x2*x5^7")
    d = lower_top_degree(ideal(X5, "x1^2*x2*x3^2", "x3^2*x4", "x4^3*x5"), "x1")
    assert (d.q, d.p) == (2, 0)
    assert d.L == ideal(X5, "x1*x2*x3^2", "x3^2*x4", "x4^3*x5")
    sq = ideal(X3, "x1*x2", "x1*x3", "x2*x3")
    d = lower_top_degree(sq, "x1")
    assert d.q == 1 and d.L == colon(sq, X3.var(0))


def test_lowering_needs_variable():
    with pytest.raises(PreconditionError):
        lower_top_degree(ideal(X3, "x2"), "x1")


def test_collapse_examples():
    assert collapse_top_power(ideal(X3, "x1^2*x2", "x3"), "x1") == ideal(X3, "x1*x2", "x3")
    assert collapse_top_power(ideal(X3, "x1^3*x2", "x2*x3"), "x1") == ideal(X3, "x1*x2", "x2*x3")
    I = ideal(X3, "x1^2*x2", "x3^3")
    assert collapse_top_power(collapse_top_power(I, "x1"), "x3") == radical(I)
    with pytest.raises(PreconditionError):
        collapse_top_power(ideal(X3, "x1^2", "x1*x2"), "x1")


def test_radical_chain_ends_at_radical():
    I = ideal(X3, "x1^3*x2", "x1*x3^2", "x2^2*x3")
    assert radical_chain(I)[-1][2] == radical(I)


def test_stretch_examples():
    assert stretch_variable(ideal(X3, "x1*x2"), "x1", 3) == ideal(X3, "x1^3*x2")
    I = ideal(X3, "x1*x2", "x2*x3")
    assert stretch_variable(I, "x1", 1) == I
    assert betti_table(I).totals() == betti_table(stretch_variable(I, "x1", 3)).totals()


def test_weighted_digraph_examples():
    ctx2 = VarContext.standard(2)
    D = WeightedDigraph.from_names(ctx2, [("x1", "x2")], {"x2": 5})
    assert weighted_digraph_ideal(D) == ideal(ctx2, "x1*x2^5")
    assert weighted_digraph_ideal(weight_reduce(D)) == ideal(ctx2, "x1*x2^2")
    D2 = WeightedDigraph.from_names(ctx2, [("x1", "x2"), ("x2", "x1")])
    assert weighted_digraph_ideal(D2) == ideal(ctx2, "x1*x2")
    P = WeightedDigraph.from_names(X3, [("x1", "x2"), ("x2", "x3")], {"x2": 3, "x3": 2})
    assert weighted_digraph_ideal(P) == ideal(X3, "x1*x2^3", "x2*x3^2")
    assert weighted_digraph_ideal(weight_reduce(P)) == ideal(X3, "x1*x2^2", "x2*x3^2")
    a = homological_summary(weighted_digraph_ideal(P)).is_cm
    b = homological_summary(weighted_digraph_ideal(weight_reduce(P))).is_cm
    assert a == b


def test_polarize_with_rejects_small_gamma():
    with pytest.raises(PreconditionError):
        polarize_with(ideal(X3, "x1^3"), (2, 0, 0))


exps3 = st.tuples(*[st.integers(0, 3)] * 3).filter(any)
ideals3 = st.lists(exps3, min_size=1, max_size=4).map(lambda g: MonomialIdeal(X3, g))


@given(ideals3)
def test_polarization_preserves_graded_betti(I):
    pol = polarize_full(I)
    a, b = betti_table(I), betti_table(pol.ideal)
    assert a.graded() == b.graded()
    assert b.depth == a.depth + len(pol.new_vars)


@given(ideals3)
def test_direct_matches_taylor(I):
    t = betti_table(I)
    ref = taylor_invariants(I.exps, 3)
    assert (t.pd, t.depth, t.reg) == (ref["pd"], ref["depth"], ref["reg"])


@given(ideals3, st.integers(0, 2), st.integers(1, 3))
def test_stretch_keeps_totals(I, var, d):
    assert betti_table(I).totals() == betti_table(stretch_variable(I, var, d)).totals()


def test_difference_identity_on_worked_example():
    L = load_fixture("polarization").bindings["L"]
    I = load_fixture("polarization").bindings["I"]
    f = next(g for g in L.gens if g not in I)
    gamma = tuple(max(a, d) for a, d in zip(f.exps, I.top_exponents()))
    PL, PI = betti_table(polarize_with(L, gamma).ideal), betti_table(polarize_with(I, gamma).ideal)
    BL, BI = betti_table(L), betti_table(I)
    assert PL.depth - PI.depth == BL.depth - BI.depth
    assert (PL.reg, PI.reg) == (BL.reg, BI.reg)


exps4 = st.tuples(*[st.integers(0, 3)] * 4).filter(any)
ideals4 = st.lists(exps4, min_size=1, max_size=5).map(lambda g: MonomialIdeal(X4, g))


@given(ideals4, st.integers(0, 3))
def test_lowering_clauses(I, var):
    if not any(e[var] for e in I.exps):
        return
    d = lower_top_degree(I, var)
    if d.L.is_unit():  # x_var itself was a generator
        return
    a, b = homological_summary(I), homological_summary(d.L)
    if d.clause == "a":
        assert a.depth == b.depth
        assert b.reg <= a.reg <= b.reg + 1
    elif d.clause == "b":
        assert b.depth >= a.depth
        assert b.reg <= a.reg
    else:
        assert a.depth == homological_summary(collapse_top_power(I, var)).depth


@given(ideals4)
def test_radical_chain_bounds(I):
    r = radical_chain(I)
    R = r[-1][2] if r else I
    assert R == radical(I)
    a, b = homological_summary(I), homological_summary(R)
    assert b.depth >= a.depth and b.reg <= a.reg
