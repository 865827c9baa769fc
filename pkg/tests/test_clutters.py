import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monodepth.clutters import (
    Clutter,
    IncidenceMatrix,
    classify,
    colon_power_identity,
    cover_dual,
    deletion,
    duality_formulas_check,
    edge_ideal,
    find_transversal_cover,
    find_transversal_edge,
    mfmc_bounded,
    monotone_sequences,
    scp_vertices,
)
from monodepth.config import Caps
from monodepth.errors import PreconditionError, ResourceError
from monodepth.ideals import MonomialIdeal, VarContext, power, symbolic_power

from oracles import brute_minimal_covers, dense_rank, lp_minimum, random_clutter

X1, X2, X3, X4 = (VarContext.standard(n) for n in (1, 2, 3, 4))


def clutter(ctx, *edges):
    return Clutter.from_sets(ctx, [[ctx.index(v) for v in e.split()] for e in edges])


C3 = clutter(X3, "x1 x2", "x1 x3", "x2 x3")
C4 = clutter(X4, "x1 x2", "x2 x3", "x3 x4", "x1 x4")


def test_dual_and_deletion_examples():
    assert cover_dual(C3).edge_names() == C3.edge_names()
    assert cover_dual(cover_dual(C4)) == C4
    assert deletion(C3, ["x1"]).edge_names() == [("x2", "x3")]


def test_antichain_enforced():
    with pytest.raises(PreconditionError):
        clutter(X2, "x1 x2", "x1")


def test_duality_examples():
    assert duality_formulas_check(C3, X3.var(0)).part_iii
    from monodepth.ideals import alexander_dual, ideal_sum
    lhs = alexander_dual(ideal_sum(edge_ideal(C3), MonomialIdeal(X3, [X3.var(0)])))
    assert [str(g) for g in lhs.gens] == ["x1*x2", "x1*x3"]
    r = duality_formulas_check(C3, X3.one())
    assert r.part_i and r.part_ii and r.part_iii
    r = duality_formulas_check(C4, X4.monomial((1, 0, 1, 0)))
    assert r.part_i and r.part_ii


def test_classify_examples():
    c = classify(C4)
    assert (c.uniform, c.unmixed, c.very_well_covered) == (True, True, True)
    assert not classify(clutter(X3, "x1 x2", "x2 x3")).unmixed
    assert not classify(clutter(X3, "x1", "x2 x3")).uniform
    assert classify(clutter(X3, "x1", "x2 x3")).very_well_covered is None


def test_scp_examples():
    r = scp_vertices(IncidenceMatrix.of(C3))
    half = Fraction(1, 2)
    assert (half, half, half) in r.vertices
    assert not r.integral and r.fractional_witness == (half, half, half)
    assert scp_vertices(IncidenceMatrix.of(C4)).integral
    single = scp_vertices(IncidenceMatrix.of(clutter(X1, "x1")))
    assert single.vertices == ((Fraction(1),),) and single.integral


def test_scp_cap():
    with pytest.raises(ResourceError):
        scp_vertices(IncidenceMatrix.of(C4), Caps(bases=5))


def test_mfmc_examples():
    r = mfmc_bounded(C3, 2)
    assert (r.holds_up_to_K, r.first_failure_k, str(r.witness)) == (False, 2, "x1*x2*x3")
    assert mfmc_bounded(C4, 3).holds_up_to_K
    assert mfmc_bounded(clutter(X2, "x1 x2"), 4).holds_up_to_K
    with pytest.raises(PreconditionError):
        mfmc_bounded(C4, 1)


def test_transversal_examples():
    assert find_transversal_edge(C4) == ("x1", "x2")
    assert find_transversal_edge(C3) is None
    single = clutter(X2, "x1 x2")
    assert find_transversal_edge(single) == ("x1", "x2")
    assert find_transversal_cover(C4) is not None


def test_colon_power_examples():
    I4, I3 = edge_ideal(C4), edge_ideal(C3)
    assert colon_power_identity(I4, ["x1", "x2"], 2)
    assert not colon_power_identity(I3, ["x1", "x2"], 1)
    ci = MonomialIdeal(X4, [(1, 1, 0, 0), (0, 0, 1, 1)])
    assert colon_power_identity(ci, ["x1", "x2"], 3)
    with pytest.raises(PreconditionError):
        colon_power_identity(I4, ["x1", "x3"], 1)


def test_sequence_examples():
    s = monotone_sequences(edge_ideal(C4), 3)
    assert s.depth_non_increasing and s.reg_non_decreasing and not s.gaps
    p = monotone_sequences(MonomialIdeal(X3, [(1, 2, 0)]), 3)
    assert len(set(p.depths)) == 1
    sym = monotone_sequences(edge_ideal(C3), 3, mode="symbolic")
    assert sym.mode == "symbolic" and all(d is not None for d in sym.depths)


def test_sequences_record_gaps():
    s = monotone_sequences(edge_ideal(C3), 3, caps=Caps(lattice=8))
    assert s.gaps and s.depths[0] is not None
    # the square has depth zero; a witness fills the gap
    assert s.depths[1] == 0


def test_triangle_cover_ideal_sequence_is_reported():
    J = edge_ideal(cover_dual(C3))
    s = monotone_sequences(J, 3)
    assert len(s.depths) == 3 and not s.gaps


# --------------------------------------------------------------------------
# properties

def clutters(n_max=5):
    return st.integers(0, 10 ** 6).map(lambda seed: random_clutter(random.Random(seed), n_max))


def make(n, sets):
    return Clutter.from_sets(VarContext.standard(n), sets)


@given(clutters())
def test_covers_match_brute_force(nc):
    n, sets = nc
    C = make(n, sets)
    want = sorted(tuple(c) for c in brute_minimal_covers(sets, n))
    got = sorted(tuple(C.context.index(v) for v in c) for c in C.cover_names())
    assert got == want
    assert cover_dual(cover_dual(C)) == C


@given(clutters(), st.integers(0, 31))
def test_duality_formulas_hold(nc, fmask):
    n, sets = nc
    C = make(n, sets)
    f = C.context.monomial(tuple((fmask >> i) & 1 for i in range(n)))
    r = duality_formulas_check(C, f)
    assert r.part_i and r.part_ii and r.part_iii


@given(clutters(4), st.lists(st.integers(0, 5), min_size=4, max_size=4))
def test_scp_vertices_against_lp(nc, weights):
    n, sets = nc
    C = make(n, sets)
    rep = scp_vertices(IncidenceMatrix.of(C))
    cols = C.edges
    for v in rep.vertices:
        assert all(x >= 0 for x in v)
        assert all(sum(v[i] for i in range(n) if col >> i & 1) >= 1 for col in cols)
        tight = [[1 if col >> i & 1 else 0 for i in range(n)] for col in cols
                 if sum(v[i] for i in range(n) if col >> i & 1) == 1]
        tight += [[1 if j == i else 0 for j in range(n)] for i in range(n) if v[i] == 0]
        assert dense_rank(tight) == n
    # every nonnegative objective is minimized at one of the listed vertices
    c = weights[:n]
    best = min(sum(ci * xi for ci, xi in zip(c, v)) for v in rep.vertices)
    assert abs(float(best) - lp_minimum(cols, n, c)) < 1e-7
    assert rep.integral == all(x.denominator == 1 for v in rep.vertices for x in v)


@given(clutters(4), st.integers(2, 3))
def test_mfmc_matches_definition(nc, K):
    n, sets = nc
    C = make(n, sets)
    I = edge_ideal(C)
    r = mfmc_bounded(C, K)
    agree = all(power(I, k) == symbolic_power(I, k) for k in range(2, K + 1))
    assert r.holds_up_to_K == agree
    if not agree:
        assert r.witness in symbolic_power(I, r.first_failure_k)
        assert r.witness not in power(I, r.first_failure_k)


@given(clutters(4))
def test_transversal_edge_for_unmixed_ideal_clutters(nc):
    n, sets = nc
    C = make(n, sets)
    if not scp_vertices(IncidenceMatrix.of(C)).integral:
        return
    c = classify(C)
    if c.unmixed:
        assert find_transversal_edge(C) is not None
    if c.uniform:
        assert find_transversal_cover(C) is not None


@given(clutters(5))
def test_monotone_for_unmixed_mfmc_clutters(nc):
    n, sets = nc
    C = make(n, sets)
    if not classify(C).unmixed or not mfmc_bounded(C, 3).holds_up_to_K:
        return
    s = monotone_sequences(edge_ideal(C), 3)
    assert s.depth_non_increasing and s.reg_non_decreasing
