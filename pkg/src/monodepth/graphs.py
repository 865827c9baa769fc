"""Simple graphs: structure, clique clutters, strong perfection and CM squares."""
from __future__ import annotations

import dataclasses
import itertools
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .clutters import Clutter, classify, edge_ideal, monotone_sequences
from .config import Caps, resolve
from .errors import MonodepthError, PreconditionError, ResourceError
from .homology import homological_summary
from .ideals import (
    Monomial,
    MonomialIdeal,
    VarContext,
    alexander_dual,
    colon,
    ideal_sum,
    indices,
    popcount,
    power,
    symbolic_power,
)
from .linalg import QQ, FieldSpec
from .polarization import WeightedDigraph, weight_reduce, weighted_digraph_ideal


@dataclasses.dataclass(frozen=True)
class Graph:
    """Simple graph on the variables of ``context``; edges are index pairs i < j."""

    context: VarContext
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise PreconditionError(f"loop at {self.context.names[a]} is not allowed")
            if not (0 <= a < self.context.n and 0 <= b < self.context.n):
                raise PreconditionError("edge endpoint outside the context")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_pairs(cls, context: VarContext, pairs: Iterable[tuple]) -> "Graph":
        def pos(v):
            return context.index(v) if isinstance(v, str) else int(v)
        return cls(context, tuple((pos(a), pos(b)) for a, b in pairs))

    @classmethod
    def standard(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Vertices x1..xn with 1-based edge pairs."""
        return cls(VarContext.standard(n), tuple((a - 1, b - 1) for a, b in pairs))

    @property
    def n(self) -> int:
        return self.context.n

    @cached_property
    def adj(self) -> tuple[int, ...]:
        nbr = [0] * self.n
        for a, b in self.edges:
            nbr[a] |= 1 << b
            nbr[b] |= 1 << a
        return tuple(nbr)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.context.names[i] for i in indices(mask))

    def neighbors(self, v) -> int:
        return self.adj[self._pos(v)]

    def _pos(self, v) -> int:
        return self.context.index(v) if isinstance(v, str) else int(v)

    def as_clutter(self) -> Clutter:
        return Clutter(self.context, tuple((1 << a) | (1 << b) for a, b in self.edges))

    def ideal(self) -> MonomialIdeal:
        return edge_ideal(self.as_clutter())

    def delete(self, mask: int) -> "Graph":
        """Remove the vertices in ``mask``; they stay in the context as isolated vertices."""
        return Graph(self.context, tuple((a, b) for a, b in self.edges
                                         if not (mask >> a & 1 or mask >> b & 1)))

    def induced(self, mask: int) -> "Graph":
        return self.delete(self.full & ~mask)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


# --------------------------------------------------------------------------
# traversals


def components(G: Graph, mask: int | None = None) -> list[int]:
    left = G.full if mask is None else mask
    out = []
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in indices(frontier):
                nxt |= G.adj[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        left &= ~comp
    return out


def _two_colorable(G: Graph, comp: int) -> bool:
    side = {}
    for start in indices(comp):
        if start in side:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in indices(G.adj[v]):
                if u not in side:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return False
    return True


def is_bipartite(G: Graph) -> bool:
    return _two_colorable(G, G.full)


def triangles(G: Graph) -> list[int]:
    out = []
    for a, b in G.edges:
        for c in indices(G.adj[a] & G.adj[b]):
            if c > b:
                out.append((1 << a) | (1 << b) | (1 << c))
    return out


def perfect_matching(G: Graph) -> tuple[tuple[int, int], ...] | None:
    m = nx.max_weight_matching(G.to_networkx(), maxcardinality=True)
    if 2 * len(m) != G.n:
        return None
    return tuple(sorted((min(a, b), max(a, b)) for a, b in m))


@dataclasses.dataclass(frozen=True)
class GraphStructure:
    components: tuple[tuple[str, ...], ...]
    isolated: tuple[str, ...]
    c0: int
    bipartite: bool
    triangle_free: bool
    perfect_matching: tuple[tuple[str, str], ...] | None
    limit_depth_formula: int


def structure(G: Graph) -> GraphStructure:
    comps = components(G)
    isolated = [c for c in comps if popcount(c) == 1]
    c0 = sum(1 for c in comps if popcount(c) > 1 and _two_colorable(G, c))
    pm = perfect_matching(G)
    names = G.context.names
    return GraphStructure(
        tuple(G.names(c) for c in comps),
        tuple(names[indices(c)[0]] for c in isolated),
        c0,
        is_bipartite(G),
        not triangles(G),
        None if pm is None else tuple((names[a], names[b]) for a, b in pm),
        len(isolated) + c0,
    )


# --------------------------------------------------------------------------
# depth helpers


def _depth(J: MonomialIdeal, field: FieldSpec, caps: Caps) -> int:
    if J.is_zero():
        return J.context.n
    return homological_summary(J, field, caps).depth


def _prime(ctx: VarContext, mask: int) -> MonomialIdeal:
    if not mask:
        return MonomialIdeal.zero(ctx)
    return MonomialIdeal.from_sets(ctx, [(i,) for i in indices(mask)])


@dataclasses.dataclass(frozen=True)
class ColonStructureReport:
    vertex: str
    k: int
    depth_colon: int          # depth R/(I^k : x_i^k)
    depth_deleted: int        # depth R/(I(G minus N(x_i))^k, N(x_i))
    part_a: bool
    part_b: bool
    bipartite_a: bool | None  # (I : x_i)^k == (I : x_i)^(k)
    bipartite_b: bool | None  # (I^k : x_i^k) == (I : x_i)^k


def colon_structure_check(G: Graph, i, k: int, field: FieldSpec = QQ,
                          caps: Caps | None = None) -> ColonStructureReport:
    if k < 1:
        raise PreconditionError("k must be >= 1")
    caps = resolve(caps)
    ctx = G.context
    v = G._pos(i)
    I = G.ideal()
    if I.is_zero():
        raise PreconditionError("the graph has no edges")
    N = G.adj[v]
    H = G.delete(N)
    IH = H.ideal()
    colon_k = colon(power(I, k, caps), ctx.var(v, k))
    IHk = power(IH, k, caps) if not IH.is_zero() else IH
    rhs = ideal_sum(IHk, _prime(ctx, N))
    d_colon = _depth(colon_k, field, caps)
    d_rhs = _depth(rhs, field, caps)
    colon_1 = colon(I, ctx.var(v))
    part_b = colon_1 == ideal_sum(IH, _prime(ctx, N))
    ba = bb = None
    if is_bipartite(G):
        ck = power(colon_1, k, caps)
        ba = ck == symbolic_power(colon_1, k, caps)
        bb = colon_k == ck
    return ColonStructureReport(ctx.names[v], k, d_colon, d_rhs, d_colon <= d_rhs, part_b, ba, bb)


# --------------------------------------------------------------------------
# cliques and strong perfection


def _maximal_cliques(adj: Sequence[int], mask: int, cap: int) -> list[int]:
    out: list[int] = []

    def expand(R: int, P: int, X: int):
        if not P and not X:
            out.append(R)
            if len(out) > cap:
                raise ResourceError("maximal cliques", cap, len(out))
            return
        pivot = max(indices(P | X), key=lambda u: popcount(P & adj[u]))
        for u in indices(P & ~adj[pivot]):
            bit = 1 << u
            expand(R | bit, P & adj[u], X & adj[u])
            P &= ~bit
            X |= bit

    if mask:
        expand(0, mask, 0)
    return sorted(out, key=lambda m: tuple(indices(m)))



def maximal_cliques(G: Graph, caps: Caps | None = None) -> list[int]:
    return _maximal_cliques(G.adj, G.full, resolve(caps).cliques)


def clique_clutter(G: Graph, caps: Caps | None = None) -> Clutter:
    """Clutter of maximal cliques; isolated vertices give singleton edges."""
    return Clutter(G.context, tuple(maximal_cliques(G, caps)))


def _certificate(G: Graph, mask: int, cap: int) -> int | None:
    cliques = _maximal_cliques(G.adj, mask, cap)
    comp = tuple((~a) & mask & ~(1 << v) for v, a in enumerate(G.adj))
    for S in _maximal_cliques(comp, mask, cap):
        if all(popcount(S & c) == 1 for c in cliques):
            return S
    return None


def strongly_perfect_certificate(G: Graph, caps: Caps | None = None) -> tuple[str, ...] | None:
    """A maximal independent set meeting every maximal clique exactly once."""
    S = _certificate(G, G.full, resolve(caps).cliques)
    return None if S is None else G.names(S)


@dataclasses.dataclass(frozen=True)
class StrongPerfection:
    """status: 'yes', 'no' (with a failing induced subgraph) or 'inconclusive'."""

    status: str
    witness_subgraph: tuple[str, ...] | None = None


def is_strongly_perfect(G: Graph, budget: int | None = None, caps: Caps | None = None) -> StrongPerfection:
    caps = resolve(caps)
    budget = caps.subgraphs if budget is None else budget
    if G.n > budget:
        return StrongPerfection("inconclusive")
    # larger subgraphs first: a failure there is the likelier one
    for size in range(G.n, 0, -1):
        for combo in itertools.combinations(range(G.n), size):
            mask = sum(1 << i for i in combo)
            if _certificate(G, mask, caps.cliques) is None:
                return StrongPerfection("no", G.names(mask))
    return StrongPerfection("yes")


@dataclasses.dataclass(frozen=True)
class SymbolicCheck:
    certificate: tuple[str, ...]
    identities: tuple[bool, ...]      # (J^(k+1) : f) == J^(k) for k = 1..K-1
    depths: tuple[int | None, ...]
    regs: tuple[int | None, ...]
    depth_non_increasing: bool
    reg_non_decreasing: bool


def strongly_perfect_symbolic_check(G: Graph, K: int, field: FieldSpec = QQ,
                                    caps: Caps | None = None) -> SymbolicCheck:
    """J = cover ideal of cl(G); f = product of a strongly perfect certificate."""
    caps = resolve(caps)
    cert = _certificate(G, G.full, caps.cliques)
    if cert is None:
        raise PreconditionError("no maximal independent set meets every maximal clique exactly once")
    J = alexander_dual(edge_ideal(clique_clutter(G, caps)), caps)
    f = Monomial(G.context, tuple((cert >> j) & 1 for j in range(G.n)))
    ids = tuple(colon(symbolic_power(J, k + 1, caps), f) == symbolic_power(J, k, caps)
                for k in range(1, K))
    seq = monotone_sequences(J, K, "symbolic", field, caps)
    return SymbolicCheck(G.names(cert), ids, seq.depths, seq.regs,
                         seq.depth_non_increasing, seq.reg_non_decreasing)


# --------------------------------------------------------------------------
# squares of edge ideals


def is_unmixed_graph(G: Graph) -> bool:
    return classify(G.as_clutter()).unmixed


def combinatorial_cm2(G: Graph) -> bool:
    """Triangle-free, unmixed, and unmixed after deleting any single vertex."""
    if triangles(G) or not is_unmixed_graph(G):
        return False
    return all(is_unmixed_graph(G.delete(1 << v)) for v in range(G.n))


def dominating_triangle(G: Graph) -> tuple[str, ...] | None:
    """A triangle adjacent to every vertex outside it, if any."""
    for T in triangles(G):
        reach = T
        for v in indices(T):
            reach |= G.adj[v]
        if reach == G.full:
            return G.names(T)
    return None


@dataclasses.dataclass(frozen=True)
class CmSquareReport:
    combinatorial_cm2: bool
    homological_cm2: bool
    depth_zero_triangle: bool
    depth_square: int
    agree: bool


def cm_square_predicates(G: Graph, field: FieldSpec = QQ, caps: Caps | None = None) -> CmSquareReport:
    """Compare the combinatorial CM-square test with the homology of I(G)^2.

    ``agree`` also requires depth R/I(G)^2 = 0 exactly when some triangle
    dominates the graph.
    """
    if structure(G).isolated:
        raise PreconditionError("the CM-square classification needs a graph without isolated vertices")
    caps = resolve(caps)
    comb = combinatorial_cm2(G)
    s = homological_summary(power(G.ideal(), 2, caps), field, caps)
    tri = dominating_triangle(G) is not None
    agree = comb == s.is_cm and tri == (s.depth == 0)
    return CmSquareReport(comb, s.is_cm, tri, s.depth, agree)


@dataclasses.dataclass(frozen=True)
class VeryWellCoveredCheck:
    edge: tuple[str, str]
    identities: tuple[bool, ...]      # (I^(k+1) : x_e) == I^(k) for k = 1..K-1
    depths: tuple[int | None, ...]
    regs: tuple[int | None, ...]
    reg_non_decreasing: bool


def very_well_covered_check(G: Graph, K: int, field: FieldSpec = QQ,
                            caps: Caps | None = None) -> VeryWellCoveredCheck:
    if not classify(G.as_clutter()).very_well_covered:
        raise PreconditionError("the graph is not very well-covered")
    caps = resolve(caps)
    pm = perfect_matching(G)
    if pm is None:
        raise MonodepthError("very well-covered graph without a perfect matching: invariant violated")
    a, b = pm[0]
    I = G.ideal()
    xe = Monomial(G.context, tuple(1 if j in (a, b) else 0 for j in range(G.n)))
    ids = tuple(colon(symbolic_power(I, k + 1, caps), xe) == symbolic_power(I, k, caps)
                for k in range(1, K))
    seq = monotone_sequences(I, K, "symbolic", field, caps) if K >= 2 else None
    names = G.context.names
    return VeryWellCoveredCheck((names[a], names[b]), ids,
                                seq.depths if seq else (), seq.regs if seq else (),
                                seq.reg_non_decreasing if seq else True)


@dataclasses.dataclass(frozen=True)
class LimitDepthReport:
    depths: tuple[int | None, ...]
    formula: int
    stabilized: bool
    consistent: bool


def limit_depth_check(G: Graph, K: int, field: FieldSpec = QQ, caps: Caps | None = None) -> LimitDepthReport:
    """Once two consecutive powers share a depth, it should equal |isol| + c0."""
    if G.ideal().is_zero():
        raise PreconditionError("the graph has no edges")
    seq = monotone_sequences(G.ideal(), K, "ordinary", field, caps)
    formula = structure(G).limit_depth_formula
    d = seq.depths
    stable = len(d) >= 2 and d[-1] is not None and d[-1] == d[-2]
    return LimitDepthReport(d, formula, stable, (not stable) or d[-1] == formula)


def weighted_cm_reduction_check(D: WeightedDigraph, field: FieldSpec = QQ, caps: Caps | None = None) -> bool:
    """CM status of I(D) equals that of the ideal with every weight >= 2 set to 2."""
    a = homological_summary(weighted_digraph_ideal(D), field, caps).is_cm
    b = homological_summary(weighted_digraph_ideal(weight_reduce(D)), field, caps).is_cm
    return a == b
