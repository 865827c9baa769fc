"""Polarization, top-degree lowering, variable stretching and weighted digraphs.

New variables produced by polarizing at ``x1`` are named ``x1,2``,
``x1,3``, ...; the original variable plays the role of level 1.
"""
from __future__ import annotations

import dataclasses
import re
from typing import Mapping, Sequence

from .errors import PreconditionError
from .ideals import Exps, Monomial, MonomialIdeal, VarContext, minimal_exps, radical


@dataclasses.dataclass(frozen=True)
class PolarizationResult:
    ideal: MonomialIdeal
    new_vars: tuple[str, ...]
    origin_map: Mapping[str, tuple[int, int]]
    source: MonomialIdeal
    gamma: Exps
    # image of each source generator, in the order of source.exps
    images: tuple[Exps, ...]

    @property
    def base_context(self) -> VarContext:
        return self.source.context

    def polarized_gens(self) -> list[Monomial]:
        ctx = self.ideal.context
        return [Monomial(ctx, e) for e in self.images]

    def depolarize(self, m: Monomial) -> Monomial:
        """Substitute x_{i,j} -> x_i."""
        n = self.base_context.n
        e = list(m.exps[:n])
        for name, (i, _level) in self.origin_map.items():
            e[i] += m.exps[self.ideal.context.index(name)]
        return Monomial(self.base_context, tuple(e))


def new_var_name(base: str, level: int) -> str:
    return f"{base},{level}"


def _layout(ctx: VarContext, gamma: Sequence[int]):
    names = []
    origin = {}
    for i, g in enumerate(gamma):
        for level in range(2, g + 1):
            name = new_var_name(ctx.names[i], level)
            names.append(name)
            origin[name] = (i, level)
    return names, origin


def _polarize_exps(e: Exps, gamma: Sequence[int], slot: dict[tuple[int, int], int], size: int) -> Exps:
    out = [0] * size
    for i, c in enumerate(e):
        if c == 0:
            continue
        g = gamma[i]
        if c > g:
            raise PreconditionError(f"exponent {c} of variable {i} exceeds the polarization bound {g}")
        if g == 1:
            out[i] = 1
        elif c < g:
            for level in range(2, c + 2):
                out[slot[(i, level)]] = 1
        else:
            for level in range(2, g + 1):
                out[slot[(i, level)]] = 1
            out[i] = 1
    return tuple(out)


def polarize_with(J: MonomialIdeal, gamma: Sequence[int]) -> PolarizationResult:
    """Polarize the generators of J using the level bounds ``gamma``.

    With ``gamma`` the top exponents of J this is the full polarization; a
    larger ``gamma`` polarizes J inside the ring of a bigger ideal, as needed
    when comparing (f, I)^pol with the polarized generators of I.
    """
    ctx = J.context
    gamma = tuple(int(g) for g in gamma)
    if len(gamma) != ctx.n:
        raise PreconditionError("gamma must have one entry per variable")
    names, origin = _layout(ctx, gamma)
    big = ctx.extend(names)
    slot = {lv: big.index(nm) for nm, lv in origin.items()}
    images = tuple(_polarize_exps(e, gamma, slot, big.n) for e in J.exps)
    ideal = MonomialIdeal(big, images)
    return PolarizationResult(ideal, tuple(names), dict(origin), J, gamma, images)


def polarize_full(J: MonomialIdeal) -> PolarizationResult:
    if J.is_zero():
        raise PreconditionError("cannot polarize the zero ideal")
    return polarize_with(J, J.top_exponents())


_NAME = re.compile(r"^([A-Za-z_]+)(\d+)(?:,(\d+))?$")


def latex_var(name: str) -> str:
    """``x1`` -> ``x_1`` and ``x1,2`` -> ``x_{1,2}``."""
    m = _NAME.match(name)
    if not m:
        return name
    stem, idx, level = m.groups()
    if level:
        return f"{stem}_{{{idx},{level}}}"
    return f"{stem}_{idx}" if len(idx) == 1 else f"{stem}_{{{idx}}}"


def format_polarized(result: PolarizationResult, exps: Exps) -> str:
    """Write a polarized monomial variable by variable: x_{i,2} ... x_{i,c} then x_i."""
    ctx = result.ideal.context
    n = result.base_context.n
    by_var: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for name, (i, level) in result.origin_map.items():
        by_var[i].append((level, ctx.index(name)))
    parts = []
    for i in range(n):
        for level, pos in sorted(by_var[i]):
            if exps[pos]:
                parts.append(latex_var(ctx.names[pos]))
        if exps[i]:
            parts.append(latex_var(ctx.names[i]))
    return "".join(parts) if parts else "1"


# --------------------------------------------------------------------------
# lowering the top degree at a variable


@dataclasses.dataclass(frozen=True)
class LoweringData:
    var: int
    q: int
    p: int | None          # None when every generator with x_var sits at degree q
    B: tuple[Monomial, ...]
    A: tuple[Monomial, ...]
    L: MonomialIdeal

    @property
    def clause(self) -> str:
        """Which lowering clause applies: 'a', 'b' or 'c'."""
        if self.p is None:
            return "b"
        if self.p >= 1 and self.q - self.p >= 2:
            return "a"
        if self.q - self.p == 1:
            return "b"
        return "c"

    @property
    def depth_relation(self) -> str:
        return {"a": "depth(R/L) = depth(R/I)",
                "b": "depth(R/L) >= depth(R/I)",
                "c": "depth(R/I) = depth after collapsing x^q to x"}[self.clause]


def lower_top_degree(I: MonomialIdeal, var: int | str) -> LoweringData:
    ctx = I.context
    i = ctx.index(var) if isinstance(var, str) else var
    if not any(e[i] for e in I.exps):
        raise PreconditionError(f"variable {ctx.names[i]} does not occur in G(I)")
    q = max(e[i] for e in I.exps)
    B = [e for e in I.exps if e[i] == q]
    A = [e for e in I.exps if e[i] < q]
    p = max((e[i] for e in A), default=None)
    lowered = [e[:i] + (e[i] - 1,) + e[i + 1:] for e in B]
    L = MonomialIdeal._canonical(ctx, minimal_exps(lowered + A))
    return LoweringData(i, q, p,
                        tuple(Monomial(ctx, e) for e in B),
                        tuple(Monomial(ctx, e) for e in A), L)


def collapse_top_power(I: MonomialIdeal, var: int | str) -> MonomialIdeal:
    """Replace x^q by x in every generator, when x occurs only at degrees 0 and q."""
    ctx = I.context
    i = ctx.index(var) if isinstance(var, str) else var
    degs = {e[i] for e in I.exps} - {0}
    if len(degs) != 1 or next(iter(degs)) < 2:
        raise PreconditionError(
            f"collapse needs {ctx.names[i]} at a single degree q >= 2 in G(I), found "
            f"{sorted(degs)}; use lower_top_degree instead")
    return MonomialIdeal._canonical(
        ctx, minimal_exps(e[:i] + (min(e[i], 1),) + e[i + 1:] for e in I.exps))


def radical_chain(I: MonomialIdeal) -> list[tuple[int, str, MonomialIdeal]]:
    """Lower every top degree step by step until the ideal is squarefree.

    Returns the list of (variable, clause, ideal after the step); the last
    ideal equals rad(I).
    """
    steps = []
    current = I
    for i in range(I.context.n):
        while any(e[i] > 1 for e in current.exps):
            data = lower_top_degree(current, i)
            current = data.L
            steps.append((i, data.clause, current))
    assert current == radical(I)
    return steps


def stretch_variable(I: MonomialIdeal, var: int | str, d: int) -> MonomialIdeal:
    """Apply x_var -> x_var^d to every generator."""
    if d < 1:
        raise PreconditionError("stretch factor must be >= 1")
    ctx = I.context
    i = ctx.index(var) if isinstance(var, str) else var
    return MonomialIdeal._canonical(
        ctx, minimal_exps(e[:i] + (e[i] * d,) + e[i + 1:] for e in I.exps))


# --------------------------------------------------------------------------
# vertex-weighted digraphs


@dataclasses.dataclass(frozen=True)
class WeightedDigraph:
    context: VarContext
    arcs: tuple[tuple[int, int], ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        arcs = tuple(sorted({(int(a), int(b)) for a, b in self.arcs}))
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "weights", weights)
        if len(weights) != self.context.n:
            raise PreconditionError("one weight per vertex is required")
        if any(w < 1 for w in weights):
            raise PreconditionError("vertex weights must be >= 1")
        for a, b in arcs:
            if a == b:
                raise PreconditionError("digraph arcs may not be loops")
            if not (0 <= a < self.context.n and 0 <= b < self.context.n):
                raise PreconditionError("arc endpoint out of range")

    @classmethod
    def from_names(cls, context: VarContext, arcs, weights: Mapping[str, int] | None = None):
        w = [1] * context.n
        for name, value in (weights or {}).items():
            w[context.index(name)] = value
        return cls(context, tuple((context.index(a), context.index(b)) for a, b in arcs), tuple(w))


def weighted_digraph_ideal(D: WeightedDigraph) -> MonomialIdeal:
    """I(D) = (x_i x_j^{d_j} : (x_i, x_j) an arc)."""
    vecs = []
    for a, b in D.arcs:
        e = [0] * D.context.n
        e[a] += 1
        e[b] += D.weights[b]
        vecs.append(tuple(e))
    if not vecs:
        return MonomialIdeal.zero(D.context)
    return MonomialIdeal(D.context, vecs)


def weight_reduce(D: WeightedDigraph) -> WeightedDigraph:
    """Every weight >= 2 becomes exactly 2."""
    return WeightedDigraph(D.context, D.arcs, tuple(min(w, 2) for w in D.weights))
