"""Clutters, their ideals and the polyhedral / max-flow min-cut checks."""
from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable

from .config import Caps, resolve
from .errors import PreconditionError, ResourceError
from .homology import depth_zero_witness, homological_summary
from .ideals import (
    Monomial,
    MonomialIdeal,
    VarContext,
    _grlex,
    alexander_dual,
    colon,
    ideal_sum,
    indices,
    minimal_transversals,
    popcount,
    power,
    symbolic_power,
)
from .linalg import QQ, FieldSpec, solve_square


def _lex(mask: int):
    return tuple(indices(mask))


def _to_mask(context: VarContext, vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (context.index(v) if isinstance(v, str) else int(v))
    return m


@dataclasses.dataclass(frozen=True)
class Clutter:
    """An antichain of nonempty vertex sets, stored as bitmasks in lex order."""

    context: VarContext
    edges: tuple[int, ...]

    def __post_init__(self):
        edges = tuple(sorted(set(self.edges), key=_lex))
        object.__setattr__(self, "edges", edges)
        full = (1 << self.context.n) - 1
        for e in edges:
            if e == 0:
                raise PreconditionError("clutter edges must be nonempty")
            if e & ~full:
                raise PreconditionError("clutter edge uses a vertex outside the context")
        for a, b in itertools.combinations(edges, 2):
            if a & b in (a, b):
                raise PreconditionError(
                    f"edge {self._names(a)} and edge {self._names(b)} are nested; clutter edges form an antichain")

    @classmethod
    def from_sets(cls, context: VarContext, sets: Iterable[Iterable]) -> "Clutter":
        return cls(context, tuple(_to_mask(context, s) for s in sets))

    def _names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.context.names[i] for i in indices(mask))

    def edge_names(self) -> list[tuple[str, ...]]:
        return [self._names(e) for e in self.edges]

    def cover_names(self) -> list[tuple[str, ...]]:
        return [self._names(c) for c in self.covers]

    @cached_property
    def covers(self) -> tuple[int, ...]:
        """Minimal vertex covers, computed once."""
        return tuple(sorted(minimal_transversals(self.edges), key=_lex))

    @property
    def vertex_mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= e
        return m


def edge_ideal(C: Clutter) -> MonomialIdeal:
    if not C.edges:
        return MonomialIdeal.zero(C.context)
    return MonomialIdeal.from_sets(C.context, (indices(e) for e in C.edges))


def cover_dual(C: Clutter) -> Clutter:
    if not C.edges:
        raise PreconditionError("the clutter without edges has no dual clutter")
    return Clutter(C.context, C.covers)


def deletion(C: Clutter, vertices) -> Clutter:
    """Drop every edge meeting ``vertices``; those vertices become isolated."""
    V = vertices if isinstance(vertices, int) else _to_mask(C.context, vertices)
    return Clutter(C.context, tuple(e for e in C.edges if not e & V))


@dataclasses.dataclass(frozen=True)
class DualityCheck:
    part_i: bool
    part_ii: bool
    part_iii: bool


def duality_formulas_check(C: Clutter, f: Monomial) -> DualityCheck:
    """Check the three colon/duality identities for a squarefree monomial f.

    (i)   (I(C)^v : f)^v = I(C minus supp f)
    (ii)  (I(C) : f)^v = I(C^v minus supp f)
    (iii) (I(C), x_i)^v = x_i I(C minus x_i)^v, for each x_i dividing f
    """
    if f.context != C.context:
        raise PreconditionError("f and the clutter live in different rings")
    if not f.is_squarefree():
        raise PreconditionError("f must be squarefree")
    ctx = C.context
    I = edge_ideal(C)
    S = _mask(f)
    dual = alexander_dual(I)
    i = alexander_dual(colon(dual, f)) == edge_ideal(deletion(C, S))
    ii = alexander_dual(colon(I, f)) == edge_ideal(deletion(cover_dual(C), S))
    iii = True
    for v in indices(S):
        x = ctx.var(v)
        lhs = alexander_dual(ideal_sum(I, MonomialIdeal(ctx, [x.exps])))
        rest = alexander_dual(edge_ideal(deletion(C, 1 << v)))
        rhs = MonomialIdeal(ctx, [tuple(a + b for a, b in zip(g, x.exps)) for g in rest.exps]) \
            if not rest.is_zero() else rest
        iii = iii and lhs == rhs
    return DualityCheck(i, ii, iii)


def _mask(m: Monomial) -> int:
    return sum(1 << j for j, e in enumerate(m.exps) if e)


@dataclasses.dataclass(frozen=True)
class Classification:
    uniform: bool
    unmixed: bool
    very_well_covered: bool | None   # only defined when every edge has two vertices


def classify(C: Clutter) -> Classification:
    uniform = len({popcount(e) for e in C.edges}) <= 1
    unmixed = len({popcount(c) for c in C.covers}) <= 1
    vwc = None
    if C.edges and all(popcount(e) == 2 for e in C.edges):
        height = min(popcount(c) for c in C.covers)
        vwc = unmixed and C.vertex_mask == (1 << C.context.n) - 1 and C.context.n == 2 * height
    return Classification(uniform, unmixed, vwc)


# --------------------------------------------------------------------------
# set covering polyhedron


@dataclasses.dataclass(frozen=True)
class IncidenceMatrix:
    """n x r 0/1 matrix; column j is the characteristic vector of edge j."""

    n: int
    columns: tuple[int, ...]

    @classmethod
    def of(cls, C: Clutter) -> "IncidenceMatrix":
        return cls(C.context.n, C.edges)

    @property
    def r(self) -> int:
        return len(self.columns)

    def rows(self) -> list[list[int]]:
        return [[(c >> i) & 1 for c in self.columns] for i in range(self.n)]


@dataclasses.dataclass(frozen=True)
class ScpReport:
    vertices: tuple[tuple[Fraction, ...], ...]
    integral: bool
    fractional_witness: tuple[Fraction, ...] | None


def scp_vertices(A: IncidenceMatrix, caps: Caps | None = None) -> ScpReport:
    """Vertices of Q(A) = {x >= 0 : xA >= 1} by exact basis enumeration.

    A basis is a set Z of coordinates fixed at zero plus n - |Z| edge rows
    held at equality; the square system on the free coordinates is solved
    in rationals and kept when feasible.
    """
    n, r = A.n, A.r
    if n == 0:
        raise PreconditionError("Q(A) needs at least one variable")
    cap = resolve(caps).bases
    total = comb(n + r, n)
    if total > cap:
        raise ResourceError("set covering bases", cap, total)
    found = set()
    cols = A.columns
    for z in range(n + 1):
        for Z in itertools.combinations(range(n), z):
            zmask = sum(1 << i for i in Z)
            if any(c & ~zmask == 0 for c in cols):
                continue  # some edge lies inside Z: infeasible
            free = [i for i in range(n) if not zmask >> i & 1]
            for T in itertools.combinations(range(r), n - z):
                M = [[(cols[j] >> i) & 1 for i in free] for j in T]
                sol = solve_square(M, [1] * len(T))
                if sol is None or any(v < 0 for v in sol):
                    continue
                x = [Fraction(0)] * n
                for i, v in zip(free, sol):
                    x[i] = v
                if all(sum(x[i] for i in indices(c)) >= 1 for c in cols):
                    found.add(tuple(x))
    verts = tuple(sorted(found))
    witness = next((v for v in verts if any(c.denominator != 1 for c in v)), None)
    return ScpReport(verts, witness is None, witness)


# --------------------------------------------------------------------------
# max-flow min-cut and related identities


@dataclasses.dataclass(frozen=True)
class MfmcResult:
    """Semi-decision: ``holds_up_to_K`` is evidence, never a proof of MFMC."""

    K: int
    holds_up_to_K: bool
    first_failure_k: int | None = None
    witness: Monomial | None = None


def mfmc_bounded(C: Clutter, K: int, caps: Caps | None = None) -> MfmcResult:
    if K < 2:
        raise PreconditionError("mfmc_bounded needs K >= 2")
    I = edge_ideal(C)
    if I.is_zero():
        raise PreconditionError("mfmc_bounded needs a clutter with edges")
    for k in range(2, K + 1):
        ordinary = power(I, k, caps)
        symbolic = symbolic_power(I, k, caps)
        if ordinary != symbolic:
            extra = sorted((g for g in symbolic.exps if Monomial(I.context, g) not in ordinary), key=_grlex)
            return MfmcResult(K, False, k, Monomial(I.context, extra[0]))
    return MfmcResult(K, True)


def find_transversal_edge(C: Clutter) -> tuple[str, ...] | None:
    """First edge meeting every minimal cover in exactly one vertex."""
    for e in C.edges:
        if all(popcount(e & c) == 1 for c in C.covers):
            return C._names(e)
    return None


def find_transversal_cover(C: Clutter) -> tuple[str, ...] | None:
    """First minimal cover meeting every edge in exactly one vertex."""
    for c in C.covers:
        if all(popcount(e & c) == 1 for e in C.edges):
            return C._names(c)
    return None


def colon_power_identity(I: MonomialIdeal, e, K: int, caps: Caps | None = None) -> bool:
    """(I^(k+1) : x_e) == I^k for k = 1..K, with x_e a squarefree generator of I."""
    if K < 1:
        raise PreconditionError("K must be >= 1")
    if isinstance(e, Monomial):
        xe = e
    else:
        xe = Monomial(I.context, tuple((_to_mask(I.context, e) >> j) & 1 for j in range(I.context.n)))
    if xe.exps not in I.exps or not xe.is_squarefree():
        raise PreconditionError(f"{xe} is not a squarefree minimal generator (edge) of the ideal")
    return all(colon(power(I, k + 1, caps), xe) == power(I, k, caps) for k in range(1, K + 1))


# --------------------------------------------------------------------------
# depth / regularity along powers


@dataclasses.dataclass(frozen=True)
class SequenceReport:
    mode: str
    field: FieldSpec
    depths: tuple[int | None, ...]
    regs: tuple[int | None, ...]
    gaps: tuple[tuple[int, str], ...]

    @staticmethod
    def _known(seq):
        return [v for v in seq if v is not None]

    @property
    def depth_non_increasing(self) -> bool:
        d = self._known(self.depths)
        return all(a >= b for a, b in zip(d, d[1:]))

    @property
    def reg_non_decreasing(self) -> bool:
        r = self._known(self.regs)
        return all(a <= b for a, b in zip(r, r[1:]))

    def as_dict(self) -> dict:
        return {"mode": self.mode, "field": self.field.characteristic,
                "depths": list(self.depths), "regs": list(self.regs),
                "gaps": [list(g) for g in self.gaps],
                "depth_non_increasing": self.depth_non_increasing,
                "reg_non_decreasing": self.reg_non_decreasing}


def monotone_sequences(I: MonomialIdeal, K: int, mode: str = "ordinary", field: FieldSpec = QQ,
                       caps: Caps | None = None) -> SequenceReport:
    """depth and reg of R/I^k (or R/I^(k)) for k = 1..K.

    A power whose Betti table runs past a cap leaves a gap (None); its depth
    is still filled in when a socle witness shows it is zero.  Monotonicity
    flags are taken over the known values.
    """
    if K < 2:
        raise PreconditionError("monotone_sequences needs K >= 2")
    if mode not in ("ordinary", "symbolic"):
        raise PreconditionError(f"mode must be 'ordinary' or 'symbolic', not {mode!r}")
    caps = resolve(caps)
    depths, regs, gaps = [], [], []
    for k in range(1, K + 1):
        try:
            J = power(I, k, caps) if mode == "ordinary" else symbolic_power(I, k, caps)
        except ResourceError as exc:
            depths.append(None)
            regs.append(None)
            gaps.append((k, str(exc)))
            continue
        try:
            s = homological_summary(J, field, caps)
            depths.append(s.depth)
            regs.append(s.reg)
        except ResourceError as exc:
            w = depth_zero_witness(J, caps)
            depths.append(0 if w.status == "found" else None)
            regs.append(None)
            gaps.append((k, str(exc)))
    return SequenceReport(mode, field, tuple(depths), tuple(regs), tuple(gaps))
