"""Homological invariants of monomial quotients R/I.

Multigraded Betti numbers come from upper Koszul simplicial complexes:
for a in the lcm lattice of G(I),

    K^a(I) = {squarefree sigma : x^(a - sigma) in I},
    beta_{i,a}(R/I) = dim H~_{i-2}(K^a(I); K)   for i >= 1.

Faces are stored as bitmasks over vertex positions throughout.
"""
from __future__ import annotations

import dataclasses
import itertools
from collections import defaultdict
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .config import Caps, resolve
from .errors import PreconditionError, ResourceError
from .ideals import (
    Exps,
    Monomial,
    MonomialIdeal,
    VarContext,
    _grlex,
    _lcm,
    _mask,
    alexander_dual,
    bits,
    indices,
    krull_dim,
    minimal_exps,
    minimal_transversals,
    popcount,
)
from .linalg import QQ, FieldSpec, rank
from .polarization import polarize_full


def maximal_sets(sets: Iterable[int]) -> list[int]:
    keep: list[int] = []
    for s in sorted(set(sets), key=lambda m: (-popcount(m), m)):
        if not any(s & k == s for k in keep):
            keep.append(s)
    return keep


# --------------------------------------------------------------------------
# simplicial complexes


@dataclasses.dataclass(frozen=True)
class SimplicialComplex:
    """Vertex labels plus an antichain of facets (bitmasks over vertex positions).

    No facets at all is the void complex; the single facet 0 is the
    irrelevant complex {emptyset}.
    """

    vertices: tuple
    facets: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "facets", frozenset(maximal_sets(self.facets)))
        if len(set(self.vertices)) != len(self.vertices):
            raise PreconditionError("duplicate vertex labels")
        full = (1 << len(self.vertices)) - 1
        if any(f & ~full for f in self.facets):
            raise PreconditionError("facet uses an unknown vertex")

    @classmethod
    def from_facets(cls, vertices: Sequence, facets: Iterable[Iterable]) -> "SimplicialComplex":
        pos = {v: i for i, v in enumerate(vertices)}
        masks = []
        for F in facets:
            m = 0
            for v in F:
                if v not in pos:
                    raise PreconditionError(f"facet vertex {v!r} is not a vertex of the complex")
                m |= 1 << pos[v]
            masks.append(m)
        return cls(tuple(vertices), frozenset(masks))

    @classmethod
    def void(cls, vertices: Sequence = ()) -> "SimplicialComplex":
        return cls(tuple(vertices), frozenset())

    @classmethod
    def irrelevant(cls, vertices: Sequence = ()) -> "SimplicialComplex":
        return cls(tuple(vertices), frozenset({0}))

    def is_void(self) -> bool:
        return not self.facets

    def is_irrelevant(self) -> bool:
        return self.facets == frozenset({0})

    @property
    def dim(self) -> int | None:
        """max facet size - 1; None for the void complex."""
        if not self.facets:
            return None
        return max(popcount(f) for f in self.facets) - 1

    @cached_property
    def faces(self) -> frozenset:
        return frozenset(_all_faces(self.facets, Caps().faces))

    def contains(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def skeleton(self, i: int) -> "SimplicialComplex":
        out = set()
        for F in self.facets:
            if popcount(F) <= i + 1:
                out.add(F)
            elif i >= -1:
                for combo in itertools.combinations(bits(F), i + 1):
                    out.add(sum(combo))
        return SimplicialComplex(self.vertices, frozenset(out))

    def link(self, face: int) -> "SimplicialComplex":
        return SimplicialComplex(self.vertices,
                                 frozenset(F ^ face for F in self.facets if F & face == face))

    def star(self, face: int) -> "SimplicialComplex":
        return SimplicialComplex(self.vertices, frozenset(F for F in self.facets if F & face == face))

    def labels(self, face: int) -> tuple:
        return tuple(self.vertices[i] for i in indices(face))

    def facet_labels(self) -> list[tuple]:
        return sorted((self.labels(f) for f in self.facets), key=lambda t: (len(t), t))

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) <= 1


def _all_faces(facets: Iterable[int], cap: int) -> set[int]:
    seen: set[int] = set()
    for F in facets:
        if F in seen:
            continue
        sub = F
        while True:
            seen.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & F
        if len(seen) > cap:
            raise ResourceError("faces of a simplicial complex", cap, len(seen))
    return seen


def _homology_of_faces(faces: Iterable[int], field: FieldSpec) -> dict[int, int]:
    by_dim: dict[int, list[int]] = defaultdict(list)
    for f in faces:
        by_dim[popcount(f) - 1].append(f)
    if not by_dim:
        return {}
    index = {d: {f: j for j, f in enumerate(sorted(fs))} for d, fs in by_dim.items()}
    ranks: dict[int, int] = {}
    for d, fs in by_dim.items():
        if d < 0:
            continue
        if d == 0:
            ranks[0] = 1 if -1 in by_dim else 0
            continue
        lower = index[d - 1]
        rows = []
        for f in fs:
            row = {}
            sign = 1
            for b in bits(f):
                row[lower[f ^ b]] = sign
                sign = -sign
            rows.append(row)
        ranks[d] = rank(rows, field)
    out = {}
    for d, fs in by_dim.items():
        h = len(fs) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


def _nerve(facets: Sequence[int]) -> list[int]:
    faces = [0]
    stack = [(0, -1, -1)]
    m = len(facets)
    while stack:
        mask, last, inter = stack.pop()
        for j in range(last + 1, m):
            meet = inter & facets[j]
            if meet:
                faces.append(mask | (1 << j))
                stack.append((mask | (1 << j), j, meet))
    return faces


def homology_from_facets(facets: Iterable[int], field: FieldSpec = QQ,
                         cap: int | None = None) -> dict[int, int]:
    """Nonzero reduced Betti numbers {dim: rank} of the complex with these facets.

    Cones are recognized without elimination; a complex with few large
    facets is replaced by its nerve, which has the same homology.
    """
    cap = cap or Caps().faces
    facets = maximal_sets(facets)
    if not facets:
        return {}
    if facets == [0]:
        return {-1: 1}
    meet = -1
    for F in facets:
        meet &= F
    if meet:
        return {}
    direct = sum(1 << popcount(F) for F in facets)
    m = len(facets)
    if m < 24 and (1 << m) < direct:
        faces = _nerve(facets)
    else:
        faces = _all_faces(facets, cap)
    return _homology_of_faces(faces, field)


def reduced_homology_dims(delta: SimplicialComplex, field: FieldSpec = QQ,
                          caps: Caps | None = None) -> list[int]:
    """[dim H~_{-1}, dim H~_0, ..., dim H~_{dim}]; the void complex gives []."""
    if delta.is_void():
        return []
    h = homology_from_facets(delta.facets, field, resolve(caps).faces)
    return [h.get(d, 0) for d in range(-1, delta.dim + 1)]


def is_cohen_macaulay_complex(delta: SimplicialComplex, field: FieldSpec = QQ,
                              caps: Caps | None = None) -> bool:
    """Reisner: H~_j(lk sigma) = 0 for all faces sigma and j < dim lk sigma."""
    if delta.is_void():
        return False
    if not delta.is_pure():
        return False
    cap = resolve(caps).faces
    for sigma in _all_faces(delta.facets, cap):
        lk = [F ^ sigma for F in delta.facets if F & sigma == sigma]
        top = max(popcount(F) for F in lk) - 1
        h = homology_from_facets(lk, field, cap)
        if any(d < top for d in h):
            return False
    return True


# --------------------------------------------------------------------------
# Stanley-Reisner correspondence


def stanley_reisner(I: MonomialIdeal) -> SimplicialComplex:
    """Complex whose minimal non-faces are the supports of G(I)."""
    if not I.is_squarefree():
        raise PreconditionError("the Stanley-Reisner complex needs a squarefree ideal")
    if I.is_unit():
        raise PreconditionError("the unit ideal has no Stanley-Reisner complex")
    full = (1 << I.context.n) - 1
    if I.is_zero():
        return SimplicialComplex(I.context.names, frozenset({full}))
    covers = minimal_transversals(I.supports())
    return SimplicialComplex(I.context.names, frozenset(full ^ c for c in covers))


def stanley_reisner_ideal(delta: SimplicialComplex, context: VarContext | None = None) -> MonomialIdeal:
    ctx = context or VarContext(tuple(str(v) for v in delta.vertices))
    if ctx.n != len(delta.vertices):
        raise PreconditionError("context size differs from the number of vertices")
    full = (1 << ctx.n) - 1
    nonfaces = minimal_transversals(full ^ F for F in delta.facets)
    return MonomialIdeal.from_sets(ctx, (indices(m) for m in nonfaces))


def skeleton_depth(I: MonomialIdeal, field: FieldSpec = QQ, caps: Caps | None = None) -> int:
    """depth R/I = 1 + max{i : the i-skeleton of the Stanley-Reisner complex is CM}."""
    if I.is_zero():
        raise PreconditionError("skeleton_depth needs a nonzero ideal")
    delta = stanley_reisner(I)
    for i in range(delta.dim, -2, -1):
        if is_cohen_macaulay_complex(delta.skeleton(i), field, caps):
            return i + 1
    raise AssertionError("the (-1)-skeleton is always Cohen-Macaulay")


# --------------------------------------------------------------------------
# lcm lattice and Betti tables


def _encoding(top: Sequence[int]):
    weights = []
    w = 1
    for t in top:
        weights.append(w)
        w *= t + 1
    return (np.array(weights, dtype=np.int64), np.array(top, dtype=np.int64) + 1) if w < (1 << 62) else None


def lcm_lattice(I: MonomialIdeal, caps: Caps | None = None) -> list[Exps]:
    """All lcms of nonempty subsets of G(I), in grlex order."""
    if I.is_zero():
        raise PreconditionError("the zero ideal has an empty lcm lattice")
    cap = resolve(caps).lattice
    gens = list(I.exps)
    if len(gens) > cap:
        raise ResourceError("lcm lattice", cap, len(gens))
    enc = _encoding(I.top_exponents())
    if enc is None or len(gens) < 8:
        lattice = _lattice_python(gens, cap)
    else:
        lattice = _lattice_numpy(gens, enc, cap)
    return sorted(lattice, key=_grlex)


def _lattice_python(gens, cap):
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                c = _lcm(a, g)
                if c not in seen:
                    new.add(c)
        seen |= new
        if len(seen) > cap:
            raise ResourceError("lcm lattice", cap, len(seen))
        frontier = list(new)
    return seen


def _lattice_numpy(gens, enc, cap):
    weights, base = enc
    G = np.array(gens, dtype=np.int64)
    keys = np.unique(G @ weights)
    frontier = G
    while len(frontier):
        step = max(1, 2_000_000 // G.size)
        found = []
        for s in range(0, len(frontier), step):
            block = np.maximum(frontier[s:s + step, None, :], G[None, :, :])
            found.append(np.unique(block.reshape(-1, G.shape[1]) @ weights))
        cand = np.unique(np.concatenate(found))
        new = np.setdiff1d(cand, keys, assume_unique=True)
        keys = np.union1d(keys, new)
        if len(keys) > cap:
            raise ResourceError("lcm lattice", cap, int(len(keys)))
        frontier = (new[:, None] // weights[None, :]) % base[None, :]
    vecs = (keys[:, None] // weights[None, :]) % base[None, :]
    return set(map(tuple, vecs.tolist()))


def upper_koszul_facets(gens: Sequence[Exps], a: Exps) -> list[int]:
    """Facets of K^a: the sets {j : a_j > g_j} for generators g dividing x^a."""
    return maximal_sets(_mask(tuple(1 if x > y else 0 for x, y in zip(a, g)))
                        for g in gens if all(y <= x for x, y in zip(a, g)))


@dataclasses.dataclass(frozen=True)
class BettiTable:
    """Multigraded Betti numbers of R/I, keyed by (i, a); beta_{0,0} = 1."""

    field: FieldSpec
    context: VarContext
    entries: dict

    @property
    def n(self) -> int:
        return self.context.n

    @property
    def pd(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def depth(self) -> int:
        return self.n - self.pd

    @property
    def reg(self) -> int:
        return max(sum(a) - i for i, a in self.entries)

    def totals(self) -> list[int]:
        out = [0] * (self.pd + 1)
        for (i, _a), v in self.entries.items():
            out[i] += v
        return out

    def graded(self) -> dict[tuple[int, int], int]:
        """Coarse table {(i, j): beta_{i,j}} with j the total degree."""
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (i, a), v in self.entries.items():
            out[(i, sum(a))] += v
        return dict(out)

    def rows(self) -> list[tuple[int, Exps, int]]:
        return sorted(((i, a, v) for (i, a), v in self.entries.items()),
                      key=lambda t: (t[0], sum(t[1]), t[1]))

    def format(self) -> str:
        """Macaulay2-style table: row r, column i holds beta_{i, i+r}."""
        g = self.graded()
        cols = range(self.pd + 1)
        lines = ["       " + " ".join(f"{i:>5}" for i in cols),
                 "total: " + " ".join(f"{t:>5}" for t in self.totals())]
        for r in range(0, self.reg + 1):
            cells = [g.get((i, i + r), 0) for i in cols]
            lines.append(f"{r:>5}: " + " ".join(f"{(c if c else '.'):>5}" for c in cells))
        return "\n".join(lines)


def _require_proper_nonzero(I: MonomialIdeal, what: str):
    if I.is_zero():
        raise PreconditionError(f"{what} needs a nonzero ideal")
    if I.is_unit():
        raise PreconditionError(f"{what} needs a proper ideal")


def betti_table(I: MonomialIdeal, field: FieldSpec = QQ, caps: Caps | None = None) -> BettiTable:
    _require_proper_nonzero(I, "betti_table")
    caps = resolve(caps)
    lattice = lcm_lattice(I, caps)
    n = I.context.n
    entries = {(0, (0,) * n): 1}
    G = np.array(I.exps, dtype=object if n > 62 else np.int64)
    use_np = n <= 62 and max(I.top_exponents()) < (1 << 62)
    if use_np:
        G = G.astype(np.int64)
        pow2 = np.array([1 << j for j in range(n)], dtype=np.int64)
    for a in lattice:
        if use_np:
            av = np.array(a, dtype=np.int64)
            below = G[(G <= av).all(axis=1)]
            masks = ((av[None, :] > below) @ pow2).tolist()
            facets = maximal_sets(masks)
        else:
            facets = upper_koszul_facets(I.exps, a)
        for d, v in homology_from_facets(facets, field, caps.faces).items():
            entries[(d + 2, a)] = v
    return BettiTable(field, I.context, entries)


# --------------------------------------------------------------------------
# summaries


@dataclasses.dataclass(frozen=True)
class HomologicalSummary:
    field: FieldSpec
    nvars: int
    depth: int
    pd: int
    reg: int
    dim: int
    is_cm: bool
    is_gorenstein: bool
    a_invariant: int | None
    route: str
    new_vars: int = 0

    @property
    def reg_ideal(self) -> int:
        """reg(I) = reg(R/I) + 1."""
        return self.reg + 1

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["field"] = self.field.characteristic
        d["reg_ideal"] = self.reg_ideal
        return d


def homological_summary(I: MonomialIdeal, field: FieldSpec = QQ, caps: Caps | None = None,
                        route: str = "direct") -> HomologicalSummary:
    """depth, pd, reg, CM and Gorenstein status of R/I.

    ``route="polarized"`` computes everything on the full polarization and
    shifts depth by the number of new variables; ``route="direct"`` runs the
    upper Koszul computation on I itself.  Both give identical numbers.
    """
    _require_proper_nonzero(I, "homological_summary")
    if route not in ("polarized", "direct"):
        raise PreconditionError(f"unknown route {route!r}")
    extra = 0
    target = I
    if route == "polarized" and not I.is_squarefree():
        pol = polarize_full(I)
        target = pol.ideal
        extra = len(pol.new_vars)
    table = betti_table(target, field, caps)
    depth = table.depth - extra
    pd = table.pd
    dim = krull_dim(I)
    is_cm = depth == dim
    gor = is_cm and table.totals()[-1] == 1
    return HomologicalSummary(field, I.context.n, depth, pd, table.reg, dim, is_cm, gor,
                              table.reg - depth if is_cm else None, route, extra)


def terai_check(I: MonomialIdeal, field: FieldSpec = QQ, caps: Caps | None = None):
    """Compare reg(R/I) + 1 with pd(R/I^vee); returns (holds, lhs, rhs)."""
    _require_proper_nonzero(I, "terai_check")
    if not I.is_squarefree():
        raise PreconditionError("terai_check needs a squarefree ideal")
    lhs = betti_table(I, field, caps).reg + 1
    rhs = betti_table(alexander_dual(I, caps), field, caps).pd
    return lhs == rhs, lhs, rhs


# --------------------------------------------------------------------------
# depth-zero witnesses


@dataclasses.dataclass(frozen=True)
class WitnessResult:
    """status is 'found', 'none' (no witness exists) or 'inconclusive'."""

    status: str
    witness: Monomial | None = None
    note: str = ""

    @property
    def depth_zero(self) -> bool | None:
        return {"found": True, "none": False}.get(self.status)


def _members(gens: np.ndarray, cands: np.ndarray) -> np.ndarray:
    out = np.zeros(len(cands), dtype=bool)
    step = max(1, 4_000_000 // max(1, gens.size))
    for s in range(0, len(cands), step):
        block = cands[s:s + step]
        out[s:s + step] = (gens[None, :, :] <= block[:, None, :]).all(axis=2).any(axis=1)
    return out


def _bounded_lcms(P, Q, bound, small):
    if not small or len(P) * len(Q) < 4096:
        out = set()
        for s in P:
            for t in Q:
                c = _lcm(s, t)
                if all(x <= b for x, b in zip(c, bound)):
                    out.add(c)
        return out
    A = np.array(P, dtype=np.int64)
    B = np.array(Q, dtype=np.int64)
    top = np.array(bound, dtype=np.int64)
    found = []
    step = max(1, 2_000_000 // B.size)
    for s in range(0, len(A), step):
        block = np.maximum(A[s:s + step, None, :], B[None, :, :]).reshape(-1, A.shape[1])
        block = block[(block <= top).all(axis=1)]
        if len(block):
            found.append(np.unique(block, axis=0))
    if not found:
        return set()
    return set(map(tuple, np.unique(np.concatenate(found), axis=0).tolist()))


def _is_witness(I: MonomialIdeal, w: Exps) -> bool:
    gens = I.exps
    if any(all(g <= x for g, x in zip(gen, w)) for gen in gens):
        return False
    for j in range(len(w)):
        up = w[:j] + (w[j] + 1,) + w[j + 1:]
        if not any(all(g <= x for g, x in zip(gen, up)) for gen in gens):
            return False
    return True


def depth_zero_witness(I: MonomialIdeal, caps: Caps | None = None) -> WitnessResult:
    """Look for w not in I with x_j w in I for every variable (so depth R/I = 0).

    The socle of R/I is generated by the minimal generators of
    (I : x_1) cap ... cap (I : x_n) lying outside I.  Only generators outside
    I take part in the intersections, which keeps them small.
    """
    _require_proper_nonzero(I, "depth_zero_witness")
    caps = resolve(caps)
    ctx = I.context
    top = I.top_exponents()
    if any(t == 0 for t in top):
        return WitnessResult("none", note="some variable is a nonzerodivisor on R/I")
    guess = tuple(t - 1 for t in top)
    if _is_witness(I, guess):
        return WitnessResult("found", Monomial(ctx, guess), "lcm(G(I)) / x_1...x_n")
    small = max(top) < (1 << 40)
    G = np.array(I.exps, dtype=np.int64) if small else None

    def outside(vecs):
        vecs = list(vecs)
        if not vecs:
            return []
        if small and len(vecs) > 32:
            mem = _members(G, np.array(vecs, dtype=np.int64))
            return [v for v, m in zip(vecs, mem.tolist()) if not m]
        return [v for v in vecs if not any(all(g <= x for g, x in zip(gen, v)) for gen in I.exps)]

    # a socle monomial w has w_j < top_j for every j
    bound = guess
    partial = None
    for j in range(ctx.n):
        colon_j = minimal_exps(e[:j] + (max(e[j] - 1, 0),) + e[j + 1:] for e in I.exps)
        extra = outside(c for c in colon_j if all(x <= b for x, b in zip(c, bound)))
        if partial is None:
            partial = extra
        else:
            found = _bounded_lcms(partial, extra, bound, small)
            if len(found) > caps.monomials:
                return WitnessResult("inconclusive", note=f"socle search exceeded cap {caps.monomials}")
            partial = outside(minimal_exps(found))
        if not partial:
            return WitnessResult("none", note="the socle of R/I is zero")
    w = min(partial, key=_grlex)
    return WitnessResult("found", Monomial(ctx, w), "socle generator")
