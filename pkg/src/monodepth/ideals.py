"""Exact monomial and monomial-ideal arithmetic.

Exponent vectors are plain tuples of Python ints, so exponents never
overflow.  Every ideal is stored through its minimal generating set G(I),
sorted in graded lexicographic order; two ideals over the same context are
equal exactly when their generator tuples are equal.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .config import Caps, resolve
from .errors import ContextMismatchError, PreconditionError, ResourceError

Exps = tuple[int, ...]

_NUMPY_LIMIT = 1 << 40
_NUMPY_MIN = 48


# --------------------------------------------------------------------------
# contexts and monomials


@dataclasses.dataclass(frozen=True)
class VarContext:
    """Ordered list of distinct variable names; fixes the ring K[x_1..x_n]."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(str(s) for s in self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise PreconditionError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            dup = sorted({s for s in names if names.count(s) > 1})
            raise PreconditionError(f"duplicate variable names: {', '.join(dup)}")

    @classmethod
    def of(cls, *names: str) -> "VarContext":
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(names))

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "VarContext":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise PreconditionError(f"unknown variable {name!r}") from None

    def extend(self, names: Sequence[str]) -> "VarContext":
        return VarContext(self.names + tuple(names))

    def one(self) -> "Monomial":
        return Monomial(self, (0,) * self.n)

    def var(self, which: int | str, power: int = 1) -> "Monomial":
        i = self.index(which) if isinstance(which, str) else which
        e = [0] * self.n
        e[i] = power
        return Monomial(self, tuple(e))

    def monomial(self, exps: Iterable[int]) -> "Monomial":
        return Monomial(self, tuple(exps))

    def __len__(self):
        return self.n


def _check_same(*contexts: VarContext) -> VarContext:
    first = contexts[0]
    for c in contexts[1:]:
        if c != first:
            raise ContextMismatchError("objects live over different variable contexts")
    return first


@dataclasses.dataclass(frozen=True)
class Monomial:
    context: VarContext
    exps: Exps

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exps)
        if len(exps) != self.context.n:
            raise PreconditionError(
                f"exponent vector has length {len(exps)}, context has {self.context.n} variables")
        if any(e < 0 for e in exps):
            raise PreconditionError("exponents must be nonnegative")
        object.__setattr__(self, "exps", exps)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def deg(self, i: int | str) -> int:
        if isinstance(i, str):
            i = self.context.index(i)
        return self.exps[i]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exps) if e)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def divides(self, other: "Monomial") -> bool:
        _check_same(self.context, other.context)
        return _divides(self.exps, other.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_same(self.context, other.context)
        return Monomial(self.context, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        _check_same(self.context, other.context)
        if not _divides(other.exps, self.exps):
            raise PreconditionError(f"{other} does not divide {self}")
        return Monomial(self.context, tuple(a - b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(self.context, tuple(k * e for e in self.exps))

    def lcm(self, other: "Monomial") -> "Monomial":
        _check_same(self.context, other.context)
        return Monomial(self.context, _lcm(self.exps, other.exps))

    def gcd(self, other: "Monomial") -> "Monomial":
        _check_same(self.context, other.context)
        return Monomial(self.context, tuple(map(min, self.exps, other.exps)))

    def __lt__(self, other: "Monomial") -> bool:
        return _grlex(self.exps) < _grlex(other.exps)

    def __str__(self):
        return format_exps(self.context, self.exps)

    def __repr__(self):
        return f"Monomial({self})"


def format_exps(context: VarContext, exps: Exps) -> str:
    parts = []
    for name, e in zip(context.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# --------------------------------------------------------------------------
# raw exponent-vector helpers


def _grlex(e: Exps):
    # degree first, then lex with x1 > x2 > ...: x1^2, x1*x2, x2^2
    return (sum(e), tuple(-x for x in e))


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _mask(e: Exps) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


def _small(vecs) -> bool:
    return all(max(v, default=0) < _NUMPY_LIMIT for v in vecs)


def minimal_exps(vecs: Iterable[Exps]) -> tuple[Exps, ...]:
    """Divisibility-minimal elements of ``vecs``, deduplicated, grlex sorted."""
    uniq = sorted(set(vecs), key=_grlex)
    if len(uniq) <= 1:
        return tuple(uniq)
    if len(uniq) >= _NUMPY_MIN and _small(uniq):
        return _minimal_numpy(uniq)
    keep: list[Exps] = []
    masks: list[int] = []
    for v in uniq:
        mv = _mask(v)
        for k, mk in zip(keep, masks):
            if mk & mv == mk and _divides(k, v):
                break
        else:
            keep.append(v)
            masks.append(mv)
    return tuple(keep)


def _minimal_numpy(uniq: list[Exps]) -> tuple[Exps, ...]:
    arr = np.array(uniq, dtype=np.int64)
    n = arr.shape[1]
    deg = arr.sum(axis=1)
    cuts = np.flatnonzero(np.diff(deg)) + 1
    bounds = [0, *cuts.tolist(), len(uniq)]
    kept = arr[:0]
    for lo, hi in zip(bounds, bounds[1:]):
        block = arr[lo:hi]
        if kept.shape[0]:
            ok = np.ones(len(block), dtype=bool)
            step = max(1, 4_000_000 // (kept.shape[0] * max(n, 1)))
            for s in range(0, len(block), step):
                sub = block[s:s + step]
                hit = (kept[None, :, :] <= sub[:, None, :]).all(axis=2).any(axis=1)
                ok[s:s + step] = ~hit
            block = block[ok]
        kept = np.concatenate([kept, block]) if kept.shape[0] else block
    return tuple(map(tuple, kept.tolist()))


def _pairwise(A: Sequence[Exps], B: Sequence[Exps], op: str, cap: int, what: str):
    count = len(A) * len(B)
    if count > cap:
        raise ResourceError(what, cap, count)
    if count >= 4096 and _small(A) and _small(B):
        a = np.array(A, dtype=np.int64)
        b = np.array(B, dtype=np.int64)
        out = []
        step = max(1, 2_000_000 // max(1, b.size))
        for s in range(0, len(a), step):
            blk = a[s:s + step, None, :]
            c = np.maximum(blk, b[None]) if op == "lcm" else blk + b[None]
            out.append(np.unique(c.reshape(-1, a.shape[1]), axis=0))
        allc = np.unique(np.concatenate(out), axis=0)
        return map(tuple, allc.tolist())
    if op == "lcm":
        return (_lcm(x, y) for x in A for y in B)
    return (tuple(p + q for p, q in zip(x, y)) for x in A for y in B)


def popcount(m: int) -> int:
    return bin(m).count("1")


def bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low)
        m ^= low
    return out


def indices(m: int) -> list[int]:
    return [b.bit_length() - 1 for b in bits(m)]


def minimal_sets(sets: Iterable[int]) -> list[int]:
    """Inclusion-minimal bitmasks, sorted by (size, value)."""
    keep: list[int] = []
    for s in sorted(set(sets), key=lambda m: (popcount(m), m)):
        if not any(k & s == k for k in keep):
            keep.append(s)
    return keep


def minimal_transversals(edges: Iterable[int], cap: int | None = None) -> list[int]:
    """Minimal hitting sets of a hypergraph given by bitmask edges.

    Berge's incremental product: after each edge the partial transversals are
    pruned back to an antichain.
    """
    edges = minimal_sets(edges)
    if not edges:
        return [0]
    if edges[0] == 0:
        return []
    cap = cap or Caps().monomials
    partial = [0]
    for e in edges:
        grown = set()
        for t in partial:
            if t & e:
                grown.add(t)
            else:
                grown.update(t | b for b in bits(e))
        if len(grown) > cap:
            raise ResourceError("partial transversal set", cap, len(grown))
        partial = minimal_sets(grown)
    return sorted(partial, key=lambda m: (popcount(m), _lex_key(m)))


def _lex_key(m: int):
    return tuple(indices(m))


# --------------------------------------------------------------------------
# ideals


class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    ``MonomialIdeal(ctx, gens)`` accepts Monomials or exponent tuples in any
    order and canonicalizes them.  The zero ideal has no generators and the
    unit ideal is generated by ``1``.
    """

    __slots__ = ("context", "exps", "__weakref__")

    def __init__(self, context: VarContext, gens: Iterable = ()):
        vecs = []
        for g in gens:
            if isinstance(g, Monomial):
                _check_same(context, g.context)
                vecs.append(g.exps)
            else:
                e = tuple(int(x) for x in g)
                if len(e) != context.n or any(x < 0 for x in e):
                    raise PreconditionError(f"bad exponent vector {g!r}")
                vecs.append(e)
        self.context = context
        self.exps = minimal_exps(vecs)

    @classmethod
    def _canonical(cls, context: VarContext, exps: tuple[Exps, ...]) -> "MonomialIdeal":
        obj = cls.__new__(cls)
        obj.context = context
        obj.exps = exps
        return obj

    @classmethod
    def zero(cls, context: VarContext) -> "MonomialIdeal":
        return cls._canonical(context, ())

    @classmethod
    def unit(cls, context: VarContext) -> "MonomialIdeal":
        return cls._canonical(context, ((0,) * context.n,))

    @classmethod
    def maximal(cls, context: VarContext) -> "MonomialIdeal":
        return cls(context, [context.var(i).exps for i in range(context.n)])

    @classmethod
    def from_sets(cls, context: VarContext, sets: Iterable[Iterable[int]]) -> "MonomialIdeal":
        """Squarefree ideal generated by x_S for each index set S."""
        vecs = []
        for s in sets:
            e = [0] * context.n
            for i in s:
                e[i] = 1
            vecs.append(tuple(e))
        return cls(context, vecs)

    # --- basic queries
    @property
    def gens(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(self.context, e) for e in self.exps)

    @property
    def ngens(self) -> int:
        return len(self.exps)

    def is_zero(self) -> bool:
        return not self.exps

    def is_unit(self) -> bool:
        return len(self.exps) == 1 and not any(self.exps[0])

    def is_proper(self) -> bool:
        return not self.is_unit()

    def is_squarefree(self) -> bool:
        return all(x <= 1 for e in self.exps for x in e)

    def supports(self) -> list[int]:
        """Bitmask supports of the generators."""
        return [_mask(e) for e in self.exps]

    def top_exponents(self) -> Exps:
        """Componentwise maximum over G(I), i.e. the exponents of lcm(G(I))."""
        if not self.exps:
            return (0,) * self.context.n
        return tuple(max(col) for col in zip(*self.exps))

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.context == other.context and self.exps == other.exps

    def __hash__(self):
        return hash((self.context, self.exps))

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __pow__(self, k: int):
        return power(self, k)

    def __and__(self, other):
        return intersect(self, other)

    def __len__(self):
        return len(self.exps)

    def __str__(self):
        if not self.exps:
            return "(0)"
        return "(" + ", ".join(format_exps(self.context, e) for e in self.exps) + ")"

    def __repr__(self):
        return f"MonomialIdeal{self}"


@dataclasses.dataclass(frozen=True)
class PrimeSet:
    """Monomial prime generated by the variables with the given indices."""

    context: VarContext
    vars: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "vars", frozenset(self.vars))
        if not self.vars:
            raise PreconditionError("a monomial prime needs at least one variable")
        if not all(0 <= i < self.context.n for i in self.vars):
            raise PreconditionError("prime variable index out of range")

    @property
    def size(self) -> int:
        return len(self.vars)

    def ideal(self) -> MonomialIdeal:
        return MonomialIdeal.from_sets(self.context, [[i] for i in self.vars])

    def power(self, k: int, caps: Caps | None = None) -> MonomialIdeal:
        """All degree-k monomials in the prime's variables."""
        caps = resolve(caps)
        s = len(self.vars)
        count = math.comb(s + k - 1, k)
        if count > caps.monomials:
            raise ResourceError(f"generators of a prime power p^{k}", caps.monomials, count)
        idx = sorted(self.vars)
        vecs = []
        for combo in itertools.combinations_with_replacement(idx, k):
            e = [0] * self.context.n
            for i in combo:
                e[i] += 1
            vecs.append(tuple(e))
        return MonomialIdeal._canonical(self.context, tuple(sorted(vecs, key=_grlex)))

    def names(self) -> list[str]:
        return [self.context.names[i] for i in sorted(self.vars)]

    def __str__(self):
        return "(" + ", ".join(self.names()) + ")"


# --------------------------------------------------------------------------
# operations


def minimalize(gens: Iterable[Monomial], context: VarContext | None = None) -> MonomialIdeal:
    gens = list(gens)
    if context is None:
        if not gens:
            raise PreconditionError("cannot infer a context from an empty generator list")
        context = gens[0].context
    _check_same(context, *(g.context for g in gens))
    return MonomialIdeal(context, gens)


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    _check_same(I.context, m.context)
    e = m.exps
    return any(_divides(g, e) for g in I.exps)


def colon(I: MonomialIdeal, f: Monomial) -> MonomialIdeal:
    """(I : f) = {g : g f in I}; generated by g / gcd(g, f) for g in G(I)."""
    if not isinstance(f, Monomial):
        raise PreconditionError("the colon (I : 0) is undefined; f must be a nonzero monomial")
    _check_same(I.context, f.context)
    fe = f.exps
    return MonomialIdeal._canonical(
        I.context, minimal_exps(tuple(max(a - b, 0) for a, b in zip(g, fe)) for g in I.exps))


def colon_ideal(I: MonomialIdeal, J: MonomialIdeal, caps: Caps | None = None) -> MonomialIdeal:
    """(I : J) as the intersection of (I : g) over g in G(J)."""
    _check_same(I.context, J.context)
    if J.is_zero():
        return MonomialIdeal.unit(I.context)
    out = None
    for g in J.gens:
        c = colon(I, g)
        out = c if out is None else intersect(out, c, caps)
    return out


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _check_same(I.context, J.context)
    return MonomialIdeal._canonical(I.context, minimal_exps(I.exps + J.exps))


def product(I: MonomialIdeal, J: MonomialIdeal, caps: Caps | None = None) -> MonomialIdeal:
    _check_same(I.context, J.context)
    caps = resolve(caps)
    cands = _pairwise(I.exps, J.exps, "add", caps.monomials, "product candidates")
    return MonomialIdeal._canonical(I.context, minimal_exps(cands))


def power(I: MonomialIdeal, k: int, caps: Caps | None = None) -> MonomialIdeal:
    if k < 1:
        raise PreconditionError("powers are defined here for k >= 1 only")
    out = I
    for _ in range(k - 1):
        out = product(out, I, caps)
    return out


def intersect(I: MonomialIdeal, J: MonomialIdeal, caps: Caps | None = None) -> MonomialIdeal:
    _check_same(I.context, J.context)
    caps = resolve(caps)
    cands = _pairwise(I.exps, J.exps, "lcm", caps.monomials, "intersection candidates")
    return MonomialIdeal._canonical(I.context, minimal_exps(cands))


def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal._canonical(
        I.context, minimal_exps(tuple(1 if x else 0 for x in e) for e in I.exps))


def is_squarefree(I: MonomialIdeal) -> bool:
    return I.is_squarefree()


def _require_squarefree_proper(I: MonomialIdeal, what: str):
    if not I.is_squarefree():
        raise PreconditionError(f"{what} needs a squarefree ideal; take the radical first")
    if I.is_zero():
        raise PreconditionError(f"{what} is not defined for the zero ideal")
    if I.is_unit():
        raise PreconditionError(f"{what} is not defined for the unit ideal")


def minimal_primes(I: MonomialIdeal, caps: Caps | None = None) -> list[PrimeSet]:
    """Minimal primes of a squarefree ideal = minimal transversals of the supports."""
    _require_squarefree_proper(I, "minimal_primes")
    covers = minimal_transversals(I.supports(), resolve(caps).monomials)
    return [PrimeSet(I.context, frozenset(indices(c))) for c in covers]


def alexander_dual(I: MonomialIdeal, caps: Caps | None = None) -> MonomialIdeal:
    """Ideal of covers of a squarefree ideal; (0) and (1) are exchanged."""
    if not I.is_squarefree():
        raise PreconditionError("the Alexander dual is taken of squarefree ideals only")
    if I.is_zero():
        return MonomialIdeal.unit(I.context)
    if I.is_unit():
        return MonomialIdeal.zero(I.context)
    covers = minimal_transversals(I.supports(), resolve(caps).monomials)
    return MonomialIdeal.from_sets(I.context, (indices(c) for c in covers))


def symbolic_power(I: MonomialIdeal, k: int, caps: Caps | None = None) -> MonomialIdeal:
    """I^(k): intersection of p^k over the minimal primes p of I."""
    if k < 1:
        raise PreconditionError("symbolic powers are defined here for k >= 1 only")
    _require_squarefree_proper(I, "symbolic_power")
    if k == 1:
        return I
    primes = sorted(minimal_primes(I, caps), key=lambda p: p.size)
    out = None
    for p in primes:
        pk = p.power(k, caps)
        out = pk if out is None else intersect(out, pk, caps)
    return out


def height(I: MonomialIdeal) -> int:
    if I.is_unit():
        raise PreconditionError("the unit ideal has no height")
    if I.is_zero():
        return 0
    return min(p.size for p in minimal_primes(radical(I)))


def krull_dim(I: MonomialIdeal) -> int:
    """dim R/I = n - ht(rad I)."""
    return I.context.n - height(I)


def is_unmixed_ideal(I: MonomialIdeal) -> bool:
    sizes = {p.size for p in minimal_primes(I)}
    return len(sizes) == 1
