"""Exact sparse elimination over Q (fraction free) or GF(p)."""
from __future__ import annotations

import dataclasses
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import PreconditionError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclasses.dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 (exact rationals) or a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        c = int(self.characteristic)
        object.__setattr__(self, "characteristic", c)
        if c != 0 and not _is_prime(c):
            raise PreconditionError(f"field characteristic must be 0 or a prime, got {c}")

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


def rank(rows: Iterable[dict[int, int]], field: FieldSpec = QQ) -> int:
    """Rank of a sparse integer matrix given as ``{column: entry}`` rows."""
    p = field.characteristic
    return _rank_mod_p(rows, p) if p else _rank_integer(rows)


def _rank_mod_p(rows, p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {k: (v * inv) % p for k, v in row.items()}
                r += 1
                break
            c = row[lead]
            for k, v in prow.items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return r


def _rank_integer(rows) -> int:
    # Fraction-free: combine rows with integer multipliers, then strip content.
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if row[lead] < 0:
                    g = -g
                pivots[lead] = {k: v // g for k, v in row.items()}
                r += 1
                break
            a = prow[lead]
            b = row[lead]
            if a == 1:
                for k, v in prow.items():
                    nv = row.get(k, 0) - b * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                continue
            new = {}
            for k in row.keys() | prow.keys():
                nv = a * row.get(k, 0) - b * prow.get(k, 0)
                if nv:
                    new[k] = nv
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            row = new
    return r


def solve_square(M: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]):
    """Unique solution of M x = rhs over Q, or None when M is singular."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        prow = [x / pv for x in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], prow)]
    return [aug[i][n] for i in range(n)]


def matrix_rank_exact(M: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank over Q of a small dense matrix."""
    rows = [[Fraction(x) for x in row] for row in M]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r
