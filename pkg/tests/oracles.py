"""Brute-force reference computations, independent of the package internals."""
from __future__ import annotations

import itertools
import random
from collections import defaultdict
from fractions import Fraction


def divides(g, a):
    return all(x <= y for x, y in zip(g, a))


def in_ideal(gens, a):
    return any(divides(g, a) for g in gens)


def lcm(vecs, n):
    out = [0] * n
    for v in vecs:
        out = [max(x, y) for x, y in zip(out, v)]
    return tuple(out)


def dense_rank(rows, p=0):
    """Rank over Q (p = 0) or GF(p) of a small dense integer matrix."""
    m = [[Fraction(x) if p == 0 else x % p for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                if p == 0:
                    f = m[i][c] / m[r][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                else:
                    f = m[i][c] * pow(m[r][c], -1, p) % p
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


def taylor_betti(gens, n, p=0):
    """Multigraded Betti numbers of R/I from the Taylor complex tensored with K."""
    gens = list(gens)
    strands = defaultdict(list)
    for size in range(len(gens) + 1):
        for S in itertools.combinations(range(len(gens)), size):
            strands[lcm([gens[j] for j in S], n)].append(S)
    out = {}
    for a, subsets in strands.items():
        by_size = defaultdict(list)
        for S in subsets:
            by_size[len(S)].append(S)
        ranks = {}
        for i, faces in by_size.items():
            if i == 0:
                continue
            lower = {S: j for j, S in enumerate(by_size.get(i - 1, []))}
            rows = []
            for S in faces:
                row = [0] * len(lower)
                for pos, j in enumerate(S):
                    T = S[:pos] + S[pos + 1:]
                    if T in lower:
                        row[lower[T]] = (-1) ** pos
                rows.append(row)
            ranks[i] = dense_rank(rows, p) if lower else 0
        for i, faces in by_size.items():
            b = len(faces) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if b:
                out[(i, a)] = b
    return out


def taylor_invariants(gens, n, p=0):
    b = taylor_betti(gens, n, p)
    pd = max(i for i, _ in b)
    return {"pd": pd, "depth": n - pd, "reg": max(sum(a) - i for i, a in b)}


def brute_minimal_covers(supports, n):
    """Minimal vertex sets meeting every support (each given as a set of indices)."""
    covers = []
    for size in range(n + 1):
        for C in itertools.combinations(range(n), size):
            Cs = set(C)
            if all(Cs & set(s) for s in supports) and not any(set(c) <= Cs for c in covers):
                covers.append(C)
    return covers


def symbolic_member(a, covers, k):
    return all(sum(a[i] for i in c) >= k for c in covers)


def box(bound, n):
    return itertools.product(range(bound + 1), repeat=n)


def random_ideal(rng: random.Random, n_max=5, gens_max=6, exp_max=3, n_min=1):
    n = rng.randint(n_min, n_max)
    gens = []
    for _ in range(rng.randint(1, gens_max)):
        e = [rng.randint(0, exp_max) for _ in range(n)]
        if not any(e):
            e[rng.randrange(n)] = 1
        gens.append(tuple(e))
    return n, gens


def random_squarefree(rng: random.Random, n_max=7, gens_max=7, n_min=2):
    n = rng.randint(n_min, n_max)
    gens = []
    for _ in range(rng.randint(1, gens_max)):
        size = rng.randint(1, min(n, 4))
        S = set(rng.sample(range(n), size))
        gens.append(tuple(1 if i in S else 0 for i in range(n)))
    return n, gens


def brute_reduced_homology(facets, p=0):
    """Reduced Betti numbers [H~_-1, H~_0, ...] from the full face list."""
    faces = set()
    for F in facets:
        F = tuple(sorted(F))
        for r in range(len(F) + 1):
            faces.update(itertools.combinations(F, r))
    by_dim = defaultdict(list)
    for f in sorted(faces):
        by_dim[len(f) - 1].append(f)
    top = max(by_dim)
    ranks = {}
    for d in range(0, top + 1):
        lower = {f: j for j, f in enumerate(by_dim[d - 1])}
        rows = []
        for f in by_dim[d]:
            row = [0] * len(lower)
            for pos in range(len(f)):
                row[lower[f[:pos] + f[pos + 1:]]] = (-1) ** pos
            rows.append(row)
        ranks[d] = dense_rank(rows, p)
    return [len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(-1, top + 1)]


def lp_minimum(columns, n, c):
    """min c.x over {x >= 0 : x.A >= 1} with scipy's LP solver (A given by edge masks)."""
    from scipy.optimize import linprog
    A_ub = [[-((col >> i) & 1) for i in range(n)] for col in columns]
    res = linprog(c, A_ub=A_ub, b_ub=[-1] * len(columns), bounds=[(0, None)] * n, method="highs")
    assert res.status == 0
    return res.fun


def random_clutter(rng: random.Random, n_max=5, edges_max=5):
    n = rng.randint(2, n_max)
    sets = set()
    for _ in range(rng.randint(1, edges_max)):
        sets.add(frozenset(rng.sample(range(n), rng.randint(1, min(3, n)))))
    anti = [s for s in sets if not any(t < s for t in sets)]
    return n, [sorted(s) for s in anti]
