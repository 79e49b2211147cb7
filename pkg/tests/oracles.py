"""Independent reference implementations used only by the tests.

Nothing here calls the transport solver: the norm oracle enumerates dual
vertices directly and the LTP oracle is a plain quadruple loop.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from lipfree.metric import validate_metric


def random_space(rng: random.Random, n: int, denom: int = 6, spread: int = 12):
    """Shortest-path closure of random positive rational edge weights."""
    D = [[Fraction(0)] * n for _ in range(n)]
    for a, b in combinations(range(n), 2):
        D[a][b] = D[b][a] = Fraction(rng.randint(1, spread), rng.randint(1, denom))
    for k in range(n):
        for a in range(n):
            for b in range(n):
                if D[a][k] + D[k][b] < D[a][b]:
                    D[a][b] = D[a][k] + D[k][b]
    return validate_metric(D, rng.randrange(n))


def random_measure(rng: random.Random, M, size=None, denom: int = 5) -> dict:
    pts = [p for p in range(M.n) if p != M.base]
    size = rng.randint(1, len(pts)) if size is None else min(size, len(pts))
    chosen = rng.sample(pts, size)
    out = {}
    for p in chosen:
        a = Fraction(rng.randint(-9, 9), rng.randint(1, denom))
        out[p] = a if a else Fraction(1)
    return out


def dual_vertex_norm(M, coeffs: dict):
    """Maximise ``sum a_p f(p)`` over 1-Lipschitz ``f`` with ``f(base) = 0`` by
    enumerating every vertex of the feasible polytope on ``supp + {base}``.

    A vertex is fixed by a spanning tree of tight constraints, so it is
    reachable by growing an assignment one tight edge at a time.
    """
    nodes = [M.base] + sorted(p for p in coeffs if p != M.base)
    if len(nodes) == 1:
        return Fraction(0)
    D = M.dist
    start = ((M.base, Fraction(0)),)
    seen = {start}
    frontier = [start]
    full = []
    while frontier:
        nxt = []
        for state in frontier:
            assigned = dict(state)
            if len(assigned) == len(nodes):
                full.append(assigned)
                continue
            for x in nodes:
                if x in assigned:
                    continue
                for y, fy in state:
                    for val in (fy + D[x][y], fy - D[x][y]):
                        if all(abs(val - fw) <= D[x][w] for w, fw in state):
                            key = tuple(sorted(state + ((x, val),)))
                            if key not in seen:
                                seen.add(key)
                                nxt.append(key)
        frontier = nxt
    return max(sum(a * f[p] for p, a in coeffs.items() if p != M.base) for f in full)


def brute_pair_ratio(M, N, u, v):
    vals = [
        Fraction(M.dist[x][u] + M.dist[y][v]) / (M.dist[x][y] + M.dist[u][v])
        for x in N
        for y in N
        if x != y
    ]
    return min(vals) if vals else Fraction(1)


def brute_ltp_modulus(M, N):
    best = max(brute_pair_ratio(M, N, u, v) for u in range(M.n) for v in range(M.n) if u != v)
    return 1 - min(best, Fraction(1))


def linprog_norm(M, coeffs: dict) -> float:
    """Float transport LP on the full point set, solved by scipy."""
    import numpy as np
    from scipy.optimize import linprog

    n = M.n
    b = np.zeros(n)
    for p, a in coeffs.items():
        b[p] += float(a)
    b[M.base] -= b.sum()
    c = np.array([float(M.dist[i][j]) for i in range(n) for j in range(n)])
    A = np.zeros((n, n * n))
    for i in range(n):
        for j in range(n):
            A[i, i * n + j] += 1
            A[j, i * n + j] -= 1
    res = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    assert res.status == 0
    return float(res.fun)
