"""Finite pointed metric spaces.

Distances live in a dense ``n x n`` matrix.  In ``exact`` mode every entry
is a :class:`fractions.Fraction` and all comparisons are exact; in ``float``
mode entries are binary64 and comparisons allow an absolute slack of
:data:`FLOAT_TOL`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    Asymmetric,
    BadBase,
    BaseNotInSubset,
    FormatError,
    InvalidSubset,
    ModeMismatch,
    NonFiniteDistance,
    NonpositiveOffDiagonal,
    NonpositiveScale,
    NonzeroDiagonal,
    NotSquare,
    TooFewPoints,
    TriangleViolation,
)

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)
FLOAT_TOL = 1e-9


def to_scalar(x, mode: str = EXACT):
    """Coerce ``x`` into the scalar type of ``mode``.

    Exact mode accepts ints, Fractions and ``"p/q"`` strings; floats are
    refused so that a rounded value can never leak into exact arithmetic.
    """
    if mode == EXACT:
        if isinstance(x, bool):
            raise FormatError(f"boolean is not a scalar: {x!r}")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            try:
                return Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"bad rational {x!r}") from exc
        raise FormatError(f"exact mode needs int, Fraction or 'p/q' string, got {x!r}")
    if mode == FLOAT:
        try:
            v = float(Fraction(x)) if isinstance(x, str) else float(x)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad float {x!r}") from exc
        return v
    raise FormatError(f"unknown mode {mode!r}")


def format_scalar(x):
    """JSON form of a scalar: ``"p/q"`` strings for rationals, numbers for floats."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(Fraction(x))
    return float(x)


@dataclass(frozen=True)
class PointedMetricSpace:
    dist: tuple
    base: int = 0
    names: tuple = ()
    mode: str = EXACT
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(len(self.dist))))
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})

    @property
    def n(self) -> int:
        return len(self.dist)

    @property
    def tol(self):
        return 0 if self.mode == EXACT else FLOAT_TOL

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def d(self, a: int, b: int):
        return self.dist[a][b]

    def index(self, key) -> int:
        """Resolve a point given by index or by display name."""
        if isinstance(key, int) and not isinstance(key, bool):
            if 0 <= key < self.n:
                return key
            raise InvalidSubset(f"point index {key} out of range", point=key)
        key = str(key)
        if key in self._index:
            return self._index[key]
        if key.lstrip("-").isdigit():
            return self.index(int(key))
        raise InvalidSubset(f"unknown point {key!r}", point=key)

    def subset(self, keys: Iterable) -> tuple:
        ids = tuple(self.index(k) for k in keys)
        if len(set(ids)) != len(ids):
            raise InvalidSubset("duplicate points in subset", points=list(ids))
        return ids

    def leq(self, a, b) -> bool:
        return a <= b + self.tol

    def eq(self, a, b) -> bool:
        return abs(a - b) <= self.tol

    def __repr__(self):
        return f"PointedMetricSpace(n={self.n}, base={self.base}, mode={self.mode!r})"


def _check_triangle_exact(rows):
    n = len(rows)
    lcm = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for r in rows for x in r), 1)
    ints = [[int(x * lcm) for x in r] for r in rows]
    top = max((max(r) for r in ints), default=0)
    if 2 * top < 2**62:
        _check_triangle_array(np.array(ints, dtype=np.int64), 0)
        return
    for a in range(n):
        ra = ints[a]
        for c in range(n):
            for b in range(n):
                if ra[c] > ra[b] + ints[b][c]:
                    raise TriangleViolation(a, b, c)


def _check_triangle_array(D, tol):
    n = D.shape[0]
    # bad[a, c, b] is True when d(a,c) > d(a,b) + d(b,c); argmax keeps (a, c, b) lexicographic order
    for a in range(n):
        bad = D[a][:, None] > D[a][None, :] + D.T + tol
        if bad.any():
            c, b = np.unravel_index(np.argmax(bad), bad.shape)
            raise TriangleViolation(a, int(b), int(c))


def validate_metric(
    dist_matrix: Sequence[Sequence], base: int = 0, names: Sequence[str] | None = None, mode: str = EXACT
) -> PointedMetricSpace:
    """Check the metric axioms and build a space.

    Raises the first violated axiom in the order: shape, diagonal, symmetry,
    positivity, triangle inequality.  Triangle witnesses ``(a, b, c)`` mean
    ``d(a,c) > d(a,b) + d(b,c)``.
    """
    if mode not in MODES:
        raise FormatError(f"unknown mode {mode!r}")
    n = len(dist_matrix)
    if n < 1:
        raise TooFewPoints(0, 1)
    if any(len(row) != n for row in dist_matrix):
        raise NotSquare("distance matrix is not square", n=n)
    if not (isinstance(base, int) and 0 <= base < n):
        raise BadBase(base, n)
    rows = tuple(tuple(to_scalar(x, mode) for x in row) for row in dist_matrix)
    if mode == FLOAT:
        for a in range(n):
            for b in range(n):
                if not math.isfinite(rows[a][b]):
                    raise NonFiniteDistance(a, b)
    tol = 0 if mode == EXACT else FLOAT_TOL
    for a in range(n):
        if abs(rows[a][a]) > tol:
            raise NonzeroDiagonal(a)
    for a in range(n):
        for b in range(a + 1, n):
            if abs(rows[a][b] - rows[b][a]) > tol:
                raise Asymmetric(a, b)
    for a in range(n):
        for b in range(n):
            if a != b and rows[a][b] <= tol:
                raise NonpositiveOffDiagonal(a, b)
    if mode == EXACT:
        _check_triangle_exact(rows)
    else:
        _check_triangle_array(np.array(rows, dtype=float), FLOAT_TOL)
    if names is None:
        names = tuple(str(i) for i in range(n))
    names = tuple(str(s) for s in names)
    if len(names) != n:
        raise FormatError(f"{len(names)} names for {n} points")
    if len(set(names)) != n:
        raise FormatError("point names must be unique")
    if mode == FLOAT:
        # exact zero diagonal and symmetric storage
        rows = tuple(
            tuple(0.0 if a == b else (rows[a][b] if a < b else rows[b][a]) for b in range(n)) for a in range(n)
        )
    return PointedMetricSpace(rows, base, names, mode)


def scale_space(M: PointedMetricSpace, s) -> PointedMetricSpace:
    s = to_scalar(s, M.mode)
    if not s > 0:
        raise NonpositiveScale(format_scalar(s))
    rows = tuple(tuple(x * s for x in row) for row in M.dist)
    return PointedMetricSpace(rows, M.base, M.names, M.mode)


def restrict(M: PointedMetricSpace, S: Iterable) -> PointedMetricSpace:
    """Induced subspace on ``S`` (in the given order); the base must be kept."""
    ids = M.subset(S)
    if M.base not in ids:
        raise BaseNotInSubset(M.base)
    rows = tuple(tuple(M.dist[a][b] for b in ids) for a in ids)
    return PointedMetricSpace(rows, ids.index(M.base), tuple(M.names[i] for i in ids), M.mode)


def rebase(M: PointedMetricSpace, new_base) -> PointedMetricSpace:
    """Same metric, different distinguished point."""
    return PointedMetricSpace(M.dist, M.index(new_base), M.names, M.mode)


def l1_sum_maps(T1: PointedMetricSpace, T2: PointedMetricSpace) -> tuple[list[int], list[int]]:
    """Index maps of ``T1`` and ``T2`` into ``l1_sum(T1, T2)``."""
    map1 = list(range(T1.n))
    map2 = [0] * T2.n
    nxt = T1.n
    for j in range(T2.n):
        if j == T2.base:
            map2[j] = T1.base
        else:
            map2[j] = nxt
            nxt += 1
    return map1, map2


def l1_sum(T1: PointedMetricSpace, T2: PointedMetricSpace) -> PointedMetricSpace:
    """Glue two pointed spaces at their base points.

    Cross distances go through the common base: ``d(x, y) = d(x, 0) + d(0, y)``.
    Points of ``T1`` keep their indices; the non-base points of ``T2``
    follow in order.
    """
    if T1.mode != T2.mode:
        raise ModeMismatch(T1.mode, T2.mode)
    map1, map2 = l1_sum_maps(T1, T2)
    n = T1.n + T2.n - 1
    zero = T1.zero()
    rows = [[zero] * n for _ in range(n)]
    for a in range(T1.n):
        for b in range(T1.n):
            rows[a][b] = T1.dist[a][b]
    for a in range(T2.n):
        for b in range(T2.n):
            rows[map2[a]][map2[b]] = T2.dist[a][b]
    for a in range(T1.n):
        for b in range(T2.n):
            if b == T2.base or a == T1.base:
                continue
            x = T1.dist[a][T1.base] + T2.dist[T2.base][b]
            rows[a][map2[b]] = rows[map2[b]][a] = x
    taken = set(T1.names)
    names = list(T1.names) + [""] * (T2.n - 1)
    for j in range(T2.n):
        if j == T2.base:
            continue
        name = T2.names[j]
        while name in taken:
            name += "'"
        taken.add(name)
        names[map2[j]] = name
    return validate_metric(rows, T1.base, names, T1.mode)


def min_separation(M: PointedMetricSpace):
    if M.n < 2:
        raise TooFewPoints(M.n, 2)
    return min(M.dist[a][b] for a in range(M.n) for b in range(M.n) if a != b)


def diameter(M: PointedMetricSpace):
    return max((M.dist[a][b] for a in range(M.n) for b in range(M.n)), default=M.zero())


def subset_separation(M: PointedMetricSpace, N: Sequence[int]):
    """Smallest distance between two distinct points of ``N``."""
    if len(N) < 2:
        raise TooFewPoints(len(N), 2)
    return min(M.dist[a][b] for a in N for b in N if a != b)


def four_point_condition(M: PointedMetricSpace) -> bool:
    """True when every quadruple satisfies the tree-metric four-point condition."""
    D = M.dist
    n = M.n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                for t in range(n):
                    lhs = D[x][y] + D[z][t]
                    rhs = max(D[x][z] + D[y][t], D[x][t] + D[y][z])
                    if not M.leq(lhs, rhs):
                        return False
    return True


# JSON ------------------------------------------------------------------


def space_to_json(M: PointedMetricSpace) -> dict:
    return {
        "points": list(M.names),
        "base": M.base,
        "dist": [[format_scalar(x) for x in row] for row in M.dist],
        "mode": M.mode,
    }


def space_from_json(obj) -> PointedMetricSpace:
    if not isinstance(obj, dict):
        raise FormatError("space JSON must be an object")
    try:
        dist = obj["dist"]
    except KeyError as exc:
        raise FormatError("space JSON lacks 'dist'") from exc
    mode = obj.get("mode", EXACT)
    base = obj.get("base", 0)
    if not isinstance(dist, list) or not all(isinstance(r, list) for r in dist):
        raise FormatError("'dist' must be a list of rows")
    if not isinstance(base, int) or isinstance(base, bool):
        raise FormatError("'base' must be an integer index")
    names = obj.get("points")
    if names is not None and not isinstance(names, list):
        raise FormatError("'points' must be a list of names")
    if mode == EXACT:
        for row in dist:
            for x in row:
                if isinstance(x, float):
                    raise FormatError(f"float {x!r} in exact-mode matrix")
    return validate_metric(dist, base, names, mode)
