"""Long trapezoid property: trapezoid ratios, subset moduli, finite Ramsey extraction.

For a finite ``N`` and a witness pair ``u != v`` the trapezoid ratio is

    min over ordered x != y in N of (d(x,u) + d(y,v)) / (d(x,y) + d(u,v)).

The LTP ratio ``R(N)`` maximises it over all witness pairs of ``M``, capped
at 1, and the modulus is ``1 - R(N)``: the supremum of the ``eps`` at which
the trapezoid condition fails for ``N``.  Modulus 0 means the condition
holds at every ``eps``.  When ``N`` is all of a finite ``M`` the ratio is 0,
since ``x = u, y = v`` is always available.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from itertools import combinations

import networkx as nx

from ._parallel import pmap
from .errors import EqualWitnesses, FormatError, HypothesisFails, TooFewPoints
from .metric import PointedMetricSpace, format_scalar, to_scalar


@dataclass(frozen=True)
class LtpReport:
    subset: tuple
    ratio: object
    witness: tuple
    worst_pair: tuple | None

    @property
    def modulus(self):
        return 1 - self.ratio

    def to_json(self, M: PointedMetricSpace | None = None):
        out = {
            "subset": list(self.subset),
            "ratio": format_scalar(self.ratio),
            "modulus": format_scalar(self.modulus),
            "witness": list(self.witness),
            "worstPair": list(self.worst_pair) if self.worst_pair else None,
        }
        if M is not None:
            out["names"] = {
                "subset": [M.names[p] for p in self.subset],
                "witness": [M.names[p] for p in self.witness],
            }
        return out


def _pair_ratio(M, N, u, v, stop=None):
    """Ratio and minimising (x, y); gives up early once the value drops to ``stop``."""
    D = M.dist
    duv = D[u][v]
    Du, Dv = D[u], D[v]
    best, where = None, None
    for x in N:
        Dx = D[x]
        for y in N:
            if x == y:
                continue
            r = (Du[x] + Dv[y]) / (Dx[y] + duv)
            if best is None or r < best:
                best, where = r, (x, y)
                if stop is not None and best <= stop:
                    return best, where
    if best is None:
        return M.zero() + 1, None
    return best, where


def pair_ratio(M: PointedMetricSpace, N, u, v):
    """Worst trapezoid ratio of the witness pair ``(u, v)`` over ordered pairs of ``N``.

    Pairs with ``x == y`` are skipped (they reduce to the triangle
    inequality).  Returns 1 when ``N`` has fewer than two points.
    """
    u, v = M.index(u), M.index(v)
    if u == v:
        raise EqualWitnesses(u)
    N = M.subset(N)
    return _pair_ratio(M, N, u, v)[0]


def _row(M, N, u):
    """Best capped witness ``(ratio, v)`` with first coordinate ``u``; earliest ``v`` wins ties."""
    one = M.zero() + 1
    best, arg = None, None
    for v in range(M.n):
        if v == u:
            continue
        stop = None if best is None else best + M.tol
        r, _ = _pair_ratio(M, N, u, v, stop)
        r = min(r, one)
        if best is None or r > best + M.tol:
            best, arg = r, v
            if best >= one:
                break
    return best, arg


def ltp_ratio(M: PointedMetricSpace, N, jobs=None) -> LtpReport:
    """Exhaustive maximisation of :func:`pair_ratio` over ordered witness pairs,
    capped at 1.

    Ties go to the lexicographically smallest ``(u, v)``; rows are merged in
    index order so the result does not depend on ``jobs``.
    """
    if M.n < 2:
        raise TooFewPoints(M.n, 2)
    N = M.subset(N)
    rows = pmap(partial(_row, M, N), range(M.n), jobs)
    best, witness = None, None
    for u, (r, v) in enumerate(rows):
        if best is None or r > best + M.tol:
            best, witness = r, (u, v)
    ratio, worst = _pair_ratio(M, N, *witness)
    return LtpReport(N, min(ratio, M.zero() + 1), witness, worst)


def ltp_modulus(M: PointedMetricSpace, N, jobs=None):
    return ltp_ratio(M, N, jobs).modulus


def all_pairs_profile(M: PointedMetricSpace, jobs=None) -> list:
    """Modulus of every 2-point subset, as ``((a, b), modulus)`` with ``a < b``."""
    if M.n < 2:
        raise TooFewPoints(M.n, 2)
    return [((a, b), ltp_ratio(M, (a, b), jobs).modulus) for a, b in combinations(range(M.n), 2)]


# finite Ramsey extraction -------------------------------------------------


@dataclass(frozen=True)
class RamseyReport:
    pair: tuple
    clique: tuple  # A'
    excluded_x: tuple  # A(x0)
    excluded_y: tuple  # A(y0)
    subset: tuple  # A
    eps: object

    def to_json(self):
        return {
            "pair": list(self.pair),
            "clique": list(self.clique),
            "excludedX": list(self.excluded_x),
            "excludedY": list(self.excluded_y),
            "subset": list(self.subset),
            "eps": format_scalar(self.eps),
        }


def two_point_failure(M: PointedMetricSpace, x, y, u, v, eps) -> bool:
    """``(1-eps)(d(x,y) + d(u,v)) > min(d(x,u) + d(y,v), d(x,v) + d(y,u))``."""
    D = M.dist
    lhs = (1 - eps) * (D[x][y] + D[u][v])
    rhs = min(D[x][u] + D[y][v], D[x][v] + D[y][u])
    return lhs > rhs + M.tol


def ramsey_extract(M: PointedMetricSpace, N, eps) -> RamseyReport:
    """Finite version of the Ramsey extraction of a 2-point LTP failure.

    Requires that every pair ``u != v`` outside ``N`` fails some trapezoid
    with a couple of ``N`` at level ``eps``.  The couple ``(x0, y0)`` whose
    failure graph has the largest clique ``A'`` is selected, the at most one
    bad partner of ``x0`` (resp. ``y0``) is dropped, and ``x0, y0`` are added.
    """
    eps = to_scalar(eps, M.mode)
    if not 0 < eps < 1:
        raise FormatError(f"eps must lie in (0, 1), got {eps}")
    N = M.subset(N)
    if len(N) < 2:
        raise TooFewPoints(len(N), 2)
    inside = set(N)
    rest = [p for p in range(M.n) if p not in inside]
    couples = [(x, y) for x, y in combinations(sorted(N), 2)]

    graphs = {c: nx.Graph() for c in couples}
    for g in graphs.values():
        g.add_nodes_from(rest)
    for u, v in combinations(rest, 2):
        hit = False
        for c in couples:
            if two_point_failure(M, c[0], c[1], u, v, eps):
                graphs[c].add_edge(u, v)
                hit = True
        if not hit:
            raise HypothesisFails(u, v)

    best, pair = None, None
    for c in couples:
        clique, _ = nx.max_weight_clique(graphs[c], weight=None) if rest else ([], 0)
        clique = tuple(sorted(clique))
        if best is None or len(clique) > len(best):
            best, pair = clique, c
    x0, y0 = pair
    D = M.dist
    a_x = tuple(w for w in best if D[y0][w] >= (1 - eps) * (D[x0][y0] + D[x0][w]) - M.tol)
    a_y = tuple(w for w in best if D[x0][w] >= (1 - eps) * (D[x0][y0] + D[y0][w]) - M.tol)
    A = tuple(sorted({x0, y0} | (set(best) - set(a_x) - set(a_y))))
    report = RamseyReport(pair, best, a_x, a_y, A, eps)
    bad = [(u, v) for u, v in combinations(A, 2) if not two_point_failure(M, x0, y0, u, v, eps)]
    if bad or len(a_x) > 1 or len(a_y) > 1:
        raise AssertionError(f"Ramsey extraction invariant broken: {bad}")
    return report
