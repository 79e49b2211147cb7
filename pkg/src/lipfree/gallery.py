"""Example spaces, l_p point configurations and bijection distortion."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from .errors import (
    BadExponent,
    FormatError,
    InvalidParameter,
    NotABijection,
    SizeMismatch,
    ZeroCount,
)
from .metric import EXACT, FLOAT, PointedMetricSpace, format_scalar, to_scalar, validate_metric

log = logging.getLogger(__name__)


def _need(k, lo):
    if not isinstance(k, int) or isinstance(k, bool) or k < lo:
        raise ZeroCount(k, lo)


def gen_ejenega(k: int) -> PointedMetricSpace:
    """``{0, x_1..x_k, z}``: unit distances except ``d(0, z) = 2``."""
    _need(k, 1)
    names = ["0"] + [f"x{i}" for i in range(1, k + 1)] + ["z"]
    n = k + 2
    D = [[Fraction(0 if a == b else 1) for b in range(n)] for a in range(n)]
    D[0][n - 1] = D[n - 1][0] = Fraction(2)
    return validate_metric(D, 0, names)


def gen_graph_m(k: int) -> PointedMetricSpace:
    """Shortest-path metric of the graph with edges ``{0, x_i}`` and ``{x_i, z}``.

    Points are ordered ``0, z, x_1..x_k``.
    """
    _need(k, 2)
    names = ["0", "z"] + [f"x{i}" for i in range(1, k + 1)]
    n = k + 2
    D = [[Fraction(0 if a == b else 2) for b in range(n)] for a in range(n)]
    for i in range(2, n):
        for j in (0, 1):
            D[i][j] = D[j][i] = Fraction(1)
    return validate_metric(D, 0, names)


def gen_4branch(k: int) -> PointedMetricSpace:
    """``{alpha, beta, 0, z, x_1..x_k}``: every 2-point subset passes the trapezoid
    test but the whole space does not."""
    _need(k, 2)
    names = ["alpha", "beta", "0", "z"] + [f"x{i}" for i in range(1, k + 1)]
    al, be, o, z = 0, 1, 2, 3
    xs = range(4, k + 4)
    table = {(o, z): 2, (al, o): 1, (be, o): 1, (al, be): 2, (al, z): 3, (be, z): 3}
    for x in xs:
        table.update({(o, x): 1, (x, z): 1, (al, x): 2, (be, x): 2})
        for y in xs:
            if x < y:
                table[(x, y)] = 1
    n = k + 4
    D = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), w in table.items():
        D[a][b] = D[b][a] = Fraction(w)
    return validate_metric(D, o, names)


def gen_equilateral(n: int, c=1) -> PointedMetricSpace:
    _need(n, 2)
    c = to_scalar(c)
    if not c > 0:
        raise InvalidParameter(f"edge length must be positive, got {c}", c=format_scalar(c))
    D = [[Fraction(0) if a == b else c for b in range(n)] for a in range(n)]
    return validate_metric(D, 0, [f"e{i}" for i in range(n)])


def gen_geometric_line(k: int) -> PointedMetricSpace:
    """``{0, 1, 2, 4, ..., 2^k}`` on the real line."""
    _need(k, 1)
    xs = [Fraction(0)] + [Fraction(2**j) for j in range(k + 1)]
    return _line(xs)


def gen_dyadic_cluster(k: int) -> PointedMetricSpace:
    """``{0} + {3 + 2^-j : 0 <= j <= k}``; the cluster accumulates at 3."""
    _need(k, 1)
    xs = [Fraction(0)] + [3 + Fraction(1, 2**j) for j in range(k + 1)]
    return _line(xs)


def _line(xs):
    D = [[abs(a - b) for b in xs] for a in xs]
    return validate_metric(D, 0, [str(x) for x in xs])


def _tree(edges):
    g = nx.Graph()
    for a, b, w in edges:
        w = to_scalar(w)
        if not w > 0:
            raise InvalidParameter(f"edge ({a},{b}) has non-positive weight", edge=[str(a), str(b)])
        g.add_edge(a, b, weight=w)
    if g.number_of_nodes() == 0 or not nx.is_tree(g):
        raise InvalidParameter("edges do not form a tree")
    return g


def gen_tree_metric(edges: Sequence, marked: Sequence, base=None) -> PointedMetricSpace:
    """Weighted shortest-path metric of a tree restricted to the marked vertices.

    ``edges`` holds ``(a, b, weight)`` triples with positive rational weights;
    the base defaults to the first marked vertex.
    """
    g = _tree(edges)
    marked = list(marked)
    if len(set(marked)) != len(marked):
        raise InvalidParameter("marked vertices must be distinct")
    for v in marked:
        if v not in g:
            raise InvalidParameter(f"marked vertex {v!r} not in tree", vertex=str(v))
    base = marked[0] if base is None else base
    if base not in marked:
        raise InvalidParameter("base must be a marked vertex")
    D = []
    for a in marked:
        lengths = nx.single_source_dijkstra_path_length(g, a)
        D.append([Fraction(lengths[b]) for b in marked])
    return validate_metric(D, marked.index(base), [str(v) for v in marked])


def tree_hull_projection(edges: Sequence, hull: Sequence, points: Sequence) -> dict:
    """Nearest-point map of vertices onto the subtree spanned by ``hull``."""
    g = _tree(edges)
    hull = list(hull)
    span = set(hull)
    for a in hull[1:]:
        span.update(nx.shortest_path(g, hull[0], a))
    out = {}
    for p in points:
        lengths = nx.single_source_dijkstra_path_length(g, p)
        out[p] = min(span, key=lambda s: (lengths[s], str(s)))
    log.debug("hull projections: %s", out)
    return out


def tree_cluster_edges(eps, m: int = 2):
    """Tree for the clustered-projection family.

    A hull path ``a - c1 - ... - cm - b`` with unit end edges, the ``c_i``
    spread over total length ``eps``, and one unit leaf ``l_i`` hanging at
    each ``c_i``.  Marked points ``a, b, l_1..l_m`` are at least 2 apart, so
    the projections of the leaves form a set of diameter ``eps < eps * 2``.
    Returns ``(edges, marked)``; ``N = {a, b}`` is the subset of interest.
    """
    eps = to_scalar(eps)
    _need(m, 2)
    if not 0 < eps < 1:
        raise InvalidParameter("eps must lie in (0, 1)")
    step = eps / (m - 1)
    cs = [f"c{i}" for i in range(1, m + 1)]
    edges = [("a", cs[0], 1), (cs[-1], "b", 1)]
    edges += [(cs[i], cs[i + 1], step) for i in range(m - 1)]
    edges += [(c, f"l{i}", 1) for i, c in enumerate(cs, 1)]
    return edges, ["a", "b"] + [f"l{i}" for i in range(1, m + 1)]


def gen_tree_cluster(eps, m: int = 2) -> PointedMetricSpace:
    edges, marked = tree_cluster_edges(eps, m)
    return gen_tree_metric(edges, marked)


# l_p configurations ---------------------------------------------------------


@dataclass(frozen=True)
class PointConfiguration:
    p: object  # number, or math.inf
    coords: tuple
    space: PointedMetricSpace

    def to_json(self):
        from .metric import space_to_json

        out = space_to_json(self.space)
        out["p"] = "inf" if self.p == math.inf else format_scalar(self.p) if isinstance(self.p, Fraction) else self.p
        out["coordinates"] = [[format_scalar(c) for c in row] for row in self.coords]
        return out


def _parse_p(p):
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity"):
            return math.inf
        return to_scalar(p)
    return p


def configuration_space(coords: Sequence[Sequence], p, names=None, base: int = 0) -> PointConfiguration:
    """Metric space induced by points of ``l_p`` with finitely many coordinates.

    Exact arithmetic is used for ``p`` in ``{1, inf}`` with rational
    coordinates; every other case runs in float mode.
    """
    p = _parse_p(p)
    if not (p == math.inf or p >= 1):
        raise BadExponent(p)
    dim = max((len(c) for c in coords), default=0)
    rows = [list(c) + [0] * (dim - len(c)) for c in coords]
    rational = all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for r in rows for x in r)
    if p in (1, math.inf) and rational:
        pts = [[Fraction(x) for x in r] for r in rows]
        if p == 1:
            D = [[sum((abs(a - b) for a, b in zip(x, y)), Fraction(0)) for y in pts] for x in pts]
        else:
            D = [[max((abs(a - b) for a, b in zip(x, y)), default=Fraction(0)) for y in pts] for x in pts]
        return PointConfiguration(p, tuple(map(tuple, pts)), validate_metric(D, base, names, EXACT))
    X = np.array([[float(x) for x in r] for r in rows], dtype=float)
    diff = np.abs(X[:, None, :] - X[None, :, :])
    if p == math.inf:
        D = diff.max(axis=2)
    else:
        D = (diff ** float(p)).sum(axis=2) ** (1.0 / float(p))
    return PointConfiguration(p, tuple(map(tuple, X.tolist())), validate_metric(D.tolist(), base, names, FLOAT))


@dataclass(frozen=True)
class Bijection:
    source: PointedMetricSpace
    target: PointedMetricSpace
    mapping: tuple  # mapping[i] = image of source point i

    @classmethod
    def identity(cls, source, target):
        return cls(source, target, tuple(range(source.n)))


def gen_ellp_embed(p, k: int):
    """Embedding of ``gen_graph_m(k)`` into ``l_p``: ``0 -> -e_0``, ``z -> e_0``,
    ``x_i -> 2^((p-1)/p) e_i``.  Returns the configuration and the bijection
    from the graph to its image.
    """
    p = _parse_p(p)
    if isinstance(p, bool) or not isinstance(p, (int, float, Fraction)) or not 1 < p < math.inf:
        raise BadExponent(p)
    _need(k, 2)
    p = float(p)
    c = 2.0 ** ((p - 1.0) / p)
    coords = [[0.0] * (k + 1) for _ in range(k + 2)]
    coords[0][0] = -1.0
    coords[1][0] = 1.0
    for i in range(1, k + 1):
        coords[i + 1][i] = c
    src = gen_graph_m(k)
    conf = configuration_space(coords, p, names=src.names, base=src.base)
    return conf, Bijection.identity(src, conf.space)


def ellp_distortion_formula(p) -> float:
    """Closed form ``(1 + 2^(p-1))^(1/p)`` of the distortion of :func:`gen_ellp_embed`."""
    p = float(p)
    if p == math.inf:
        return 2.0
    return (1.0 + 2.0 ** (p - 1.0)) ** (1.0 / p)


@dataclass(frozen=True)
class DistortionReport:
    expansion: object
    contraction: object
    expansion_pair: tuple
    contraction_pair: tuple

    @property
    def distortion(self):
        return self.expansion * self.contraction

    def to_json(self):
        return {
            "expansion": format_scalar(self.expansion),
            "contraction": format_scalar(self.contraction),
            "distortion": format_scalar(self.distortion),
            "expansionPair": list(self.expansion_pair),
            "contractionPair": list(self.contraction_pair),
        }


def distortion(b: Bijection) -> DistortionReport:
    """``Lip(b) * Lip(b^-1)`` over all pairs; invariant under rescaling either side."""
    S, T, f = b.source, b.target, tuple(b.mapping)
    if S.n != T.n:
        raise SizeMismatch(S.n, T.n)
    if S.n < 2:
        raise FormatError("distortion needs at least two points")
    if sorted(f) != list(range(T.n)):
        raise NotABijection("mapping is not a permutation of the target points")
    exp = con = None
    for a in range(S.n):
        for c in range(a + 1, S.n):
            ds, dt = S.dist[a][c], T.dist[f[a]][f[c]]
            e, k = dt / ds, ds / dt
            if exp is None or e > exp[0]:
                exp = (e, (a, c))
            if con is None or k > con[0]:
                con = (k, (a, c))
    return DistortionReport(exp[0], con[0], exp[1], con[1])
