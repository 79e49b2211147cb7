"""Free-space (Kantorovich-Rubinstein) norms, Lipschitz constants and extensions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .errors import (
    BaseNotInSubset,
    BaseValueNonzero,
    EqualWitnesses,
    FormatError,
    NotLipschitzOnSubset,
    WitnessInSubset,
)
from .metric import PointedMetricSpace, format_scalar, to_scalar
from .simplex import lexmin_potentials, network_simplex

LOWER = "lower"
UPPER = "upper"


@dataclass(frozen=True)
class Measure:
    """Finitely supported element of the free space, sorted by point index.

    Canonical: no base-point entry and no zero coefficients.  Build it with
    :func:`canonicalize` or :func:`molecule`.
    """

    items: tuple = ()

    @property
    def support(self) -> tuple:
        return tuple(p for p, _ in self.items)

    def as_dict(self) -> dict:
        return dict(self.items)

    def __bool__(self):
        return bool(self.items)

    def __len__(self):
        return len(self.items)

    def __add__(self, other: "Measure") -> "Measure":
        acc = dict(self.items)
        for p, a in other.items:
            acc[p] = acc.get(p, 0) + a
        return Measure(tuple(sorted((p, a) for p, a in acc.items() if a != 0)))

    def __neg__(self) -> "Measure":
        return Measure(tuple((p, -a) for p, a in self.items))

    def __sub__(self, other: "Measure") -> "Measure":
        return self + (-other)

    def scaled(self, c) -> "Measure":
        if c == 0:
            return Measure()
        return Measure(tuple((p, a * c) for p, a in self.items))

    def restricted(self, points: Iterable[int]) -> "Measure":
        keep = set(points)
        return Measure(tuple((p, a) for p, a in self.items if p in keep))


def canonicalize(M: PointedMetricSpace, raw: Mapping) -> Measure:
    """Drop the base point (``delta_0`` is zero) and zero coefficients."""
    acc = {}
    for key, a in raw.items():
        p = M.index(key)
        a = to_scalar(a, M.mode)
        acc[p] = acc.get(p, 0) + a
    return Measure(tuple(sorted((p, a) for p, a in acc.items() if p != M.base and a != 0)))


def molecule(M: PointedMetricSpace, u, v) -> Measure:
    """``(delta_u - delta_v) / d(u, v)`` as a canonical measure."""
    u, v = M.index(u), M.index(v)
    if u == v:
        raise EqualWitnesses(u)
    w = 1 / M.dist[u][v]
    return canonicalize(M, {u: w, v: -w})


def dirac(M: PointedMetricSpace, p, c=1) -> Measure:
    return canonicalize(M, {M.index(p): to_scalar(c, M.mode)})


def evaluate(values: Sequence, mu: Measure):
    """Pairing ``<f, mu> = sum a_i f(x_i)``."""
    total = 0
    for p, a in mu.items:
        total = total + a * values[p]
    return total


@dataclass(frozen=True)
class LipschitzWitness:
    values: tuple
    lip: object

    def to_json(self):
        return {"values": [format_scalar(x) for x in self.values], "lip": format_scalar(self.lip)}


@dataclass(frozen=True)
class NormCertificate:
    value: object
    plan: tuple  # (source, target, mass) triples
    witness: LipschitzWitness

    def plan_cost(self, M: PointedMetricSpace):
        return sum((mass * M.dist[s][t] for s, t, mass in self.plan), M.zero())

    def to_json(self):
        return {
            "value": format_scalar(self.value),
            "plan": [[s, t, format_scalar(mass)] for s, t, mass in self.plan],
            "witness": [format_scalar(x) for x in self.witness.values],
        }


def _solve(M: PointedMetricSpace, mu: Measure):
    nodes = [M.base] + list(mu.support)
    coeffs = mu.as_dict()
    supply = [M.zero()] + [coeffs[p] for p in nodes[1:]]
    supply[0] = -sum(supply[1:], M.zero())
    cost = [[M.dist[a][b] for b in nodes] for a in nodes]
    if not M.exact:
        flows, pot = network_simplex(supply, cost, M.tol)
        value = sum((f * cost[s][t] for (s, t), f in flows.items()), M.zero())
        return nodes, cost, flows, pot, value
    # pivot on integers: Fraction arithmetic dominates the run time otherwise
    cs = lcm(*(c.denominator for row in cost for c in row))
    ss = lcm(*(a.denominator for a in supply))
    icost = [[int(c * cs) for c in row] for row in cost]
    iflows, ipot = network_simplex([int(a * ss) for a in supply], icost)
    flows = {arc: Fraction(f, ss) for arc, f in iflows.items()}
    value = Fraction(sum(f * icost[s][t] for (s, t), f in iflows.items()), cs * ss)
    return nodes, cost, flows, [Fraction(x, cs) for x in ipot], value


def kr_value(M: PointedMetricSpace, mu: Measure):
    """Norm value only (skips the certificate refinement)."""
    if not mu:
        return M.zero()
    return _solve(M, mu)[4]


def kr_norm(M: PointedMetricSpace, mu: Measure) -> NormCertificate:
    """Free-space norm of ``mu`` with a primal plan and a dual 1-Lipschitz witness.

    The dual witness is the pointwise-smallest optimal potential on
    ``supp(mu) + {base}``, extended to all of ``M`` by its smallest 1-Lipschitz
    extension.
    """
    zero = M.zero()
    if not mu:
        return NormCertificate(zero, (), LipschitzWitness(tuple([zero] * M.n), zero))
    nodes, cost, flows, _, value = _solve(M, mu)
    pot = lexmin_potentials(cost, flows, M.tol)
    plan = tuple(sorted((nodes[s], nodes[t], f) for (s, t), f in flows.items()))
    values = _extend_values(M, nodes, pot, 1, UPPER)
    return NormCertificate(value, plan, LipschitzWitness(tuple(values), lip_constant(M, values)))


def lip_constant(M: PointedMetricSpace, f: Sequence):
    """Best Lipschitz constant of ``f`` (given on every point of ``M``)."""
    if len(f) != M.n:
        raise FormatError(f"function has {len(f)} values for {M.n} points")
    best = M.zero()
    D = M.dist
    for p in range(M.n):
        fp, Dp = f[p], D[p]
        for q in range(p + 1, M.n):
            r = abs(fp - f[q]) / Dp[q]
            if r > best:
                best = r
    return best


def _worst_pair(M, points, values, L):
    worst, where = None, None
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            r = abs(values[p] - values[q]) / M.dist[p][q]
            if worst is None or r > worst:
                worst, where = r, (p, q)
    if worst is not None and worst > L + M.tol:
        raise NotLipschitzOnSubset(format_scalar(L), where, format_scalar(worst))


def _extend_values(M, points, vals, L, side):
    """Inf- (lower) or sup- (upper) convolution of the data ``points -> vals``."""
    out = []
    for m in range(M.n):
        Dm = M.dist[m]
        if side == LOWER:
            out.append(min(vals[k] + L * Dm[x] for k, x in enumerate(points)))
        else:
            out.append(max(vals[k] - L * Dm[x] for k, x in enumerate(points)))
    # data points keep their values exactly (float rounding could perturb them)
    for k, x in enumerate(points):
        out[x] = vals[k]
    return out


def _subset_data(M, N, f):
    ids = M.subset(N)
    if M.base not in ids:
        raise BaseNotInSubset(M.base)
    if isinstance(f, Mapping):
        data = {M.index(k): to_scalar(v, M.mode) for k, v in f.items()}
    else:
        if len(f) != len(ids):
            raise FormatError(f"{len(f)} values for a subset of {len(ids)} points")
        data = {p: to_scalar(v, M.mode) for p, v in zip(ids, f)}
    missing = [p for p in ids if p not in data]
    if missing:
        raise FormatError(f"no value given for points {missing}")
    if data[M.base] != 0 and abs(data[M.base]) > M.tol:
        raise BaseValueNonzero(format_scalar(data[M.base]))
    return ids, data


def mcshane_extend(M: PointedMetricSpace, N, f, L, side: str = LOWER) -> LipschitzWitness:
    """Extend an ``L``-Lipschitz function on ``N`` to ``M`` with the same constant.

    ``side="lower"`` is ``min_x f(x) + L d(x, m)`` (the largest extension),
    ``side="upper"`` is ``max_x f(x) - L d(x, m)`` (the smallest).
    """
    if side not in (LOWER, UPPER):
        raise FormatError(f"side must be 'lower' or 'upper', got {side!r}")
    L = to_scalar(L, M.mode)
    ids, data = _subset_data(M, N, f)
    full = [M.zero()] * M.n
    for p, v in data.items():
        full[p] = v
    _worst_pair(M, list(ids), full, L)
    values = _extend_values(M, list(ids), [data[p] for p in ids], L, side)
    return LipschitzWitness(tuple(values), lip_constant(M, values))


def ltp_extend(M: PointedMetricSpace, N, f, u, v, eps) -> LipschitzWitness:
    """Extension with a prescribed long trapezoid.

    ``f`` is 1-Lipschitz on ``N``; the result is ``(1+eps)``-Lipschitz, and
    when the trapezoid ratio of ``(u, v)`` over ``N`` is at least
    ``1/(1+eps)`` it also satisfies ``f(u) - f(v) >= d(u, v)``.
    """
    eps = to_scalar(eps, M.mode)
    if not eps > 0:
        raise FormatError(f"eps must be positive, got {eps}")
    u, v = M.index(u), M.index(v)
    if u == v:
        raise EqualWitnesses(u)
    ids, data = _subset_data(M, N, f)
    for w in (u, v):
        if w in ids:
            raise WitnessInSubset(w)
    full = [M.zero()] * M.n
    for p, val in data.items():
        full[p] = val
    _worst_pair(M, list(ids), full, 1)
    c = 1 + eps
    fu = min(data[x] + c * M.dist[x][u] for x in ids)
    fv = max([data[x] - c * M.dist[x][v] for x in ids] + [fu - c * M.dist[u][v]])
    points = list(ids) + [u, v]
    vals = [data[x] for x in ids] + [fu, fv]
    values = _extend_values(M, points, vals, c, LOWER)
    return LipschitzWitness(tuple(values), lip_constant(M, values))


# JSON ------------------------------------------------------------------


def measure_from_json(M: PointedMetricSpace, obj) -> Measure:
    if not isinstance(obj, dict) or not isinstance(obj.get("coeffs"), dict):
        raise FormatError("measure JSON must be {'coeffs': {point: scalar}}")
    raw = {}
    for key, a in obj["coeffs"].items():
        if M.exact and isinstance(a, float):
            raise FormatError(f"float coefficient {a!r} for an exact space")
        raw[key] = a
    return canonicalize(M, raw)


def measure_to_json(mu: Measure) -> dict:
    return {"coeffs": {str(p): format_scalar(a) for p, a in mu.items}}
