"""Octahedrality index over molecules, the LTP/octahedrality sandwich, and the
Frechet/Gateaux differentiability test for convex combinations of molecules."""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial
from typing import Sequence

from ._parallel import pmap
from .errors import (
    BaseNotInSubset,
    BetweennessHolds,
    EmptyFamily,
    InvalidCombination,
    TooFewPoints,
    ZeroMeasure,
)
from .ltp import ltp_ratio
from .metric import PointedMetricSpace, diameter, format_scalar, rebase, to_scalar
from .transport import (
    LOWER,
    LipschitzWitness,
    Measure,
    canonicalize,
    kr_value,
    mcshane_extend,
    molecule,
)


@dataclass(frozen=True)
class OctReport:
    family: tuple  # normalised measures
    index: object
    molecule: tuple
    values: tuple  # ||mu + mol|| at the best molecule, one per measure

    def to_json(self):
        return {
            "index": format_scalar(self.index),
            "molecule": list(self.molecule),
            "values": [format_scalar(x) for x in self.values],
        }


def _normalise(M, family):
    out = []
    for i, mu in enumerate(family):
        if not mu:
            raise ZeroMeasure(i)
        out.append(mu.scaled(1 / kr_value(M, mu)))
    return out


def _oct_row(M, family, u):
    best, arg = None, None
    for v in range(M.n):
        if v == u:
            continue
        mol = molecule(M, u, v)
        worst = None
        for mu in family:
            val = kr_value(M, mu + mol)
            if worst is None or val < worst:
                worst = val
                if best is not None and worst <= best + M.tol:
                    break
        if best is None or worst > best + M.tol:
            best, arg = worst, v
    return best, arg


def oct_index(M: PointedMetricSpace, family: Sequence[Measure], jobs=None) -> OctReport:
    """``max over molecules m of min over mu in family of ||mu/||mu|| + m||``.

    The maximum runs over every ordered molecule ``(u, v)``; ties go to the
    smallest ``(u, v)`` in index order.
    """
    if not family:
        raise EmptyFamily("molecule search needs at least one measure")
    if M.n < 2:
        raise TooFewPoints(M.n, 2)
    fam = _normalise(M, family)
    rows = pmap(partial(_oct_row, M, fam), range(M.n), jobs)
    best, mol = None, None
    for u, (val, v) in enumerate(rows):
        if best is None or val > best + M.tol:
            best, mol = val, (u, v)
    m = molecule(M, *mol)
    values = tuple(kr_value(M, mu + m) for mu in fam)
    return OctReport(tuple(fam), min(values), mol, values)


@dataclass(frozen=True)
class ChainReport:
    subset: tuple
    ratio: object
    oct: object
    lower: object
    upper: object
    holds: bool
    ltp_witness: tuple
    oct_molecule: tuple

    @property
    def margin(self):
        return min(self.oct - self.lower, self.upper - self.oct)

    def to_json(self):
        return {
            "subset": list(self.subset),
            "ratio": format_scalar(self.ratio),
            "oct": format_scalar(self.oct),
            "lower": format_scalar(self.lower),
            "upper": format_scalar(self.upper),
            "margin": format_scalar(self.margin),
            "holds": self.holds,
            "ltpWitness": list(self.ltp_witness),
            "octMolecule": list(self.oct_molecule),
        }


def subset_molecules(M: PointedMetricSpace, N) -> list:
    return [molecule(M, x, y) for x in N for y in N if x != y]


def chain_check(M: PointedMetricSpace, N, jobs=None) -> ChainReport:
    """Compare the LTP ratio ``R`` of ``N`` with the octahedrality index of its molecules.

    Checks ``2R <= OCT(mol(N)) <= 1 + R``.
    """
    N = M.subset(N)
    if len(N) < 2:
        raise TooFewPoints(len(N), 2)
    if M.base not in N:
        raise BaseNotInSubset(M.base)
    lt = ltp_ratio(M, N, jobs)
    oc = oct_index(M, subset_molecules(M, N), jobs)
    R = lt.ratio
    lower, upper = 2 * R, 1 + R
    holds = lower - M.tol <= oc.index <= upper + M.tol
    return ChainReport(N, R, oc.index, lower, upper, holds, lt.witness, oc.molecule)


# differentiability --------------------------------------------------------


@dataclass(frozen=True)
class ConvexMoleculeCombination:
    """``sum_i w_i (delta_{x_i} - delta_apex) / d(x_i, apex)``."""

    points: tuple
    weights: tuple
    apex: int = 0

    def check(self, M: PointedMetricSpace):
        if not self.points or len(self.points) != len(self.weights):
            raise InvalidCombination("need matching non-empty points and weights")
        pts = [M.index(p) for p in self.points]
        apex = M.index(self.apex)
        if len(set(pts)) != len(pts):
            raise InvalidCombination("points must be distinct", points=pts)
        if apex in pts:
            raise InvalidCombination("apex among the points", apex=apex)
        ws = [to_scalar(w, M.mode) for w in self.weights]
        if any(not w > 0 for w in ws):
            raise InvalidCombination("weights must be positive", weights=[format_scalar(w) for w in ws])
        if abs(sum(ws) - 1) > M.tol:
            raise InvalidCombination("weights must sum to 1", total=format_scalar(sum(ws)))
        return pts, ws, apex

    def to_measure(self, M: PointedMetricSpace) -> Measure:
        pts, ws, apex = self.check(M)
        raw = {apex: 0}
        for p, w in zip(pts, ws):
            c = w / M.dist[p][apex]
            raw[p] = raw.get(p, 0) + c
            raw[apex] -= c
        return canonicalize(M, raw)


def combination_from_measure(M: PointedMetricSpace, mu: Measure, apex=None) -> ConvexMoleculeCombination:
    """Read a positive measure as a convex combination of molecules towards ``apex``.

    Weights are ``a_i d(x_i, apex)`` rescaled to sum to 1, which only
    changes the norm of the measure.
    """
    apex = M.base if apex is None else M.index(apex)
    if apex != M.base:
        raise InvalidCombination("measures are canonical relative to the base; use the base as apex")
    if not mu:
        raise InvalidCombination("empty measure")
    pts, ws = [], []
    for p, a in mu.items:
        if not a > 0:
            raise InvalidCombination("coefficients must be positive", point=p)
        pts.append(p)
        ws.append(a * M.dist[p][apex])
    total = sum(ws)
    return ConvexMoleculeCombination(tuple(pts), tuple(w / total for w in ws), apex)


@dataclass(frozen=True)
class DiffReport:
    differentiable: bool
    apex: int
    witness: int | None = None
    f1: LipschitzWitness | None = None
    f2: LipschitzWitness | None = None

    def to_json(self):
        out = {"frechet": self.differentiable, "gateaux": self.differentiable, "apex": self.apex}
        if not self.differentiable:
            out.update(witness=self.witness, f1=self.f1.to_json(), f2=self.f2.to_json())
        return out


def _betweenness_index(M, pts, apex, z):
    """First ``i`` with ``d(x_i, apex) == d(x_i, z) + d(z, apex)``, else ``None``."""
    slack = M.tol * diameter(M)
    D = M.dist
    for i, x in enumerate(pts):
        if abs(D[x][apex] - D[x][z] - D[z][apex]) <= slack:
            return i
    return None


def gateaux_witnesses(M: PointedMetricSpace, phi: ConvexMoleculeCombination, z):
    """Two different norm-one functionals norming ``phi``, built at a point ``z``
    that is not between any ``x_i`` and the apex.

    Values are relative to the apex (``f(apex) == 0``).
    """
    pts, _, apex = phi.check(M)
    z = M.index(z)
    i = _betweenness_index(M, pts, apex, z)
    if i is not None:
        raise BetweennessHolds(z, i)
    Mb = rebase(M, apex) if apex != M.base else M
    D = Mb.dist
    domain = [apex] + pts + [z]
    shared = [Mb.zero()] + [D[apex][x] for x in pts]
    f1_z = D[apex][z]
    f2_z = max([-D[apex][z]] + [D[x][apex] - D[z][x] for x in pts])
    f1 = mcshane_extend(Mb, domain, shared + [f1_z], 1, LOWER)
    f2 = mcshane_extend(Mb, domain, shared + [f2_z], 1, LOWER)
    return f1, f2


def frechet_check(M: PointedMetricSpace, phi: ConvexMoleculeCombination) -> DiffReport:
    """Betweenness test: ``phi`` is a Frechet (equivalently Gateaux) point of the
    free-space norm iff every ``z`` lies metrically between some ``x_i`` and
    the apex.  On failure the first offending ``z`` and two distinct norming
    functionals are returned.
    """
    pts, _, apex = phi.check(M)
    for z in range(M.n):
        if _betweenness_index(M, pts, apex, z) is None:
            f1, f2 = gateaux_witnesses(M, phi, z)
            return DiffReport(False, apex, z, f1, f2)
    return DiffReport(True, apex)
