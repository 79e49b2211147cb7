"""Reproduce the worked examples as a pass/fail table."""

from __future__ import annotations

from fractions import Fraction

from ._parallel import pmap
from .gallery import (
    Bijection,
    distortion,
    ellp_distortion_formula,
    gen_4branch,
    gen_dyadic_cluster,
    gen_ejenega,
    gen_ellp_embed,
    gen_equilateral,
    gen_geometric_line,
    gen_graph_m,
    gen_tree_cluster,
)
from .ltp import all_pairs_profile, ltp_ratio, pair_ratio, ramsey_extract
from .metric import format_scalar, l1_sum, l1_sum_maps
from .octa import chain_check, combination_from_measure, frechet_check, oct_index
from .transport import canonicalize, dirac, kr_value, ltp_extend


def _fmt(x):
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction, float)):
        return format_scalar(x)
    return x


def ejenega_threshold():
    M = gen_ejenega(10)
    got = ltp_ratio(M, ["0", "z"]).modulus
    return Fraction(1, 3), got, got == Fraction(1, 3)


def ejenega_trapezoid():
    M = gen_ejenega(10)
    got = pair_ratio(M, ["0", "z"], "x1", "x2")
    return Fraction(2, 3), got, got == Fraction(2, 3)


def ejenega_norm():
    M = gen_ejenega(10)
    got = kr_value(M, canonicalize(M, {"z": Fraction(1, 2), "x1": 1, "x2": -1}))
    return Fraction(3, 2), got, got == Fraction(3, 2)


def ejenega_oct():
    M = gen_ejenega(10)
    rep = oct_index(M, [dirac(M, "z", Fraction(1, 2)), dirac(M, "z", Fraction(-1, 2))])
    return Fraction(3, 2), rep.index, rep.index == Fraction(3, 2)


def ejenega_sandwich():
    M = gen_ejenega(10)
    rep = chain_check(M, ["0", "z"])
    got = [rep.lower, rep.oct, rep.upper]
    ok = rep.holds and got == [Fraction(4, 3), Fraction(3, 2), Fraction(5, 3)]
    return ["4/3", "3/2", "5/3"], got, ok


def ejenega_frechet():
    got = []
    for k in range(1, 11):
        M = gen_ejenega(k)
        got.append(frechet_check(M, combination_from_measure(M, dirac(M, "z"))).differentiable)
    return [True] * 10, got, all(got)


def fourbranch_pairs():
    M = gen_4branch(5)
    mods = {m for _, m in all_pairs_profile(M)}
    return [0], sorted(mods), mods == {0}


def fourbranch_subset():
    M = gen_4branch(5)
    got = ltp_ratio(M, ["alpha", "beta", "0", "z"]).modulus
    return Fraction(1, 3), got, got == Fraction(1, 3)


def fourbranch_frechet():
    M = gen_4branch(5)
    rep = frechet_check(M, combination_from_measure(M, dirac(M, "z")))
    a = M.index("alpha")
    got = [rep.differentiable, M.names[rep.witness], rep.f1.values[a], rep.f2.values[a]]
    return [False, "alpha", 1, -1], got, got == [False, "alpha", 1, -1]


def ramsey_ejenega():
    M = gen_ejenega(20)
    rep = ramsey_extract(M, ["0", "z"], Fraction(1, 5))
    got = [len(rep.excluded_x), len(rep.excluded_y), len(rep.subset)]
    return [0, 0, M.n], got, got == [0, 0, M.n]


def ellp_distortion():
    got, want = [], []
    for p in (1.5, 2, 3, 10):
        _, b = gen_ellp_embed(p, 8)
        got.append(distortion(b).distortion)
        want.append(ellp_distortion_formula(p))
    ok = all(abs(g - w) <= 1e-9 and g < 2 for g, w in zip(got, want))
    return want, got, ok


def ellp_obstruction():
    got = []
    for p in (1.5, 2, 3, 10):
        conf, _ = gen_ellp_embed(p, 8)
        got.append(ltp_ratio(conf.space, [0, 1]).modulus)
    return "> 0", got, all(m > 0 for m in got)


def graph_m_equilateral():
    b = Bijection.identity(gen_graph_m(5), gen_equilateral(7, 1))
    got = distortion(b).distortion
    return 2, got, got == 2


def geometric_line_decay():
    mods = [ltp_ratio(gen_geometric_line(k), [0, 1]).modulus for k in range(1, 13)]
    ok = all(b <= a for a, b in zip(mods, mods[1:]))
    ok = ok and all(m <= Fraction(2, 2**k + 1) for k, m in zip(range(1, 13), mods))
    return "nonincreasing, <= 2/(2^k+1)", mods, ok


def dyadic_decay():
    mods = [ltp_ratio(gen_dyadic_cluster(k), [0, 1]).modulus for k in range(1, 9)]
    ok = all(b <= a for a, b in zip(mods, mods[1:])) and mods[-1] < Fraction(1, 100)
    return "nonincreasing to 0", mods, ok


def tree_cluster():
    got = []
    for eps in (Fraction(1, 4), Fraction(1, 8)):
        M = gen_tree_cluster(eps, 3)
        got.append(ltp_ratio(M, ["a", "b"]).modulus)
    ok = got[0] <= Fraction(1, 4) and got[1] <= Fraction(1, 8)
    return ["<= 1/4", "<= 1/8"], got, ok


def l1_sum_gluing():
    T1, T2 = gen_ejenega(3), gen_equilateral(3, 1)
    M = l1_sum(T1, T2)
    m1, m2 = l1_sum_maps(T1, T2)
    d = M.dist[m1[T1.index("z")]][m2[1]]
    mu1 = canonicalize(T1, {"z": 1, "x1": Fraction(-2, 3)})
    mu2 = canonicalize(T2, {1: Fraction(1, 2), 2: -3})
    mu = canonicalize(M, {m1[p]: a for p, a in mu1.items} | {m2[p]: a for p, a in mu2.items})
    total, parts = kr_value(M, mu), kr_value(T1, mu1) + kr_value(T2, mu2)
    return [3, parts], [d, total], d == 3 and total == parts


def extension_example():
    M = gen_geometric_line(4)
    w = ltp_extend(M, ["0", "1"], [0, 1], "16", "2", Fraction(1, 4))
    u, v = M.index("16"), M.index("2")
    got = [w.values[u], w.values[v]]
    want = [Fraction(79, 4), Fraction(9, 4)]
    return want, got, got == want and w.lip <= Fraction(5, 4)


CHECKS = [
    ejenega_threshold,
    ejenega_trapezoid,
    ejenega_norm,
    ejenega_oct,
    ejenega_sandwich,
    ejenega_frechet,
    fourbranch_pairs,
    fourbranch_subset,
    fourbranch_frechet,
    ramsey_ejenega,
    ellp_distortion,
    ellp_obstruction,
    graph_m_equilateral,
    geometric_line_decay,
    dyadic_decay,
    tree_cluster,
    l1_sum_gluing,
    extension_example,
]


def _run(check):
    want, got, ok = check()
    return {"name": check.__name__, "expected": _fmt(want), "got": _fmt(got), "pass": bool(ok)}


def replicate_all(jobs=None) -> list[dict]:
    return pmap(_run, CHECKS, jobs)

