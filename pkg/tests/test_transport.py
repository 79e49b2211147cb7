import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipfree import errors
from lipfree.gallery import gen_ejenega, gen_geometric_line
from lipfree.ltp import pair_ratio
from lipfree.metric import FLOAT, l1_sum, l1_sum_maps, scale_space, validate_metric
from lipfree.transport import (
    Measure,
    canonicalize,
    dirac,
    evaluate,
    kr_norm,
    kr_value,
    lip_constant,
    ltp_extend,
    mcshane_extend,
    measure_from_json,
    measure_to_json,
    molecule,
)
from oracles import dual_vertex_norm, linprog_norm, random_measure, random_space

seeds = st.integers(0, 10**9)


def _check_certificate(M, mu):
    cert = kr_norm(M, mu)
    assert cert.plan_cost(M) == cert.value
    assert cert.witness.lip <= 1
    assert cert.witness.values[M.base] == 0
    assert evaluate(cert.witness.values, mu) == cert.value
    # plan moves mu to zero
    net = {}
    for s, t, mass in cert.plan:
        assert mass > 0
        net[s] = net.get(s, 0) + mass
        net[t] = net.get(t, 0) - mass
    for p, a in mu.items:
        assert net.get(p, 0) == a
    return cert


def test_duality_on_random_spaces():
    rng = random.Random(20240)
    for _ in range(220):
        M = random_space(rng, rng.randint(1, 10))
        if M.n == 1:
            assert kr_norm(M, canonicalize(M, {})).value == 0
            continue
        _check_certificate(M, canonicalize(M, random_measure(rng, M)))


def test_dual_vertex_oracle_small_spaces():
    rng = random.Random(77)
    for _ in range(120):
        M = random_space(rng, rng.randint(2, 6))
        raw = random_measure(rng, M)
        assert kr_value(M, canonicalize(M, raw)) == dual_vertex_norm(M, raw)


def test_scipy_linprog_agrees():
    rng = random.Random(5)
    for _ in range(30):
        M = random_space(rng, rng.randint(2, 9))
        raw = random_measure(rng, M)
        assert abs(float(kr_value(M, canonicalize(M, raw))) - linprog_norm(M, raw)) < 1e-7


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 12))
def test_molecules_have_norm_one(seed, n):
    rng = random.Random(seed)
    M = random_space(rng, n)
    u, v = rng.sample(range(n), 2)
    assert kr_norm(M, molecule(M, u, v)).value == 1


@settings(max_examples=80, deadline=None)
@given(seeds, st.integers(2, 8))
def test_norm_axioms(seed, n):
    rng = random.Random(seed)
    M = random_space(rng, n)
    mu = canonicalize(M, random_measure(rng, M))
    nu = canonicalize(M, random_measure(rng, M))
    a = F(rng.randint(-7, 7), rng.randint(1, 4))
    assert kr_value(M, mu + nu) <= kr_value(M, mu) + kr_value(M, nu)
    assert kr_value(M, mu.scaled(a)) == abs(a) * kr_value(M, mu)
    assert kr_value(M, mu) > 0 or not mu
    s = F(rng.randint(1, 9), rng.randint(1, 9))
    assert kr_value(scale_space(M, s), mu) == s * kr_value(M, mu)


def test_zero_measure_and_base_dirac():
    M = gen_ejenega(3)
    assert kr_norm(M, Measure()).value == 0
    assert not dirac(M, "0", 5)
    assert kr_value(M, dirac(M, "z", F(1, 2))) == 1


def test_witness_is_pointwise_minimal_on_support():
    # on the geometric line only f = identity is optimal for delta_16
    M = gen_geometric_line(4)
    cert = kr_norm(M, dirac(M, "16"))
    assert cert.witness.values[M.index("16")] == 16
    assert cert.witness.values == tuple(max(F(0), 16 - abs(16 - int(n))) for n in M.names)


def test_ejenega_norm_example():
    M = gen_ejenega(10)
    mu = canonicalize(M, {"z": F(1, 2), "x1": 1, "x2": -1})
    assert kr_norm(M, mu).value == F(3, 2)


def test_l1_sum_additivity():
    rng = random.Random(404)
    for _ in range(110):
        T1, T2 = random_space(rng, rng.randint(1, 5)), random_space(rng, rng.randint(1, 5))
        M = l1_sum(T1, T2)
        m1, m2 = l1_sum_maps(T1, T2)
        mu1 = canonicalize(T1, random_measure(rng, T1)) if T1.n > 1 else Measure()
        mu2 = canonicalize(T2, random_measure(rng, T2)) if T2.n > 1 else Measure()
        glued = {m1[p]: a for p, a in mu1.items} | {m2[p]: a for p, a in mu2.items}
        mu = canonicalize(M, glued)
        assert kr_value(M, mu) == kr_value(T1, mu1) + kr_value(T2, mu2)
        assert kr_value(M, mu.restricted([m1[p] for p in range(T1.n)])) == kr_value(T1, mu1)


def test_float_mode_norm():
    M = validate_metric([[0, 1.0, 2.0], [1.0, 0, 1.0], [2.0, 1.0, 0]], mode=FLOAT)
    mu = canonicalize(M, {1: 1.0, 2: -0.5})
    cert = kr_norm(M, mu)
    assert abs(cert.value - 1.0) < 1e-9
    assert abs(cert.plan_cost(M) - cert.value) < 1e-9


def test_measure_json():
    M = gen_ejenega(2)
    mu = measure_from_json(M, {"coeffs": {"z": "1/2", "1": -1}})
    assert mu.as_dict() == {3: F(1, 2), 1: F(-1)}
    assert measure_from_json(M, measure_to_json(mu)) == mu
    with pytest.raises(errors.FormatError):
        measure_from_json(M, {"coeffs": {"z": 0.5}})
    with pytest.raises(errors.FormatError):
        measure_from_json(M, [1])


def test_lip_constant_and_mcshane():
    M = gen_geometric_line(3)
    f = [F(0), F(1), F(2), F(4), F(8)]
    assert lip_constant(M, f) == 1
    lo = mcshane_extend(M, ["0", "4"], [0, 4], 1, "lower")
    hi = mcshane_extend(M, ["0", "4"], [0, 4], 1, "upper")
    assert lo.lip <= 1 and hi.lip <= 1
    assert all(h <= l for h, l in zip(hi.values, lo.values))
    with pytest.raises(errors.NotLipschitzOnSubset):
        mcshane_extend(M, ["0", "1"], [0, 3], 1)
    with pytest.raises(errors.BaseNotInSubset):
        mcshane_extend(M, ["1", "2"], [0, 1], 1)
    with pytest.raises(errors.BaseValueNonzero):
        mcshane_extend(M, ["0", "1"], [1, 1], 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 8))
def test_mcshane_extension_keeps_constant(seed, n):
    rng = random.Random(seed)
    M = random_space(rng, n)
    N = [M.base] + rng.sample([p for p in range(n) if p != M.base], rng.randint(0, n - 1))
    # restrict a 1-Lipschitz function of M to N
    anchor = rng.randrange(n)
    f = [M.dist[p][anchor] for p in range(n)]
    f = [x - f[M.base] for x in f]
    for side in ("lower", "upper"):
        w = mcshane_extend(M, N, [f[p] for p in N], 1, side)
        assert w.lip <= 1
        assert all(w.values[p] == f[p] for p in N)


def _random_extension_instance(rng):
    while True:
        n = rng.randint(4, 8)
        M = random_space(rng, n)
        others = [p for p in range(n) if p != M.base]
        rng.shuffle(others)
        k = rng.randint(1, n - 3)
        N = [M.base] + others[:k]
        u, v = others[k], others[k + 1]
        eps = F(rng.randint(1, 8), 8)
        if pair_ratio(M, N, u, v) >= 1 / (1 + eps):
            anchor = rng.randrange(n)
            f = [M.dist[p][anchor] - M.dist[M.base][anchor] for p in N]
            return M, N, f, u, v, eps


def test_ltp_extend_guarantee():
    rng = random.Random(31337)
    for _ in range(110):
        M, N, f, u, v, eps = _random_extension_instance(rng)
        w = ltp_extend(M, N, f, u, v, eps)
        assert w.lip <= 1 + eps
        assert w.values[u] - w.values[v] >= M.dist[u][v]
        assert lip_constant(M, w.values) == w.lip
        assert all(w.values[p] == x for p, x in zip(N, f))


def test_ltp_extend_errors():
    M = gen_geometric_line(4)
    with pytest.raises(errors.WitnessInSubset):
        ltp_extend(M, ["0", "1"], [0, 1], "1", "2", F(1, 4))
    with pytest.raises(errors.EqualWitnesses):
        ltp_extend(M, ["0", "1"], [0, 1], "4", "4", F(1, 4))
    with pytest.raises(errors.FormatError):
        ltp_extend(M, ["0", "1"], [0, 1], "4", "2", 0)


def test_ltp_extend_worked_values():
    M = gen_geometric_line(4)
    w = ltp_extend(M, ["0", "1"], [0, 1], "16", "2", F(1, 4))
    assert w.values[M.index("16")] == F(79, 4)
    assert w.values[M.index("2")] == F(9, 4)
