import math
import random
from fractions import Fraction as F

import pytest

from lipfree import errors
from lipfree.gallery import (
    Bijection,
    configuration_space,
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
    gen_tree_metric,
    tree_cluster_edges,
    tree_hull_projection,
)
from lipfree.ltp import ltp_modulus
from lipfree.metric import FLOAT, four_point_condition, min_separation, scale_space, space_to_json, validate_metric


def _revalidate(M):
    return validate_metric([list(r) for r in M.dist], M.base, M.names, M.mode)


@pytest.mark.parametrize(
    "M",
    [
        gen_ejenega(1),
        gen_ejenega(6),
        gen_graph_m(2),
        gen_graph_m(6),
        gen_4branch(2),
        gen_4branch(5),
        gen_equilateral(4, F(3, 2)),
        gen_geometric_line(6),
        gen_dyadic_cluster(5),
        gen_tree_cluster(F(1, 8), 3),
    ],
    ids=lambda M: "n%d" % M.n,
)
def test_generators_give_valid_metrics(M):
    assert _revalidate(M) == M
    assert M.names[M.base] in ("0", "e0", "a")


def test_generator_shapes():
    M = gen_ejenega(3)
    assert M.names == ("0", "x1", "x2", "x3", "z") and M.dist[0][4] == 2
    G = gen_graph_m(3)
    assert G.names[:2] == ("0", "z") and G.dist[2][3] == 2 and G.dist[0][1] == 2
    B = gen_4branch(2)
    assert B.names[B.base] == "0" and B.dist[B.index("alpha")][B.index("z")] == 3
    assert gen_geometric_line(3).names == ("0", "1", "2", "4", "8")
    assert gen_dyadic_cluster(2).names == ("0", "4", "7/2", "13/4")


def test_generator_errors():
    with pytest.raises(errors.ZeroCount):
        gen_ejenega(0)
    with pytest.raises(errors.ZeroCount):
        gen_graph_m(1)
    with pytest.raises(errors.InvalidParameter):
        gen_equilateral(3, 0)
    with pytest.raises(errors.InvalidParameter):
        gen_tree_cluster(F(3, 2))
    with pytest.raises(errors.BadExponent):
        gen_ellp_embed(1, 4)
    with pytest.raises(errors.BadExponent):
        configuration_space([[0], [1]], F(1, 2))


def test_ell2_distances():
    conf, _ = gen_ellp_embed(2, 5)
    D = conf.space.dist
    assert D[0][1] == pytest.approx(2)
    assert D[0][2] == pytest.approx(math.sqrt(3))
    assert D[2][3] == pytest.approx(2)
    assert conf.space.mode == FLOAT


@pytest.mark.parametrize("p", [1.5, 2, 3, 10])
def test_distortion_formula(p):
    _, b = gen_ellp_embed(p, 8)
    d = distortion(b).distortion
    assert abs(d - ellp_distortion_formula(p)) < 1e-9 and d < 2


def test_formula_endpoints():
    assert ellp_distortion_formula(1) == 2
    assert ellp_distortion_formula(math.inf) == 2


def test_graph_m_to_equilateral_is_two():
    assert distortion(Bijection.identity(gen_graph_m(5), gen_equilateral(7))).distortion == 2


def test_distortion_scale_invariant_and_checks():
    A, B = gen_graph_m(4), gen_equilateral(6)
    d = distortion(Bijection.identity(A, B)).distortion
    assert distortion(Bijection.identity(scale_space(A, 7), scale_space(B, F(1, 3)))).distortion == d
    with pytest.raises(errors.SizeMismatch):
        distortion(Bijection.identity(A, gen_equilateral(5)))
    with pytest.raises(errors.NotABijection):
        distortion(Bijection(A, B, (0, 0, 1, 2, 3, 4)))


def test_small_distortion_images_fail_the_trapezoid_test():
    # perturbed copies of graph_m with distortion below 2 keep a positive modulus at {0, z};
    # shrinking the 2's and stretching the 1's keeps the triangle inequality
    rng = random.Random(12)
    for _ in range(40):
        G = gen_graph_m(rng.randint(2, 6))
        n = G.n
        D = [[0.0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                f = rng.uniform(0.7, 1.0) if G.dist[a][b] == 2 else rng.uniform(1.0, 1.4)
                D[a][b] = D[b][a] = float(G.dist[a][b]) * f
        img = validate_metric(D, 0, G.names, FLOAT)
        assert distortion(Bijection.identity(G, img)).distortion < 2
        assert ltp_modulus(img, [0, 1]) > 0


@pytest.mark.parametrize("p", [1.5, 2, 3, 10])
def test_ellp_images_have_positive_modulus(p):
    conf, _ = gen_ellp_embed(p, 8)
    assert ltp_modulus(conf.space, [0, 1]) > 0


def test_configuration_exact_cases():
    c1 = configuration_space([[0, 0], [1, 2], [F(1, 2), 3]], 1)
    assert c1.space.exact and c1.space.dist[1][2] == F(3, 2)
    cinf = configuration_space([[0, 0], [1, 2]], "inf")
    assert cinf.space.dist[0][1] == 2
    obj = cinf.to_json()
    assert obj["p"] == "inf" and obj["coordinates"] == [["0", "0"], ["1", "2"]]


def test_tree_metrics_satisfy_four_point_condition():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(2, 9)
        edges = [(i, rng.randrange(i), F(rng.randint(1, 9), rng.randint(1, 4))) for i in range(1, n)]
        marked = rng.sample(range(n), rng.randint(1, n))
        M = gen_tree_metric(edges, marked)
        assert four_point_condition(M)


def test_tree_errors():
    with pytest.raises(errors.InvalidParameter):
        gen_tree_metric([(0, 1, 1), (1, 2, 1), (2, 0, 1)], [0, 1])
    with pytest.raises(errors.InvalidParameter):
        gen_tree_metric([(0, 1, 0)], [0, 1])
    with pytest.raises(errors.InvalidParameter):
        gen_tree_metric([(0, 1, 1)], [0, 5])


@pytest.mark.parametrize("eps", [F(1, 4), F(1, 8)])
def test_tree_cluster_construction(eps):
    edges, marked = tree_cluster_edges(eps, 3)
    M = gen_tree_cluster(eps, 3)
    assert four_point_condition(M)
    sep = min_separation(M)
    leaves = [m for m in marked if m.startswith("l")]
    proj = tree_hull_projection(edges, ["a", "b"], leaves)
    assert len(set(proj.values())) == len(leaves)
    g = gen_tree_metric(edges, ["a", "b"] + sorted(set(proj.values())))
    spread = max(g.dist[g.index(p)][g.index(q)] for p in proj.values() for q in proj.values())
    assert spread < eps * sep
    assert ltp_modulus(M, ["a", "b"]) <= eps


def test_gen_json_is_stable():
    M = gen_4branch(3)
    assert space_to_json(M) == space_to_json(gen_4branch(3))
