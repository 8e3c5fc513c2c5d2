import itertools
import random

import pytest

from pfaffbounds.errors import InconsistentFaces
from pfaffbounds.homology import (BettiVector, SimplicialComplex, SimplicialSet,
                                  alexander_cube_check, annulus, betti, betti_simplicial_set,
                                  boundary_squares_to_zero, cube_boundary, cube_grid, cycle,
                                  generalized_mayer_vietoris_check, mayer_vietoris_check,
                                  rank_gf2, rank_q, simplex_boundary, simplicial_set_of)

RP2 = SimplicialComplex([(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                         (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])


@pytest.mark.parametrize("field", ["q", "gf2"])
def test_reference_spaces(field):
    assert betti(simplex_boundary(2), field) == (1, 1)
    assert betti(simplex_boundary(3), field) == (1, 0, 1)
    assert betti(annulus(3), field) == (1, 1, 0)
    assert betti(SimplicialComplex([("a",), ("b",)]), field) == (2,)
    assert betti(cube_grid(3, 2), field) == (1, 0, 0, 0)


def test_fields_differ_on_projective_plane():
    assert RP2.euler_characteristic() == 1
    assert betti(RP2, "q") == (1, 0, 0)
    assert betti(RP2, "gf2") == (1, 1, 1)


def test_betti_vector():
    b = BettiVector([1, 2])
    assert b[5] == 0 and b.degree(-1) == 0 and b.total == 3
    assert b.reduced() == (0, 2)
    assert betti(SimplicialComplex()) == ()


def test_unknown_field():
    with pytest.raises(ValueError):
        betti(cycle(3), "r")


def test_closure_and_json():
    K = SimplicialComplex([(0, 1, 2)])
    assert K.f_vector() == [3, 3, 1]
    K2 = SimplicialComplex.from_dict(K.to_dict())
    assert K2 == K
    K3 = SimplicialComplex.from_dict({"vertices": [[0, 0], [0, 1]], "simplices": [[[0, 0], [0, 1]]]})
    assert betti(K3) == (1,)
    with pytest.raises(ValueError):
        SimplicialComplex([(0, 9)], vertices=[0])


def test_boundary_squares_to_zero():
    for K in (RP2, annulus(5), cube_grid(3, 2)):
        assert boundary_squares_to_zero(K)


def test_ranks():
    rows = [{0: 2, 1: 4}, {0: 1, 1: 2}, {2: 3}]
    assert rank_q(rows) == 2
    assert rank_gf2(rows) == 2  # second and third rows survive mod 2
    assert rank_gf2([{0: 2}, {1: 4}]) == 0
    rng = random.Random(3)
    import numpy as np
    for _ in range(30):
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        dense = [[rng.choice([-2, -1, 0, 0, 1, 3]) for _ in range(n)] for _ in range(m)]
        rows = [{j: v for j, v in enumerate(r) if v} for r in dense]
        assert rank_q(rows) == np.linalg.matrix_rank(np.array(dense, dtype=float))


def test_simplicial_set_models():
    point = SimplicialSet({0: ["v"]})
    assert betti_simplicial_set(point) == (1,)
    circle = SimplicialSet({0: ["v"], 1: ["e"]}, {"v": (), "e": ("v", "v")})
    assert betti_simplicial_set(circle) == (1, 1)
    # 2-sphere as one vertex and one 2-cell with all faces degenerate
    sphere = SimplicialSet({0: ["v"], 1: [], 2: ["t"]}, {"t": (None, None, None)})
    assert betti_simplicial_set(sphere) == (1, 0, 1)


def test_simplicial_set_of_complex_agrees():
    for K in (RP2, annulus(3), simplex_boundary(3)):
        for field in ("q", "gf2"):
            assert betti_simplicial_set(simplicial_set_of(K), field) == betti(K, field)


def test_inconsistent_faces():
    with pytest.raises(InconsistentFaces):
        betti_simplicial_set(SimplicialSet({0: ["v"], 1: ["e"]}, {"e": ("v",)}))
    with pytest.raises(InconsistentFaces):
        betti_simplicial_set(SimplicialSet({0: ["v"], 1: ["e"]}, {"e": ("v", "w")}))
    # faces that do not compose: d(d t) != 0
    bad = SimplicialSet({0: ["a", "b"], 1: ["x", "y", "z"], 2: ["t"]},
                        {"x": ("a", "b"), "y": ("a", "b"), "z": ("a", "a"), "t": ("x", "x", "y")})
    with pytest.raises(InconsistentFaces):
        betti_simplicial_set(bad)


def test_mayer_vietoris_examples():
    hexagon = cycle(6)
    a = hexagon.subcomplex([(0, 1), (1, 2), (2, 3)])
    b = hexagon.subcomplex([(3, 4), (4, 5), (5, 0)])
    rep = mayer_vietoris_check(a, b)
    assert rep.ok
    row = [c for c in rep.checks if c["degree"] == 1 and c["inequality"].startswith("union")][0]
    assert row["lhs"] == 1 and row["rhs"] == 2  # b_1 comes from b_0 of the two-point overlap
    disjoint = mayer_vietoris_check(SimplicialComplex([(0, 1)]), SimplicialComplex([(2, 3)]))
    assert disjoint.ok
    same = mayer_vietoris_check(a, a)
    assert same.ok and all(c["lhs"] == c["rhs"] for c in same.checks
                           if c["inequality"].startswith("sum"))


def _random_sub(K, rng):
    tops = [s for s in K.simplices if len(s) == 3]
    return K.subcomplex(rng.sample(tops, rng.randint(1, len(tops))))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_mayer_vietoris_random(m):
    rng = random.Random(m)
    square = cube_grid(2, 3)
    for _ in range(20):
        parts = [_random_sub(square, rng) for _ in range(m)]
        assert generalized_mayer_vietoris_check(parts).ok
        if m == 2:
            assert mayer_vietoris_check(*parts).ok


def test_alexander_duality():
    sq = cube_grid(2, 3)
    assert alexander_cube_check(cube_boundary(sq, 2, 3), 2, 3).ok
    assert alexander_cube_check(SimplicialComplex(), 2, 3).rows == [
        {"q": 0, "complement": 1, "dual": 1}, {"q": 1, "complement": 0, "dual": 0}]
    cube5 = cube_grid(2, 5)
    ring = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (4, 4), (4, 3), (4, 2), (4, 1), (3, 1), (2, 1)]
    X = cube5.subcomplex([(ring[i], ring[(i + 1) % 12]) for i in range(12)])
    rep = alexander_cube_check(X, 2, 5)
    assert rep.ok and rep.rows[0]["complement"] == 2
    cube3 = cube_grid(3, 4)
    slab = cube3.full_subcomplex(v for v in cube3.vertices if v[2] == 2)
    rep = alexander_cube_check(slab, 3, 4)
    assert rep.ok and [r["complement"] for r in rep.rows] == [2, 0, 0]


def test_alexander_coarse_grid_is_inconclusive():
    sq = cube_grid(2, 3)
    X = sq.subcomplex([((1, 1), (1, 2)), ((1, 2), (2, 2)), ((2, 1), (2, 2)), ((1, 1), (2, 1))])
    assert alexander_cube_check(X, 2, 3).status == "inconclusive"


def test_cube_grid_counts():
    K = cube_grid(2, 2)
    assert K.f_vector() == [9, 16, 8]
    assert betti(cube_boundary(cube_grid(3, 2), 3, 2)) == (1, 0, 1)
    assert len(list(itertools.permutations(range(3)))) * 8 == len(cube_grid(3, 2).simplices_of_dim(3))
