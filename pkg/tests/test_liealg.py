import random

import numpy as np
import pytest

from qutrit_orbits import liealg
from qutrit_orbits.liealg import (
    CARTAN, DIM, E6Elt, ad_matrix, algebra, bracket, build_e6, canonical_generators, killing, theta,
)
from qutrit_orbits.linalg import int_qmat


def _random_elt(rng, support=None):
    idx = support if support is not None else range(DIM)
    return E6Elt([rng.randint(-3, 3) if k in idx else 0 for k in range(DIM)])


def test_root_system_shape():
    roots, struct, gens = build_e6()
    assert len(roots.roots) == 72
    assert set(roots.roots) == {tuple(-x for x in r) for r in roots.roots}
    assert all(-3 <= r[0] <= 3 for r in roots.roots)
    assert roots.alpha5 == tuple(-x for x in roots.highest_root)
    assert struct.shape == (DIM, DIM, DIM)


def test_extended_cartan_matrix():
    C = CARTAN
    assert C.shape == (7, 7)
    assert (np.diag(C) == 2).all()
    assert (C == C.T).all()  # simply laced
    # affine diagram: null vector given by the marks, grading node 0 has mark 3
    marks = np.array([3, 1, 2, 1, 2, 1, 2])
    assert not (C @ marks).any()


def test_grading_dimensions():
    alg = algebra()
    assert DIM == 78
    assert [int((alg.grades == g).sum()) for g in (0, 1, -1)] == [24, 27, 27]
    assert sum(1 for r in alg.roots.roots if r[0] % 3 == 0) == 18


def test_grade_zero_roots_split_into_three_a2():
    alg = algebra()
    g0 = [r for r in alg.roots.roots if r[0] % 3 == 0]
    # connected components of the "non-orthogonal" graph
    comps, seen = [], set()
    for r in g0:
        if r in seen:
            continue
        stack, comp = [r], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack += [y for y in g0 if liealg.inner(x, y) != 0 and y not in comp]
        seen |= comp
        comps.append(comp)
    assert sorted(len(c) for c in comps) == [6, 6, 6]


def test_canonical_generator_relations():
    g = canonical_generators()
    for i in range(7):
        for j in range(7):
            assert bracket(g.h[i], g.x[j]) == g.x[j].scale(int(CARTAN[j, i]))
            assert bracket(g.h[i], g.y[j]) == g.y[j].scale(-int(CARTAN[j, i]))
            want = g.h[i] if i == j else E6Elt.zero()
            assert bracket(g.x[i], g.y[j]) == want


def test_bracket_examples():
    g = canonical_generators()
    assert bracket(g.h[1], g.x[1]) == g.x[1].scale(2)
    assert bracket(g.x[0], g.y[0]) == g.h[0]
    x = _random_elt(random.Random(1))
    assert bracket(x, x).is_zero()


def test_bracket_antisymmetric_and_graded():
    rng = random.Random(2)
    alg = algebra()
    for _ in range(20):
        a, b = rng.randrange(DIM), rng.randrange(DIM)
        x, y = E6Elt.basis(a), E6Elt.basis(b)
        z = bracket(x, y)
        assert z == -bracket(y, x)
        if not z.is_zero():
            assert (z.homogeneous_grade() - alg.grades[a] - alg.grades[b]) % 3 == 0


def test_jacobi_sampled():
    assert algebra().jacobi_defect(range(0, DIM, 5)) == 0


def test_theta_is_order_three_automorphism():
    rng = random.Random(3)
    for _ in range(10):
        x, y = _random_elt(rng), _random_elt(rng)
        assert theta(bracket(x, y)) == bracket(theta(x), theta(y))
        assert theta(theta(theta(x))) == x


def test_ad_matrix():
    rng = random.Random(4)
    x, y = _random_elt(rng), _random_elt(rng)
    A = ad_matrix(x)
    img = [sum((A[k][j] * y.coords[j] for j in range(DIM)), liealg.ZERO) for k in range(DIM)]
    assert E6Elt(img) == bracket(x, y)
    assert sum((A[k][k] for k in range(DIM)), liealg.ZERO) == 0
    assert all(not c for row in ad_matrix(E6Elt.zero()) for c in row)


def test_ad_of_cartan_is_diagonal_in_root_basis():
    alg = algebra()
    h = canonical_generators().h[1]
    A = ad_matrix(h)
    for k in range(DIM):
        for j in range(DIM):
            if j != k:
                assert not A[k][j]
    for k in range(6, DIM):
        r = alg.root_of(k)
        assert A[k][k] == bracket(h, E6Elt.basis(k)).coords[k]
        assert r is not None


def test_killing_form():
    alg = algebra()
    K = alg.killing_matrix
    assert (K == K.T).all()
    assert int_qmat(K).det() != 0
    # grading orthogonality: only g_i x g_-i pairs survive
    for a in range(DIM):
        for b in np.nonzero(K[a])[0]:
            assert (alg.grades[a] + alg.grades[b]) % 3 == 0
    rng = random.Random(5)
    x, y, z = _random_elt(rng), _random_elt(rng), _random_elt(rng)
    assert killing(bracket(z, x), y) + killing(x, bracket(z, y)) == 0


def test_killing_of_coroot_is_root_string_sum():
    h = canonical_generators().h[1]
    total = 0
    for k in range(6, DIM):
        total += int(bracket(h, E6Elt.basis(k)).coords[k].rational()) ** 2
    assert killing(h, h) == total
    assert total == 48  # 4 * dual Coxeter number (12) for a coroot


def test_dump_structure_constants(tmp_path):
    path = tmp_path / "consts.txt"
    n = liealg.dump_structure_constants(path)
    lines = path.read_text().splitlines()
    assert n == len(lines) > 0
    assert all(line.rsplit("|", 1)[1].strip() in ("1", "-1") for line in lines)


@pytest.mark.slow
def test_jacobi_full():
    assert algebra().jacobi_defect() == 0
