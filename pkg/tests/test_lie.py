from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from projflat.errors import NotInAlgebra
from projflat.lie import bracket, build_algebra, coordinates, dual_basis_H, jacobi_defect, simple_root_value
from projflat.matrix import R, Matrix


@pytest.mark.parametrize("field, n, dim", [("R", 2, 3), ("H", 2, 15), ("R", 6, 35), ("H", 3, 35)])
def test_dimension(field, n, dim):
    assert build_algebra(field, n).dim == dim


def test_sl2_basis_and_root_count():
    assert build_algebra("R", 2).names == ("H1", "E12", "E21")
    model = build_algebra("R", 6)
    assert sum(model.root_of(a) is not None for a in range(model.dim)) == 30


@pytest.mark.parametrize("n, i, diag", [(2, 1, [Fraction(1, 2), Fraction(-1, 2)]),
                                        (4, 2, [Fraction(1, 2)] * 2 + [Fraction(-1, 2)] * 2)])
def test_dual_basis_examples(n, i, diag):
    assert dual_basis_H(n, i) == Matrix.diag(R, diag)


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_dual_basis_pairs_with_simple_roots(n):
    for i in range(1, n):
        for k in range(1, n):
            assert simple_root_value(k, dual_basis_H(n, i)) == int(i == k)


def test_bracket_examples():
    m2 = build_algebra("R", 2)
    assert bracket(m2, "E12", "E21") == (2, 0, 0)
    m4 = build_algebra("R", 4)
    assert not any(bracket(m4, "H1", "H3"))
    br = bracket(m4, "E12", "E24")
    assert br[m4.idx("E14")] == 1 and sum(map(abs, br)) == 1


def test_coordinates_examples():
    m4 = build_algebra("R", 4)
    x = Matrix.unit(R, 4, 0, 0) - Matrix.unit(R, 4, 1, 1)
    want = [0] * m4.dim
    want[m4.idx("H1")], want[m4.idx("H2")] = 2, -1
    assert list(coordinates(m4, x)) == want
    assert coordinates(m4, m4.matrices[m4.idx("H1")])[m4.idx("H1")] == 1
    with pytest.raises(NotInAlgebra):
        coordinates(m4, Matrix.identity(R, 4))


@pytest.mark.parametrize("field, n", [("R", 2), ("R", 5), ("H", 2), ("H", 3)])
def test_coordinates_round_trip(field, n):
    model = build_algebra(field, n)
    rng = random.Random(n)
    for _ in range(10):
        vec = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(model.dim)]
        assert list(coordinates(model, model.realize(vec))) == vec


def test_quaternion_trace_needs_real_part():
    model = build_algebra("H", 2)
    i11 = model.matrices[model.idx("iE11")]
    assert coordinates(model, i11)[model.idx("iE11")] == 1


@pytest.mark.parametrize("field, n", [("R", 2), ("R", 3), ("R", 4), ("H", 2)])
def test_jacobi_all_triples(field, n):
    model = build_algebra(field, n)
    for a, b, c in itertools.combinations(range(model.dim), 3):
        assert not jacobi_defect(model, a, b, c)


@pytest.mark.parametrize("field, n", [("R", 5), ("R", 6), ("R", 7), ("H", 3)])
def test_jacobi_random_triples(field, n):
    model = build_algebra(field, n)
    rng = random.Random(1000 * n + len(field))
    for _ in range(400):
        assert not jacobi_defect(model, *rng.sample(range(model.dim), 3))


def test_root_spaces_add():
    model = build_algebra("R", 5)
    for (a, b), vec in model.structure.items():
        ra, rb = model.root_of(a), model.root_of(b)
        if ra and rb and ra[1] == rb[0] and ra[0] != rb[1]:
            assert set(vec) == {model.idx(f"E{ra[0]}{rb[1]}")}


def test_subalgebra_closure_check():
    model = build_algebra("R", 3)
    assert model.subalgebra(["H1", "H2", "E12"]).dim == 3
    with pytest.raises(ValueError):
        model.subalgebra(["E12", "E21"])
