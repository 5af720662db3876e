from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_fracs
from projflat.errors import SizeCapExceeded
from projflat.matrix import H, R, Matrix, det_rational, inverse_rational, rank, re_trace, rref
from projflat.poly import MINUS_INFINITY, MultiPoly, det_bareiss, det_minors, linear_factor_divides, poly_det
from projflat.quaternion import Quaternion, quat_mul, re_part
from projflat.rational import from_str, sqrt_exact, to_str, vec_to_str

quats = st.builds(Quaternion, small_fracs, small_fracs, small_fracs, small_fracs)
I, J, K = (Quaternion.unit(u) for u in "ijk")


# -- quaternions --------------------------------------------------------------

def test_defining_relations():
    assert quat_mul(I, I) == -1
    assert quat_mul(I, J) == K
    assert quat_mul(J, K) == I
    assert quat_mul(K, I) == J
    assert quat_mul(J, I) == -K


def test_bilinear_expansion():
    assert quat_mul(Quaternion(1, 1), Quaternion(1, 0, 1)) == Quaternion(1, 1, 1, 1)


@given(quats, quats, quats)
def test_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(quats, quats)
def test_real_part_symmetric(p, q):
    assert re_part(p * q) == re_part(q * p)


@given(quats)
def test_norm_via_conjugate(p):
    assert p * p.conj() == p.norm2()


# -- rationals ------------------------------------------------------------------

@given(st.fractions(max_denominator=10**6))
def test_rational_round_trip(q):
    assert from_str(to_str(q)) == q


def test_rational_wire_format():
    assert to_str(Fraction(-3, 16)) == "-3/16"
    assert to_str(5) == "5"
    assert vec_to_str([Fraction(1, 2), 0]) == ["1/2", "0"]
    assert from_str("−1/4") == Fraction(-1, 4)


@pytest.mark.parametrize("q, root", [(Fraction(9, 4), Fraction(3, 2)), (Fraction(0), Fraction(0)),
                                     (Fraction(2), None), (Fraction(-1), None)])
def test_sqrt_exact(q, root):
    assert sqrt_exact(q) == root


# -- matrices -------------------------------------------------------------------

def test_re_trace_examples():
    assert re_trace(Matrix.identity(R, 3)) == 3
    assert re_trace(Matrix.diag(H, [I, I])) == 0
    e12, e21 = Matrix.unit(R, 2, 0, 1), Matrix.unit(R, 2, 1, 0)
    assert re_trace(e12 @ e21) == 1


def _random_quat_matrix(rng, n):
    def q():
        return Quaternion(*(Fraction(rng.randint(-3, 3)) for _ in range(4)))
    return Matrix.from_rows(H, [[q() for _ in range(n)] for _ in range(n)])


def test_quaternion_re_trace_symmetry():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 3)
        x, y = _random_quat_matrix(rng, n), _random_quat_matrix(rng, n)
        assert re_trace(x @ y) == re_trace(y @ x)


def test_matrix_product_associative():
    rng = random.Random(5)
    a, b, c = (_random_quat_matrix(rng, 3) for _ in range(3))
    assert (a @ b) @ c == a @ (b @ c)


def test_sparse_storage_drops_zeros():
    m = Matrix(R, (2, 2), {(0, 0): 0, (1, 1): Fraction(1, 2)})
    assert m.entries == {(1, 1): Fraction(1, 2)}
    assert (m - m).is_zero()


def test_dense_helpers():
    rows = [[1, 2], [3, 4]]
    assert det_rational(rows) == -2
    inv = inverse_rational(rows)
    assert inv == [[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]]
    assert rank([[1, 2], [2, 4]]) == 1
    red, piv = rref([[0, 2, 4], [1, 1, 1]])
    assert piv == [0, 1] and red[1] == [0, 1, 2]
    with pytest.raises(ZeroDivisionError):
        inverse_rational([[1, 2], [2, 4]])


# -- polynomials ------------------------------------------------------------------

def xs(n):
    return [MultiPoly.var(i, n) for i in range(n)]


def test_zero_polynomial_degree():
    assert MultiPoly.zero(3).degree() == MINUS_INFINITY
    assert not MultiPoly(2, {(1, 0): 0}).terms


def test_small_determinants():
    x1, x2, x3, x4 = xs(4)
    assert poly_det([[x1]]) == x1
    assert poly_det([[x1, x2], [x3, x4]]) == x1 * x4 - x2 * x3
    assert poly_det([[x1, x2], [x3, x4]], strategy="minor-expansion") == x1 * x4 - x2 * x3


def test_size_cap():
    n = 5
    grid = [[MultiPoly.constant(int(i == j), 1) for j in range(n)] for i in range(n)]
    with pytest.raises(SizeCapExceeded):
        poly_det(grid, cap=4)
    assert poly_det(grid, cap=5) == MultiPoly.constant(1, 1)


def _random_linear_grid(rng, size, nvars):
    def entry():
        coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.6 else 0 for _ in range(nvars)]
        return MultiPoly.linear(coeffs, Fraction(rng.randint(-2, 2)))
    return [[entry() for _ in range(size)] for _ in range(size)]


@pytest.mark.parametrize("size", [1, 2, 3, 4, 5, 6])
def test_strategies_agree(size):
    rng = random.Random(100 + size)
    for _ in range(4):
        grid = _random_linear_grid(rng, size, 3)
        assert det_bareiss(grid) == det_minors(grid)


def test_alternating_and_column_operations():
    rng = random.Random(3)
    grid = _random_linear_grid(rng, 4, 3)
    base = poly_det(grid)
    swapped = [row[:] for row in grid]
    for row in swapped:
        row[0], row[2] = row[2], row[0]
    assert poly_det(swapped) == -base
    mult = MultiPoly.var(1, 3) + 2
    added = [row[:1] + [row[1] + mult * row[3]] + row[2:] for row in grid]
    assert poly_det(added) == base


@given(st.lists(small_fracs, min_size=3, max_size=3), st.lists(small_fracs, min_size=3, max_size=3))
def test_product_degree_adds(a, b):
    p = MultiPoly.linear(a, 1) * MultiPoly.linear(b, -1) + MultiPoly.var(0, 3) ** 3
    q = MultiPoly.linear(b, 2) ** 2
    if p and q:
        assert (p * q).degree() == p.degree() + q.degree()


def test_linear_factor_examples():
    x, y, z = xs(3)
    ok, quo = linear_factor_divides((x + y) ** 2, x + y)
    assert ok and quo == x + y
    assert linear_factor_divides(x * x + y * y, x + y) == (False, None)
    half = Fraction(1, 2)
    phi = (z - x * half) ** 2 * (z + x * half)
    ok, quo = linear_factor_divides(phi, z - x * half)
    assert ok and quo == (z - x * half) * (z + x * half)
    with pytest.raises(ValueError):
        linear_factor_divides(phi, x * y)


def test_serialization_order_and_round_trip():
    x, y = xs(2)
    p = x * y * 3 - y * Fraction(1, 2) + x ** 2
    ser = p.to_serial()
    assert ser[0][0] == [2, 0] and ser[-1] == ([0, 1], "-1/2")
    assert MultiPoly.from_serial(2, ser) == p


@given(st.lists(small_fracs, min_size=2, max_size=2), st.lists(small_fracs, min_size=2, max_size=2))
def test_substitute_matches_evaluation(a, pt):
    x, y = xs(2)
    p = (x + y * a[0]) ** 2 - x * a[1]
    val = MultiPoly.constant(pt[1], 2)
    assert p.substitute(1, val).evaluate([pt[0], 0]) == p.evaluate(pt)


def test_exact_division():
    x, y = xs(2)
    assert ((x + y) * (x - y)).exquo(x - y) == x + y
    with pytest.raises(ArithmeticError):
        (x * x + 1).exquo(x + y)
