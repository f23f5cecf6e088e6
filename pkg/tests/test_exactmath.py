import math
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from subcirc.errors import InfeasibleError
from subcirc.exactmath import (affinely_independent, from_str, inverse, kernel_basis,
                               mat_vec, primitive_ray, rank, solve_linear, to_str,
                               transpose)

small = st.integers(-9, 9)


def matrices(max_rows=8, max_cols=8):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rank_examples():
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0] * 4 for _ in range(3)]) == 0
    grid = [(i, j) for i in range(1, 4) for j in range(1, 4)]
    assert rank(transpose(grid)) == 2


def test_kernel_examples():
    assert kernel_basis([[1, 0], [0, 1]]) == []
    ks = kernel_basis([[1, 1, 1]])
    assert len(ks) == 2 and all(sum(k) == 0 for k in ks)
    assert rank(ks) == 2
    # intersect with the sum-zero hyperplane: the kernel of both rows is (1,-2,1)
    # with the sum-zero row added the kernel is spanned by (1,-2,1)
    (k,) = kernel_basis([[0, 1, 2], [1, 1, 1]])
    assert primitive_ray(k) in ((1, -2, 1), (-1, 2, -1))


def test_solve_linear_examples():
    assert solve_linear([[1, 0], [0, 1]], [F(3), F(-2)]) == (3, -2)
    x = solve_linear([[1, 1]], [3])
    assert x[0] + x[1] == 3
    with pytest.raises(InfeasibleError):
        solve_linear([[1, 1], [1, 1]], [1, 2])


def test_primitive_ray_examples():
    assert primitive_ray((F(1, 2), -1, F(1, 2))) == (1, -2, 1)
    assert primitive_ray((2, -4, 2)) == (1, -2, 1)
    assert primitive_ray((0, 3, 1, -4)) == (0, 3, 1, -4)
    with pytest.raises(ValueError):
        primitive_ray((0, 0))


def test_serialization_round_trip():
    for x in (F(0), F(-7), F(3, 4), F(-22, 7), F(10**30 + 1, 3)):
        assert from_str(to_str(x)) == x
    assert to_str(F(-3, 4)) == "-3/4"
    assert to_str(F(5)) == "5"
    with pytest.raises(TypeError):
        from_str(0.5)


def test_affine_independence():
    assert affinely_independent([(0, 0), (1, 0), (0, 1)])
    assert not affinely_independent([(0, 0), (1, 1), (2, 2)])


@given(matrices())
def test_rank_transpose(m):
    assert rank(m) == rank(transpose(m))


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@given(matrices())
def test_kernel_basis(m):
    ks = kernel_basis(m)
    ncols = len(m[0])
    assert len(ks) == ncols - rank(m)
    for k in ks:
        assert all(v == 0 for v in mat_vec(m, k))
        assert math.gcd(*k) == 1


@given(st.lists(small, min_size=1, max_size=8).filter(any),
       st.fractions(min_value=F(1, 100), max_value=100))
def test_primitive_ray_idempotent_and_scale_free(v, c):
    p = primitive_ray(v)
    assert primitive_ray(p) == p
    assert primitive_ray([c * x for x in v]) == p


@given(matrices(5, 5))
def test_solve_linear_post_check(m):
    x0 = [F(i + 1, 2) for i in range(len(m[0]))]
    b = mat_vec(m, x0)
    x = solve_linear(m, b)
    assert mat_vec(m, x) == b


def test_inverse():
    a = [[2, 1], [7, 4]]
    inv = inverse(a)
    prod = [[sum(F(a[i][k]) * inv[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
