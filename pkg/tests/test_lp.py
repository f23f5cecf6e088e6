from fractions import Fraction as F

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from subcirc.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, fm_feasible, linprog_exact


def test_small_optimum():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    res = linprog_exact([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == OPTIMAL
    assert res.x == (F(8, 5), F(6, 5)) and res.value == F(14, 5)


def test_unbounded_and_free():
    assert linprog_exact([1], A_ub=[[-1]], b_ub=[0]).status == UNBOUNDED
    res = linprog_exact([-1], A_ub=[[-1]], b_ub=[3], free=[0])
    assert res.status == OPTIMAL and res.x == (-3,)


def _check_farkas(A_ub, b_ub, A_eq, b_eq, free, y):
    rows = list(A_ub) + list(A_eq)
    rhs = list(b_ub) + list(b_eq)
    n = len(rows[0])
    ya = [sum(F(yi) * r[j] for yi, r in zip(y, rows)) for j in range(n)]
    assert all(v >= 0 for v in y[:len(A_ub)])
    assert all(ya[j] == 0 if j in free else ya[j] >= 0 for j in range(n))
    assert sum(F(yi) * b for yi, b in zip(y, rhs)) < 0


def test_infeasible_with_farkas():
    A_eq, b_eq = [[1, 1]], [-1]
    res = linprog_exact([0, 0], A_eq=A_eq, b_eq=b_eq)
    assert res.status == INFEASIBLE
    _check_farkas([], [], A_eq, b_eq, set(), res.farkas)


@st.composite
def lp_instances(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 5))
    A = draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m))
    b = draw(st.lists(st.integers(-4, 4), min_size=m, max_size=m))
    k = draw(st.integers(0, 2))
    E = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=k, max_size=k))
    e = draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k))
    free = set(draw(st.lists(st.integers(0, n - 1), max_size=n)))
    return A, b, E, e, free


@given(lp_instances())
def test_feasibility_agrees_with_highs_and_certificates_check(inst):
    A, b, E, e, free = inst
    n = len(A[0])
    res = linprog_exact([0] * n, A, b, E, e, free=free)
    bounds = [(None, None) if j in free else (0, None) for j in range(n)]
    ref = linprog(np.zeros(n), A_ub=A, b_ub=b, A_eq=E or None, b_eq=e or None,
                  bounds=bounds, method="highs")
    assert (res.status == OPTIMAL) == (ref.status == 0)
    if res.status == OPTIMAL:
        assert all(sum(F(a) * x for a, x in zip(row, res.x)) <= bi for row, bi in zip(A, b))
        assert all(sum(F(a) * x for a, x in zip(row, res.x)) == bi for row, bi in zip(E, e))
        assert all(res.x[j] >= 0 for j in range(n) if j not in free)
    else:
        _check_farkas(A, b, E, e, free, res.farkas)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=6),
       st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_fourier_motzkin_agrees_with_simplex(A, b):
    b = b[:len(A)]
    simplex = linprog_exact([0, 0], A_ub=A, b_ub=b, free=[0, 1]).status == OPTIMAL
    assert fm_feasible(A, b) == simplex
