"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator); vectors are tuples and matrices are sequences of row
sequences.  Nothing here ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import InfeasibleError

Vector = tuple
Matrix = Sequence[Sequence]


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing to convert float {x!r} to an exact rational")
    return Fraction(x)


def vec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> list[tuple[Fraction, ...]]:
    return [vec(r) for r in rows]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def transpose(m: Matrix, ncols: int | None = None) -> list[tuple]:
    if not m:
        return [() for _ in range(ncols or 0)]
    return [tuple(col) for col in zip(*m)]


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def to_str(x: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"``), sign on the numerator."""
    return str(frac(x))


def from_str(s) -> Fraction:
    if isinstance(s, float):
        raise TypeError("rationals must be serialized as strings or ints")
    return Fraction(s)


def integer_scaling(v: Sequence) -> tuple[int, ...]:
    """Smallest positive multiple of ``v`` with integer entries (not reduced)."""
    fs = [frac(x) for x in v]
    den = 1
    for f in fs:
        den = den * f.denominator // gcd(den, f.denominator)
    return tuple(int(f * den) for f in fs)


def primitive_ray(v: Sequence) -> tuple[int, ...]:
    """Unique positive multiple of ``v`` with coprime integer entries."""
    ints = integer_scaling(v)
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ValueError("primitive_ray of the zero vector")
    return tuple(x // g for x in ints)


def primitive_int(v: Sequence[int]) -> tuple[int, ...]:
    """Fast path of :func:`primitive_ray` for integer input; zero stays zero."""
    g = reduce(gcd, v, 0)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------

def _int_rows(m: Matrix) -> list[list[int]]:
    return [list(integer_scaling(r)) for r in m]


def bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix (in place).

    Returns the echelon rows (only the non-zero ones) and pivot columns.
    Every intermediate entry is a minor of the input, so growth stays
    polynomial.
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    a = [list(r) for r in rows]
    nrows = len(a)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            if f == 0:
                if prev != 1 or piv != 1:
                    for j in range(c + 1, ncols):
                        ai[j] = (piv * ai[j]) // prev
                continue
            ar = a[r]
            for j in range(c + 1, ncols):
                ai[j] = (piv * ai[j] - f * ar[j]) // prev
            ai[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Matrix) -> int:
    """Exact rank via fraction-free Gaussian elimination."""
    rows = _int_rows(m)
    if not rows or not rows[0]:
        return 0
    return len(bareiss_echelon(rows)[1])


def int_rank(rows: list[list[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(bareiss_echelon(rows)[1])


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals."""
    a = [list(map(frac, r)) for r in m]
    if not a:
        return [], []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_basis(m: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of ``{x : M x = 0}`` in primitive integer form.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if not m:
        n = ncols or 0
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    n = len(m[0])
    red, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(primitive_ray(x))
    return basis


def solve_linear(m: Matrix, b: Sequence) -> tuple[Fraction, ...]:
    """One exact solution of ``M x = b``.

    Raises :class:`InfeasibleError` when ``b`` is outside the column space.
    Free variables are set to zero.
    """
    if len(m) != len(b):
        raise ValueError("right-hand side length does not match row count")
    if not m:
        return ()
    n = len(m[0])
    aug = [list(map(frac, row)) + [frac(bi)] for row, bi in zip(m, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        raise InfeasibleError("right-hand side is not in the column space")
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def row_basis(rows: Sequence[Sequence], start: Sequence[Sequence] = ()) -> list[int]:
    """Indices of a maximal independent subset of ``rows``, chosen greedily.

    Rows in ``start`` are taken as already selected (they are not indexed).
    """
    chosen: list[int] = []
    echelon: list[list[int]] = [list(integer_scaling(r)) for r in start]
    current = int_rank(echelon) if echelon else 0
    if current:
        echelon, _ = bareiss_echelon(echelon)
    for i, r in enumerate(rows):
        cand = echelon + [list(integer_scaling(r))]
        e, piv = bareiss_echelon(cand)
        if len(piv) > current:
            chosen.append(i)
            echelon = e
            current = len(piv)
    return chosen


def inverse(m: Matrix) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(map(frac, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def affinely_independent(points: Sequence[Sequence]) -> bool:
    if len(points) <= 1:
        return True
    p0 = points[0]
    diffs = [[frac(a) - frac(b) for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs) == len(diffs)
