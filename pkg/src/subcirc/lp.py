"""Exact linear programming and small feasibility oracles.

``linprog_exact`` is a dense two-phase simplex over Fractions with Bland's
rule; it is meant for the small systems that show up in support and
reducibility tests.  ``fm_feasible`` is Fourier-Motzkin elimination, used
as an independent route for tiny dimensions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import frac

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    # for infeasible problems: y over (ub rows, eq rows) with y.A >= 0 on the
    # sign-constrained columns, = 0 on free ones, y_ub >= 0 and y.b < 0
    farkas: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = tab[r]
    inv = 1 / row[c]
    if inv != 1:
        tab[r] = row = [x * inv for x in row]
    for i, other in enumerate(tab):
        if i == r:
            continue
        f = other[c]
        if f:
            tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(tab, basis, ncols, allowed):
    """Maximize the objective stored in the last row (as reduced costs).

    The objective row holds ``-c`` so that a negative entry marks an
    improving column.  Returns False on unboundedness.
    """
    obj = len(tab) - 1
    while True:
        col = next((j for j in range(ncols) if allowed[j] and tab[obj][j] < 0), None)
        if col is None:
            return True
        best = None
        for i in range(obj):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], col)


def linprog_exact(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                  A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                  free: Sequence[int] = ()) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are non-negative except those listed in ``free``.
    """
    n = len(c)
    free = sorted(set(free))
    # split free variables x_j = x_j+ - x_j-
    ext = n + len(free)

    def expand(row):
        row = [frac(v) for v in row]
        return row + [-row[j] for j in free]

    cc = expand(c)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    nslack = len(A_ub)
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * nslack
        slack[k] = Fraction(1)
        rows.append(expand(row) + slack)
        rhs.append(frac(b))
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row) + [Fraction(0)] * nslack)
        rhs.append(frac(b))
    nvar = ext + nslack
    m = len(rows)
    flipped = [False] * m
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            flipped[i] = True

    # phase 1 with one artificial per row
    ncols = nvar + m
    tab = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(rows[i] + art + [rhs[i]])
    basis = [nvar + i for i in range(m)]
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(nvar):
            obj[j] -= tab[i][j]
        obj[-1] -= tab[i][-1]
    tab.append(obj)
    allowed = [True] * ncols
    _simplex(tab, basis, ncols, allowed)
    if tab[-1][-1] != 0:
        # phase-1 duals: the objective row under artificial i holds y_i + 1
        y = [tab[-1][nvar + i] - 1 for i in range(m)]
        y = tuple(-v if f else v for v, f in zip(y, flipped))
        return LPResult(INFEASIBLE, farkas=y)
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= nvar:
            col = next((j for j in range(nvar) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    keep = [i for i in range(m) if basis[i] < nvar]
    tab = [tab[i] for i in keep]
    basis = [basis[i] for i in keep]
    for j in range(nvar, ncols):
        allowed[j] = False

    obj = [Fraction(0)] * (ncols + 1)
    for j in range(ext):
        obj[j] = -cc[j]
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            obj = [a - f * r for a, r in zip(obj, tab[i])]
    tab.append(obj)
    if not _simplex(tab, basis, ncols, allowed):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * nvar
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    sol = x[:n]
    for k, j in enumerate(free):
        sol[j] -= x[n + k]
    return LPResult(OPTIMAL, tuple(sol), tab[-1][-1])


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), nvars=None, free=()):
    """Any point of ``{x >= 0 : A_ub x <= b_ub, A_eq x = b_eq}`` or None."""
    if nvars is None:
        nvars = len((list(A_ub) + list(A_eq))[0])
    res = linprog_exact([0] * nvars, A_ub, b_ub, A_eq, b_eq, free=free)
    return res.x if res.status == OPTIMAL else None


def fm_feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    """Decide ``{y : A y <= b} != {}`` by Fourier-Motzkin elimination.

    Exponential in the worst case; only use for a handful of variables.
    """
    rows = [([frac(v) for v in a], frac(bi)) for a, bi in zip(A, b)]
    if not rows:
        return True
    nvars = len(rows[0][0])
    for k in range(nvars):
        pos, neg, rest = [], [], []
        for a, bi in rows:
            if a[k] > 0:
                pos.append((a, bi))
            elif a[k] < 0:
                neg.append((a, bi))
            else:
                rest.append((a, bi))
        new = rest
        for ap, bp in pos:
            for an, bn in neg:
                sp, sn = ap[k], -an[k]
                new.append(([sn * x + sp * y for x, y in zip(ap, an)], sn * bp + sp * bn))
        # drop exact duplicates to slow the blow-up
        seen = set()
        rows = []
        for a, bi in new:
            key = (tuple(a), bi)
            if key not in seen:
                seen.add(key)
                rows.append((a, bi))
    return all(bi >= 0 for _, bi in rows)
