"""Double description method on integer data.

``cone_rays`` converts ``{x : A x >= 0, E x = 0}`` into generators.  The
lineality space is split off exactly: pick a row basis ``B`` of the
constraint matrix (equations first), change coordinates to ``u = B_I x``
where ``B_I`` are the basis inequalities, and run the incremental
algorithm on the pointed cone ``{u >= 0, C u >= 0}`` that remains.
Rays are mapped back into the orthogonal complement of the lineality
space, so the returned representatives are canonical.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .exactmath import (bareiss_echelon, integer_scaling, inverse, kernel_basis,
                        primitive_int, row_basis, solve_linear, transpose)

ALGEBRAIC = "algebraic"
COMBINATORIAL = "combinatorial"


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _rank_ok(z: int, nbasis: int, extra_rows: list[list[int]], target: int) -> bool:
    """Rank of the tight constraint rows indexed by bitmask ``z`` equals ``target``.

    The first ``nbasis`` constraints are the coordinate functionals
    ``u_j >= 0``; each one contributes a unit row, so only the added rows
    restricted to the remaining columns need elimination.
    """
    unit = [j for j in range(nbasis) if z >> j & 1]
    k = len(unit)
    if k >= target:
        return k == target  # extra rows can only add rank; caller filters k > target
    unit_set = set(unit)
    cols = [j for j in range(nbasis) if j not in unit_set]
    rows = []
    zz = z >> nbasis
    idx = 0
    while zz:
        if zz & 1:
            row = extra_rows[idx]
            rows.append([row[j] for j in cols])
        zz >>= 1
        idx += 1
    if not rows:
        return k == target
    return k + len(bareiss_echelon(rows)[1]) == target


def _dd_pointed(nbasis: int, constraints: list[list[int]], adjacency: str):
    """Extreme rays of ``{u in Z^nbasis : u >= 0, c.u >= 0 for c in constraints}``.

    Returns a list of (ray, tight_bitmask).  Bit j < nbasis marks u_j = 0,
    bit nbasis + i marks constraint i tight.
    """
    d = nbasis
    full = (1 << d) - 1
    rays = [([int(i == j) for j in range(d)], full & ~(1 << i)) for i in range(d)]
    added: list[list[int]] = []
    for ci, c in enumerate(constraints):
        bit = 1 << (d + ci)
        pos, neg, zero = [], [], []
        for k, (r, z) in enumerate(rays):
            s = sum(a * b for a, b in zip(c, r) if b)
            if s > 0:
                pos.append((k, r, z, s))
            elif s < 0:
                neg.append((k, r, z, s))
            else:
                zero.append((r, z | bit))
        added.append(c)
        new = []
        need = d - 2
        for ip, rp, zp, sp in pos:
            for iq, rn, zn, sn in neg:
                z = zp & zn
                if _popcount(z) < need:
                    continue
                if adjacency == ALGEBRAIC:
                    if not _rank_ok(z, d, added, need):
                        continue
                elif any((zo & z) == z for k, (_, zo) in enumerate(rays)
                         if k != ip and k != iq):
                    continue
                ray = [sp * a - sn * b for a, b in zip(rn, rp)]
                new.append((list(primitive_int(ray)), z | bit))
        rays = [(r, z) for _, r, z, _ in pos] + zero + new
    return rays


class ConeConversion:
    """Result of :func:`cone_rays`: rays, lineality and tight sets."""

    def __init__(self, rays, lineality, tight):
        self.rays = rays
        self.lineality = lineality
        self.tight = tight  # per ray: frozenset of inequality indices (input order)


def cone_rays(ineqs: Sequence[Sequence], eqs: Sequence[Sequence], dim: int,
              adjacency: str = ALGEBRAIC) -> ConeConversion:
    """Generators of ``{x in Q^dim : a.x >= 0 (a in ineqs), e.x = 0 (e in eqs)}``.

    Returns primitive integer rays orthogonal to the lineality space, a
    primitive basis of the lineality space, and for each ray the set of
    input inequalities tight at it.
    """
    A = [list(integer_scaling(a)) for a in ineqs]
    E = [list(integer_scaling(e)) for e in eqs]
    A = [a for a in A if any(a)]
    E = [e for e in E if any(e)]
    # deterministic insertion order: ascending lexicographic canonical normal
    order = sorted(range(len(A)), key=lambda i: tuple(primitive_int(A[i])))
    A_sorted = [A[i] for i in order]

    eq_basis_idx = row_basis(E)
    E_basis = [E[i] for i in eq_basis_idx]
    ineq_basis_local = row_basis(A_sorted, start=E_basis)
    B_I = [A_sorted[i] for i in ineq_basis_local]
    B = E_basis + B_I
    lineality = kernel_basis(B, ncols=dim) if B else kernel_basis([], ncols=dim)
    nb = len(B_I)
    if nb == 0:
        return ConeConversion([], lineality, [])

    # express the remaining inequalities in u-coordinates
    Bt = transpose(B)
    in_basis = set(ineq_basis_local)
    rest_local = [i for i in range(len(A_sorted)) if i not in in_basis]
    ne = len(E_basis)
    constraints = []
    for i in rest_local:
        coeffs = solve_linear(Bt, A_sorted[i])
        constraints.append(list(integer_scaling(coeffs[ne:])))
    rays_u = _dd_pointed(nb, constraints, adjacency)

    # map back: x = B^T (B B^T)^{-1} (0_E, u)
    gram = [[sum(a * b for a, b in zip(r1, r2)) for r2 in B] for r1 in B]
    ginv = inverse(gram)
    back = [[sum(Fraction(Bt[i][k]) * ginv[k][ne + j] for k in range(len(B)))
             for j in range(nb)] for i in range(dim)]
    den = 1
    for row in back:
        for f in row:
            den = den * f.denominator // gcd(den, f.denominator)
    back_int = [[int(f * den) for f in row] for row in back]

    rays = [primitive_int([sum(a * b for a, b in zip(row, u)) for row in back_int])
            for u, _ in rays_u]
    # tight sets over every input row, indexed as the caller passed them
    nz = [i for i, a in enumerate(integer_scaling(x) for x in ineqs) if any(a)]
    tight = [frozenset(nz[i] for i, a in enumerate(A) if sum(p * q for p, q in zip(a, x)) == 0)
             for x in rays]
    order_key = sorted(range(len(rays)), key=lambda k: rays[k])
    return ConeConversion([rays[k] for k in order_key], lineality,
                          [tight[k] for k in order_key])
