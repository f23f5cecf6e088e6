"""Reference instances with known answers, used by ``subcirc verify-paper`` and the test suite."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .circuits import (HALFLINE, INTERVAL, LINE, SupportSet, circuits_univariate,
                       enumerate_circuits, univariate_set)
from .exactmath import primitive_ray
from .polyhedra import Polyhedron
from .reduction import build_circuit_graph, combinatorial_witness, reduced_circuits

F = Fraction

R2_SUPPORT4 = [
    ((1, 0, 1), (0, -4, 0), (0, 2, 0)),
    ((0, 1, 0), (1, -3, 0), (0, 0, 1)),
]

# circuits with negative entry at (1, 2), support size at least 3
ORTHANT_BETA12 = [
    ((1, -2, 1), (0, 0, 0), (0, 0, 0)),
    ((1, -2, 0), (0, 0, 1), (0, 0, 0)),
    ((1, -2, 0), (0, 0, 0), (0, 0, 1)),
    ((0, -2, 1), (1, 0, 0), (0, 0, 0)),
    ((0, -2, 0), (1, 0, 1), (0, 0, 0)),
    ((0, -2, 0), (1, 0, 0), (0, 0, 1)),
    ((0, -2, 1), (0, 0, 0), (1, 0, 0)),
    ((0, -2, 0), (0, 0, 1), (1, 0, 0)),
    ((0, -2, 0), (0, 0, 0), (1, 0, 1)),
]

# all cube circuits with negative entry at (1, 2)
CUBE_BETA12 = [
    ((1, -1, 0), (0, 0, 0), (0, 0, 0)),
    ((0, -1, 0), (1, 0, 0), (0, 0, 0)),
    ((0, -1, 0), (0, 0, 0), (1, 0, 0)),
    ((0, -1, 0), (0, 1, 0), (0, 0, 0)),
    ((0, -1, 0), (0, 0, 0), (0, 1, 0)),
    ((0, -1, 1), (0, 0, 0), (0, 0, 0)),
    ((0, -1, 0), (0, 0, 1), (0, 0, 0)),
    ((0, -1, 0), (0, 0, 0), (0, 0, 1)),
    ((1, -2, 1), (0, 0, 0), (0, 0, 0)),
    ((0, -2, 1), (1, 0, 0), (0, 0, 0)),
    ((0, -2, 1), (0, 0, 0), (1, 0, 0)),
    ((1, -2, 0), (0, 0, 1), (0, 0, 0)),
    ((0, -2, 0), (1, 0, 1), (0, 0, 0)),
    ((0, -2, 0), (0, 0, 1), (1, 0, 0)),
    ((1, -2, 0), (0, 0, 0), (0, 0, 1)),
    ((0, -2, 0), (1, 0, 0), (0, 0, 1)),
    ((0, -2, 0), (0, 0, 0), (1, 0, 1)),
]

ORTHANT_TABLE = [[8, 14, 2], [14, 21, 2], [2, 2, 0]]
CUBE_TABLE = [[8, 17, 8], [17, 32, 17], [8, 17, 8]]
CUBE4_TABLE = [[15, 47, 47, 15], [47, 136, 136, 47], [47, 136, 136, 47], [15, 47, 47, 15]]

REDUCED_CUBE_SUPPORT4 = ((0, F(1, 3), 0), (F(1, 3), -1, 0), (0, 0, F(1, 3)))

# two circuits of one combinatorial reduction step on the 3x3 cube
CUBE_WITNESS_LAMBDA = ((0, 0, F(1, 2)), (F(1, 2), -1, 0), (0, 0, 0))
CUBE_WITNESS_LAMBDA_PRIME = ((0, 0, F(1, 2)), (F(1, 2), 0, 0), (0, -1, 0))

COUNTEREXAMPLE_SUPPORT = [(0, 0), (1, 0), (0, 1)]
COUNTEREXAMPLE_CONE = [(-1, 1), (2, -1)]
COUNTEREXAMPLE_RAYS = {(-2, 1, 1), (-3, 1, 2)}

FOUR_POINT_SUPPORT = [(0, 0), (0, 4), (4, 0), (1, 1)]
FOUR_POINT_R2 = {(2, 1, 1, -4)}
FOUR_POINT_ORTHANT_WIDE = {(2, 1, 1, -4), (0, 3, 1, -4), (0, 1, 3, -4)}

UNIVARIATE_LINE = {(1, -2, 1)}
UNIVARIATE_HALFLINE = UNIVARIATE_LINE | {(0, -1, 1), (-1, 0, 1), (-1, 1, 0)}
UNIVARIATE_INTERVAL = UNIVARIATE_HALFLINE | {(0, 1, -1), (1, 0, -1), (1, -1, 0)}


def flat(m) -> tuple:
    return tuple(x for row in m for x in row)


def rotate(m):
    """Rotate a square matrix by 90 degrees about its center."""
    k = len(m)
    return tuple(tuple(m[k - 1 - j][i] for j in range(k)) for i in range(k))


def rotations(m) -> list:
    out = [m]
    for _ in range(3):
        out.append(rotate(out[-1]))
    return out


def rays(matrices) -> set:
    return {primitive_ray(flat(m)) for m in matrices}


@lru_cache(maxsize=None)
def grid_family(k: int, constraint: str):
    x = {"rn": Polyhedron.whole_space(2), "orthant": Polyhedron.orthant(2),
         "cube": Polyhedron.cube(2)}[constraint]
    return enumerate_circuits(SupportSet.grid(k), x)


@lru_cache(maxsize=None)
def grid_reduced(k: int):
    return reduced_circuits(build_circuit_graph(grid_family(k, "cube")))


@dataclass
class Check:
    label: str
    expected: object
    computed: object
    seconds: float

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {"label": self.label, "expected": _jsonable(self.expected),
                "computed": _jsonable(self.computed), "ok": self.ok,
                "seconds": round(self.seconds, 3)}


def _jsonable(v):
    if isinstance(v, (set, frozenset)):
        return sorted(_jsonable(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


def _beta12_wide(fam):
    b = SupportSet.grid(3).index((1, 2))
    return {c.nu for c in fam if c.beta == b and len(c.support) >= 3}


def _beta12(fam):
    b = SupportSet.grid(3).index((1, 2))
    return {c.nu for c in fam if c.beta == b}


def _reduced_classes(fam):
    sizes = [len(c.support) for c in fam]
    return {s: sizes.count(s) for s in sorted(set(sizes))}


def _witness_gamma():
    a = SupportSet.grid(3)
    lam, lam_p = flat(CUBE_WITNESS_LAMBDA), flat(CUBE_WITNESS_LAMBDA_PRIME)
    img, img_p = a.apply(lam), a.apply(lam_p)
    return img, img_p


def _witness_found():
    a = SupportSet.grid(3)
    fam = grid_family(3, "cube")
    lam = primitive_ray(flat(CUBE_WITNESS_LAMBDA))
    c = next(c for c in fam if c.nu == lam)
    w = combinatorial_witness(a, c, a.index((3, 2)))
    return w is not None and w.gamma > 0


def _univariate(shape):
    a = SupportSet.make([(0,), (1,), (2,)])
    return enumerate_circuits(a, univariate_set(shape)).rays()


def _univariate_reduced_count(shape):
    a = SupportSet.make([(0,), (1,), (2,)])
    fam = circuits_univariate(a, shape)
    return len(reduced_circuits(build_circuit_graph(fam)))


def _small(support, x):
    return enumerate_circuits(SupportSet.make(support), x)


def checks(quick: bool = False) -> list[tuple[str, Callable[[], object], object]]:
    """(label, thunk, expected) triples; ``quick`` skips the 4x4 grid."""
    out = [
        ("grid 3x3, R^2: circuit count", lambda: len(grid_family(3, "rn")), 16),
        ("grid 3x3, R^2: support-3 circuits are (1,-2,1) on lines",
         lambda: sum(1 for c in grid_family(3, "rn") if sorted(x for x in c.nu if x) == [-2, 1, 1]), 8),
        ("grid 3x3, R^2: support-4 circuits are the two matrices and rotations",
         lambda: {c.nu for c in grid_family(3, "rn") if len(c.support) == 4},
         rays(r for m in R2_SUPPORT4 for r in rotations(m))),
        ("grid 3x3, orthant: circuit count", lambda: len(grid_family(3, "orthant")), 65),
        ("grid 3x3, orthant: per-beta table", lambda: grid_family(3, "orthant").count_table(),
         ORTHANT_TABLE),
        ("grid 3x3, orthant: nine circuits with beta=(1,2), support >= 3",
         lambda: _beta12_wide(grid_family(3, "orthant")), rays(ORTHANT_BETA12)),
        ("grid 3x3, cube: circuit count", lambda: len(grid_family(3, "cube")), 132),
        ("grid 3x3, cube: per-beta table", lambda: grid_family(3, "cube").count_table(), CUBE_TABLE),
        ("grid 3x3, cube: seventeen circuits with beta=(1,2)",
         lambda: _beta12(grid_family(3, "cube")), rays(CUBE_BETA12)),
        ("grid 3x3, cube: reduced count", lambda: len(grid_reduced(3)), 24),
        ("grid 3x3, cube: reduced classes by support size",
         lambda: _reduced_classes(grid_reduced(3)), {2: 12, 3: 8, 4: 4}),
        ("grid 3x3, cube: reduced support-4 matrix and rotations",
         lambda: {c.nu for c in grid_reduced(3) if len(c.support) == 4},
         rays(rotations(REDUCED_CUBE_SUPPORT4))),
        ("grid 3x3, cube: images of the combinatorial witness pair",
         _witness_gamma, ((F(-1, 2), F(0)), (F(-3, 2), F(0)))),
        ("grid 3x3, cube: witness found at beta'=(3,2)", _witness_found, True),
        ("A={0,1,2}, R: circuits", lambda: _univariate(LINE), UNIVARIATE_LINE),
        ("A={0,1,2}, [0,inf): circuits", lambda: _univariate(HALFLINE), UNIVARIATE_HALFLINE),
        ("A={0,1,2}, [-1,1]: circuits", lambda: _univariate(INTERVAL), UNIVARIATE_INTERVAL),
        ("A={0,1,2}, [-1,1]: reduced count", lambda: _univariate_reduced_count(INTERVAL), 3),
        ("planar cone: two circuits with equal signed support",
         lambda: _small(COUNTEREXAMPLE_SUPPORT, Polyhedron.cone(COUNTEREXAMPLE_CONE)).rays(),
         COUNTEREXAMPLE_RAYS),
        ("four points, R^2: circuits",
         lambda: _small(FOUR_POINT_SUPPORT, Polyhedron.whole_space(2)).rays(), FOUR_POINT_R2),
        ("four points, orthant: circuits with support >= 3",
         lambda: {c.nu for c in _small(FOUR_POINT_SUPPORT, Polyhedron.orthant(2))
                  if len(c.support) >= 3}, FOUR_POINT_ORTHANT_WIDE),
    ]
    if not quick:
        out += [
            ("grid 4x4, cube: circuit count", lambda: len(grid_family(4, "cube")), 980),
            ("grid 4x4, cube: per-beta table", lambda: grid_family(4, "cube").count_table(),
             CUBE4_TABLE),
            ("grid 4x4, cube: reduced count", lambda: len(grid_reduced(4)), 72),
        ]
    return out


def run(quick: bool = False) -> list[Check]:
    results = []
    for label, thunk, expected in checks(quick):
        t = time.perf_counter()
        got = thunk()
        results.append(Check(label, expected, got, time.perf_counter() - t))
    return results
