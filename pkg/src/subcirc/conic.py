"""Exact extremality and pointedness tests for finitely generated cones.

Floating-point LPs (HiGHS via scipy) only *guide* the search.  Every
verdict is backed by an exact certificate that is checked in integer
arithmetic before it is returned:

* non-extreme: ``g = sum mu_j h_j`` with rational ``mu >= 0`` over other
  generators ``h_j`` not proportional to ``g``;
* extreme: a Farkas separator ``y`` with ``y.h >= 0`` for every other
  generator and ``y.g < 0``.

When the float guidance fails to produce a certificate the exact simplex
in :mod:`subcirc.lp` decides.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import NotPointedError
from .exactmath import primitive_ray, solve_linear, transpose
from .lp import OPTIMAL, linprog_exact

log = logging.getLogger(__name__)

_TOL = 1e-9


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _rationalize(x: np.ndarray, max_den: int = 10**6) -> list[Fraction]:
    return [Fraction(float(v)).limit_denominator(max_den) for v in x]


def _check_separator(y, g, others) -> bool:
    den = 1
    for v in y:
        den = den * v.denominator // gcd(den, v.denominator)
    yi = [int(v * den) for v in y]
    return _idot(yi, g) < 0 and all(_idot(yi, h) >= 0 for h in others)


def _check_combination(mu: dict, g, gens) -> bool:
    if any(v < 0 for v in mu.values()):
        return False
    total = [Fraction(0)] * len(g)
    for j, m in mu.items():
        for k, x in enumerate(gens[j]):
            total[k] += m * x
    return total == [Fraction(x) for x in g]


class ConeExtremality:
    """Per-generator extremality verdicts for ``cone(gens)``.

    ``gens`` are integer vectors.  Generators that are positive multiples of
    each other share a verdict (they span the same ray).
    """

    def __init__(self, gens: Sequence[Sequence[int]], use_float: bool = True):
        self.gens = [tuple(int(x) for x in g) for g in gens]
        self.use_float = use_float
        self.dim = len(self.gens[0]) if self.gens else 0
        prim = [primitive_ray(g) for g in self.gens]
        first = {}
        self.rep = []
        for i, p in enumerate(prim):
            self.rep.append(first.setdefault(p, i))
        self.reps = sorted(set(self.rep))

    def _others(self, i):
        return [k for k in self.reps if k != self.rep[i]]

    def certify(self, i: int) -> tuple[bool, dict]:
        """Decide extremality of generator ``i`` with an exactly checked certificate."""
        r = self.rep[i]
        if r != i:
            ok, cert = self.certify(r)
            return ok, dict(cert, same_ray_as=r)
        g = self.gens[i]
        others = self._others(i)
        if not others:
            return True, {"separator": None, "method": "single-ray"}
        if self.use_float:
            got = self._float_route(i, g, others)
            if got is not None:
                return got
        return self._exact_route(g, others)

    def _float_route(self, i, g, others):
        H = np.array([self.gens[k] for k in others], dtype=float)
        gf = np.array(g, dtype=float)
        scale = max(1.0, np.abs(H).max())
        # membership: H^T mu = g, mu >= 0
        res = linprog(np.zeros(len(others)), A_eq=H.T / scale, b_eq=gf / scale,
                      bounds=(0, None), method="highs")
        if res.status == 0:
            support = [others[k] for k, v in enumerate(res.x) if v > _TOL]
            mu = self._exact_combination(g, support)
            if mu is not None:
                return False, {"combination": {str(k): str(v) for k, v in mu.items() if v},
                               "method": "lp-guided"}
            return None
        if res.status != 2:
            return None
        # strict separator: the others span a pointed cone not containing g,
        # so maximize t with h.y >= t |h| and g.y <= -t |g| inside a box
        n = self.dim
        Hn = H / np.linalg.norm(H, axis=1)[:, None]
        gn = gf / np.linalg.norm(gf)
        A = np.vstack([np.hstack([-Hn, np.ones((len(others), 1))]),
                       np.hstack([gn, [1.0]])[None, :]])
        c = np.zeros(n + 1)
        c[-1] = -1.0
        res = linprog(c, A_ub=A, b_ub=np.zeros(len(others) + 1),
                      bounds=[(-1, 1)] * n + [(None, 1)], method="highs")
        if res.status != 0 or res.x[-1] <= 1e-12:
            return None
        rest = [self.gens[k] for k in others]
        for den in (10**6, 10**12, None):
            yq = ([Fraction(float(v)) for v in res.x[:n]] if den is None
                  else _rationalize(res.x[:n], den))
            if _check_separator(yq, g, rest):
                return True, {"separator": [str(v) for v in yq], "method": "lp-guided"}
        return None

    def _exact_combination(self, g, support):
        if not support:
            return None
        cols = transpose([self.gens[k] for k in support])
        try:
            mu = solve_linear(cols, g)
        except Exception:
            return None
        cand = dict(zip(support, mu))
        if _check_combination(cand, g, self.gens):
            return cand
        res = linprog_exact([0] * len(support), A_eq=cols, b_eq=g)
        if res.status == OPTIMAL:
            cand = dict(zip(support, res.x))
            if _check_combination(cand, g, self.gens):
                return cand
        return None

    def _exact_route(self, g, others):
        cols = transpose([self.gens[k] for k in others])
        res = linprog_exact([0] * len(others), A_eq=cols, b_eq=g)
        if res.status == OPTIMAL:
            mu = dict(zip(others, res.x))
            assert _check_combination(mu, g, self.gens)
            return False, {"combination": {str(k): str(v) for k, v in mu.items() if v},
                           "method": "exact-simplex"}
        y = list(res.farkas)
        assert _check_separator(y, g, [self.gens[k] for k in others])
        return True, {"separator": [str(v) for v in y], "method": "exact-simplex"}

    def all(self) -> list[tuple[bool, dict]]:
        cache = {}
        out = []
        for i in range(len(self.gens)):
            r = self.rep[i]
            if r not in cache:
                cache[r] = self.certify(r)
            ok, cert = cache[r]
            out.append((ok, cert if r == i else dict(cert, same_ray_as=r)))
        return out


def verify_certificate(gens, i: int, verdict: bool, cert: dict) -> bool:
    """Re-check a certificate from :class:`ConeExtremality` from scratch."""
    gens = [tuple(int(x) for x in g) for g in gens]
    g = gens[i]
    if "same_ray_as" in cert:
        j = cert["same_ray_as"]
        if primitive_ray(gens[j]) != primitive_ray(g):
            return False
        g = gens[j]
        i = j
    pg = primitive_ray(g)
    others = [h for h in gens if primitive_ray(h) != pg]
    if verdict:
        if cert.get("separator") is None:
            return not others
        return _check_separator([Fraction(v) for v in cert["separator"]], g, others)
    mu = {int(k): Fraction(v) for k, v in cert["combination"].items()}
    if any(primitive_ray(gens[k]) == pg for k in mu):
        return False
    return _check_combination(mu, g, gens)


def positive_functional(gens: Sequence[Sequence[int]]) -> list[Fraction]:
    """A rational ``y`` with ``y.g > 0`` for every generator.

    Raises :class:`NotPointedError` if none exists (the cone contains a line
    or a generator is zero).
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        return []
    n = len(gens[0])
    G = np.array(gens, dtype=float)
    scale = max(1.0, np.abs(G).max())
    # maximize t s.t. G y >= t, -1 <= y <= 1
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A = np.hstack([-G / scale, np.ones((len(gens), 1))])
    res = linprog(c, A_ub=A, b_ub=np.zeros(len(gens)),
                  bounds=[(-1, 1)] * n + [(None, 1)], method="highs")
    if res.status == 0 and res.x[-1] > 1e-9:
        y = _rationalize(res.x[:n])
        if all(sum(a * b for a, b in zip(y, g)) > 0 for g in gens):
            return y
    # exact: G y >= 1 componentwise
    res = linprog_exact([0] * n, A_ub=[[-x for x in g] for g in gens],
                        b_ub=[-1] * len(gens), free=range(n))
    if res.status != OPTIMAL:
        raise NotPointedError("generated cone is not pointed")
    return list(res.x)
