"""Sublinear circuits of a support set relative to a polyhedron.

Three independent enumeration routes are provided:

* :func:`enumerate_circuits` reads the circuits off the facets of
  ``P_beta = -A^T X + N_beta^polar`` (any polyhedral ``X``);
* :func:`enumerate_circuits_cone` takes the extreme rays of
  ``{nu in N_beta : W A nu >= 0}`` (``X`` a cone generated by the rows of ``W``);
* closed forms for univariate supports and the orthant reduction to affine
  circuits of coordinate projections.

Circuit vectors are stored as primitive integer tuples in the index order
of the :class:`SupportSet`; the normalized form (``nu_beta = -1``) is
derived on demand.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from . import dd
from .errors import InputError, NotAConeError, PreconditionError
from .exactmath import dot, frac, is_zero, primitive_ray, rank, row_basis, vec
from .lp import OPTIMAL, linprog_exact
from .polyhedra import (INF, Polyhedron, VRep, as_polyhedron, facet_certificate,
                        hrep_from_vrep, in_conv, in_relint_conv, support_function,
                        verify_facet_certificate)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SupportSet:
    """An ordered finite set of distinct points in ``Q^n``."""

    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.points:
            raise InputError("support set must be non-empty")
        n = len(self.points[0])
        if any(len(p) != n for p in self.points):
            raise InputError("support points have different dimensions")
        if len(set(self.points)) != len(self.points):
            raise InputError("support points must be pairwise distinct")

    @classmethod
    def make(cls, points: Iterable) -> "SupportSet":
        pts = []
        for p in points:
            if isinstance(p, (int, Fraction, str)):
                p = (p,)
            pts.append(vec(p))
        return cls(tuple(pts))

    @classmethod
    def grid(cls, k: int, n: int = 2) -> "SupportSet":
        """``{1..k}^n`` in row-major order, so index ``(i-1)*k + (j-1)`` is ``(i, j)``."""
        return cls.make(product(range(1, k + 1), repeat=n))

    @property
    def n(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def apply(self, nu: Sequence) -> tuple[Fraction, ...]:
        """``A nu = sum_alpha nu_alpha * alpha``."""
        out = [Fraction(0)] * self.n
        for c, p in zip(nu, self.points):
            if c:
                for k, x in enumerate(p):
                    out[k] += c * x
        return tuple(out)

    def pullback(self, w: Sequence) -> tuple[Fraction, ...]:
        """``A^T w = (alpha . w)_alpha``."""
        return tuple(dot(p, w) for p in self.points)

    def index(self, point: Sequence) -> int:
        return self.points.index(vec(point))

    def to_json(self) -> list:
        return [[str(x) for x in p] for p in self.points]


def in_n_beta(nu: Sequence) -> int | None:
    """Index of the unique negative entry when ``nu`` lies in some ``N_beta``, else None."""
    nu = vec(nu)
    if sum(nu) != 0:
        return None
    neg = [i for i, x in enumerate(nu) if x < 0]
    return neg[0] if len(neg) == 1 else None


@dataclass(frozen=True)
class Circuit:
    """A circuit ``nu`` (primitive integers) with its negative index and ``sigma_X(-A nu)``."""

    nu: tuple[int, ...]
    beta: int
    sigma: Fraction
    certificate: dict | None = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if sum(self.nu) != 0 or self.nu[self.beta] >= 0:
            raise InputError("circuit vector must lie in N_beta")
        if any(x < 0 for i, x in enumerate(self.nu) if i != self.beta):
            raise InputError("circuit vector has more than one negative entry")
        if self.sigma == INF:
            raise InputError("circuit with infinite support function value")

    @classmethod
    def from_vector(cls, v: Sequence, sigma, certificate=None) -> "Circuit":
        """Scale ``v`` to primitive form; ``sigma`` is the value for ``v`` itself."""
        v = vec(v)
        p = primitive_ray(v)
        beta = in_n_beta(p)
        if beta is None:
            raise InputError("vector is not in any N_beta")
        factor = Fraction(p[beta]) / v[beta]
        return cls(p, beta, frac(sigma) * factor, certificate)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.nu) if x)

    @property
    def positive_support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.nu) if x > 0)

    @property
    def scale(self) -> int:
        return -self.nu[self.beta]

    @property
    def normalized(self) -> tuple[Fraction, ...]:
        s = self.scale
        return tuple(Fraction(x, s) for x in self.nu)

    @property
    def normalized_sigma(self) -> Fraction:
        return self.sigma / self.scale

    @property
    def key(self) -> tuple:
        return (self.beta, self.nu)

    def to_json(self) -> dict:
        return {
            "beta": self.beta,
            "nu": [str(x) for x in self.nu],
            "support": list(self.support),
            "sigma": str(self.sigma),
            "normalized_nu": [str(x) for x in self.normalized],
            "normalized_sigma": str(self.normalized_sigma),
            "certificate": self.certificate,
        }


class CircuitFamily:
    """A deduplicated, canonically sorted set of circuits."""

    def __init__(self, circuits: Iterable[Circuit], support: SupportSet, constraint=None):
        seen = {}
        for c in circuits:
            seen.setdefault(c.key, c)
        self.circuits = [seen[k] for k in sorted(seen)]
        self.support = support
        self.constraint = constraint

    def __len__(self) -> int:
        return len(self.circuits)

    def __iter__(self):
        return iter(self.circuits)

    def __contains__(self, nu) -> bool:
        if isinstance(nu, Circuit):
            nu = nu.nu
        return tuple(primitive_ray(nu)) in self.rays()

    def rays(self) -> set[tuple[int, ...]]:
        return {c.nu for c in self.circuits}

    def by_beta(self) -> dict[int, list[Circuit]]:
        out = {}
        for c in self.circuits:
            out.setdefault(c.beta, []).append(c)
        return out

    def count_by_beta(self) -> list[int]:
        counts = [0] * len(self.support)
        for c in self.circuits:
            counts[c.beta] += 1
        return counts

    def count_table(self) -> list:
        """Per-beta counts, reshaped to the grid when the support is a square grid."""
        counts = self.count_by_beta()
        k = _grid_side(self.support)
        if k is None:
            return [counts]
        return [counts[i * k:(i + 1) * k] for i in range(k)]

    def subfamily(self, keep) -> "CircuitFamily":
        return CircuitFamily([c for c in self.circuits if keep(c)], self.support, self.constraint)

    def to_json(self) -> dict:
        return {
            "count": len(self),
            "count_by_beta": self.count_table(),
            "circuits": [c.to_json() for c in self.circuits],
        }


def _grid_side(a: SupportSet) -> int | None:
    if a.n != 2:
        return None
    k = round(len(a) ** 0.5)
    if k * k == len(a) and a == SupportSet.grid(k):
        return k
    return None


# ---------------------------------------------------------------------------
# N_beta and the general facet route
# ---------------------------------------------------------------------------

def _unit(m: int, i: int, s: int = 1) -> tuple[Fraction, ...]:
    return tuple(Fraction(s if j == i else 0) for j in range(m))


def nbeta_generators(a: SupportSet, beta: int) -> VRep:
    """``N_beta = cone{e_alpha - e_beta : alpha != beta}``."""
    m = len(a)
    if not 0 <= beta < m:
        raise InputError(f"beta index {beta} out of range")
    rays = []
    for i in range(m):
        if i != beta:
            rays.append(tuple(Fraction(int(j == i) - int(j == beta)) for j in range(m)))
    return VRep((tuple(Fraction(0) for _ in range(m)),), tuple(sorted(rays)), (), m)


def p_beta_vrep(a: SupportSet, xv: VRep, beta: int) -> tuple[VRep, dict]:
    """V-representation of ``-A^T X + N_beta^polar`` and labels for its generators.

    ``N_beta^polar`` has lineality ``1`` and rays ``-e_alpha`` for ``alpha != beta``.
    """
    m = len(a)
    neg = lambda w: tuple(-x for x in a.pullback(w))  # noqa: E731
    vertices = [neg(v) for v in xv.vertices]
    rays, ray_labels = [], []
    for i, r in enumerate(xv.rays):
        w = neg(r)
        if not is_zero(w):
            rays.append(w)
            ray_labels.append(("x_ray", i))
    for i in range(m):
        if i != beta:
            rays.append(_unit(m, i, -1))
            ray_labels.append(("unit", i))
    lin = [neg(l) for l in xv.lineality] + [tuple(Fraction(1) for _ in range(m))]
    lin = [lin[i] for i in row_basis(lin)]
    return VRep(tuple(vertices), tuple(rays), tuple(lin), m), {"rays": ray_labels}


def _facet_circuits(a: SupportSet, xv: VRep, beta: int, certify: bool = True):
    """Circuits with negative index ``beta`` as (nu, sigma, certificate) triples."""
    pv, labels = p_beta_vrep(a, xv, beta)
    h = hrep_from_vrep(pv, certify=False)
    out = []
    for normal, offset in h.inequalities:
        p = primitive_ray(normal)
        i = next(i for i, x in enumerate(p) if x)
        sigma = offset * p[i] / normal[i]
        cert = None
        if certify:
            fc = facet_certificate(pv, normal, offset)
            cert = {
                "route": "facet",
                "x_vertices": fc["vertices"],
                "x_rays": [labels["rays"][i][1] for i in fc["rays"]
                           if labels["rays"][i][0] == "x_ray"],
                "unit_rays": [labels["rays"][i][1] for i in fc["rays"]
                              if labels["rays"][i][0] == "unit"],
            }
        out.append((p, sigma, cert))
    return out


def verify_circuit_certificate(a: SupportSet, x, c: Circuit) -> bool:
    """Re-check the stored facet certificate of ``c`` against a freshly built ``P_beta``."""
    cert = c.certificate
    if not cert or cert.get("route") != "facet":
        return False
    pv, labels = p_beta_vrep(a, as_polyhedron(x).vrep, c.beta)
    where = {lab: i for i, lab in enumerate(labels["rays"])}
    try:
        rays = ([where[("x_ray", i)] for i in cert["x_rays"]]
                + [where[("unit", i)] for i in cert["unit_rays"]])
    except KeyError:
        return False
    return verify_facet_certificate(pv, c.nu, c.sigma,
                                    {"vertices": cert["x_vertices"], "rays": sorted(rays)})


def _facet_circuits_task(args):
    a, xv, beta, certify = args
    return _facet_circuits(a, xv, beta, certify)


def _run_per_beta(func, tasks, parallel):
    if parallel and parallel > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            return list(pool.map(func, tasks))
    return [func(t) for t in tasks]


def enumerate_circuits(a: SupportSet, x, certify: bool = True,
                       parallel: int | None = None, betas: Iterable[int] | None = None
                       ) -> CircuitFamily:
    """All circuits via the facets of ``P_beta`` for each ``beta``.

    Each facet offset equals ``sigma_X(-A nu)``; this identity is re-checked
    against :func:`support_function` for every circuit.
    """
    x = as_polyhedron(x)
    if x.ambient_dim != a.n:
        raise InputError("constraint set and support set live in different dimensions")
    xv = x.vrep  # raises EmptyPolyhedronError
    betas = range(len(a)) if betas is None else list(betas)
    tasks = [(a, xv, b, certify) for b in betas]
    results = _run_per_beta(_facet_circuits_task, tasks, parallel)
    circuits = []
    for rows in results:
        for p, sigma, cert in rows:
            s = support_function(x, tuple(-v for v in a.apply(p)))
            if s != sigma:
                raise AssertionError(f"facet offset {sigma} differs from support value {s}")
            circuits.append(Circuit(p, in_n_beta(p), sigma, cert))
    return CircuitFamily(circuits, a, x)


# ---------------------------------------------------------------------------
# Cone route
# ---------------------------------------------------------------------------

def _beta_cone_rays(points: Sequence[Sequence], beta: int, rows_ineq=(), rows_eq=()):
    """Extreme rays of ``{nu : nu_alpha >= 0 (alpha != beta), 1.nu = 0, rows}``."""
    m = len(points)
    ineqs = [_unit(m, i) for i in range(m) if i != beta] + list(rows_ineq)
    eqs = [tuple(Fraction(1) for _ in range(m))] + list(rows_eq)
    conv = dd.cone_rays(ineqs, eqs, m)
    return conv


def _cone_task(args):
    points, beta, w_rows = args
    conv = _beta_cone_rays(points, beta, w_rows)
    m = len(points)
    out = []
    for r, t in zip(conv.rays, conv.tight):
        out.append((r, {"route": "cone", "tight_rows": sorted(i - (m - 1) for i in t if i >= m - 1)}))
    return out


def enumerate_circuits_cone(a: SupportSet, x, parallel: int | None = None,
                            betas: Iterable[int] | None = None) -> CircuitFamily:
    """Circuits of a polyhedral cone ``X``: edge generators of ``{nu in N_beta : W A nu >= 0}``."""
    x = as_polyhedron(x)
    if x.ambient_dim != a.n:
        raise InputError("constraint set and support set live in different dimensions")
    if not x.is_cone():
        raise NotAConeError("cone route needs X to be a cone with apex at the origin")
    W = x.generators_as_cone()
    rows = [a.pullback(w) for w in W]
    betas = range(len(a)) if betas is None else list(betas)
    results = _run_per_beta(_cone_task, [(a.points, b, rows) for b in betas], parallel)
    circuits = [Circuit(r, in_n_beta(r), Fraction(0), cert)
                for res in results for r, cert in res]
    return CircuitFamily(circuits, a, x)


def affine_circuits(a: SupportSet) -> CircuitFamily:
    """Circuits of the affine matroid with exactly one negative entry (``X = R^n``)."""
    return CircuitFamily(_affine_circuit_rays(a.points), a, Polyhedron.whole_space(a.n))


def _affine_circuit_rays(points) -> list[Circuit]:
    points = [vec(p) for p in points]
    n = len(points[0])
    eq_rows = [tuple(p[k] for p in points) for k in range(n)]
    out = []
    for beta in range(len(points)):
        conv = _beta_cone_rays(points, beta, rows_eq=eq_rows)
        for r in conv.rays:
            out.append(Circuit(r, beta, Fraction(0), {"route": "affine"}))
    return out


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

LINE, HALFLINE, INTERVAL = "line", "halfline", "interval"


def univariate_set(shape: str) -> Polyhedron:
    if shape == LINE:
        return Polyhedron.whole_space(1)
    if shape == HALFLINE:
        return Polyhedron.orthant(1)
    if shape == INTERVAL:
        return Polyhedron.cube(1)
    raise InputError(f"unknown univariate shape {shape!r}")


def _sorted_univariate(a: SupportSet) -> tuple[list[int], list[Fraction]]:
    if a.n != 1:
        raise InputError("univariate closed forms need a support set in R^1")
    order = sorted(range(len(a)), key=lambda i: a.points[i][0])
    return order, [a.points[i][0] for i in order]


def three_term(m: int, order, alphas, i: int, j: int, k: int) -> tuple[Fraction, ...]:
    """Normalized affine circuit on the sorted positions ``i < j < k``."""
    ai, aj, ak = alphas[i], alphas[j], alphas[k]
    v = [Fraction(0)] * m
    v[order[i]] = (ak - aj) / (ak - ai)
    v[order[j]] = Fraction(-1)
    v[order[k]] = (aj - ai) / (ak - ai)
    return tuple(v)


def two_term(m: int, pos: int, neg: int) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * m
    v[pos] = Fraction(1)
    v[neg] = Fraction(-1)
    return tuple(v)


def circuits_univariate(a: SupportSet, shape: str) -> CircuitFamily:
    """Closed-form circuit families for ``R``, ``[0, inf)`` and ``[-1, 1]``."""
    order, alphas = _sorted_univariate(a)
    x = univariate_set(shape)
    m = len(a)
    vectors = []
    for i, j, k in combinations(range(m), 3):
        vectors.append((three_term(m, order, alphas, i, j, k), "three-term"))
    if shape == HALFLINE:
        for j, k in combinations(range(m), 2):
            vectors.append((two_term(m, order[k], order[j]), "two-term"))
    elif shape == INTERVAL:
        for i in range(m):
            for j in range(m):
                if i != j:
                    vectors.append((two_term(m, order[j], order[i]), "two-term"))
    circuits = []
    for v, kind in vectors:
        s = support_function(x, tuple(-t for t in a.apply(v)))
        circuits.append(Circuit.from_vector(v, s, {"route": "closed-form", "form": kind}))
    return CircuitFamily(circuits, a, x)


def circuits_orthant(a: SupportSet) -> CircuitFamily:
    """Circuits of ``R_+^n`` through affine circuits of coordinate projections.

    Two-point circuits ``e_alpha - e_beta`` need ``alpha >= beta``
    componentwise.  Circuits with at least two positive entries are affine
    circuits of some projection ``A_S`` that is injective on the support and
    satisfy ``(A lam)_j > 0`` off ``S``.
    """
    n, m = a.n, len(a)
    x = Polyhedron.orthant(n)
    circuits = []
    for b in range(m):
        for al in range(m):
            if al != b and all(p >= q for p, q in zip(a.points[al], a.points[b])):
                v = two_term(m, al, b)
                circuits.append(Circuit.from_vector(v, Fraction(0),
                                                    {"route": "orthant", "coordinates": None}))
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            proj = [tuple(p[s] for s in S) for p in a.points]
            eq_rows = [tuple(p[k] for p in proj) for k in range(size)]
            rest = [j for j in range(n) if j not in S]
            for beta in range(m):
                conv = _beta_cone_rays(proj, beta, rows_eq=eq_rows)
                for r in conv.rays:
                    supp = [i for i, v in enumerate(r) if v]
                    if len({proj[i] for i in supp}) != len(supp):
                        continue
                    if sum(1 for v in r if v > 0) < 2:
                        continue
                    image = a.apply(r)
                    if all(image[j] > 0 for j in rest):
                        circuits.append(Circuit(r, beta, Fraction(0),
                                                {"route": "orthant", "coordinates": list(S)}))
    return CircuitFamily(circuits, a, x)


# ---------------------------------------------------------------------------
# Membership and criteria
# ---------------------------------------------------------------------------

def is_circuit(a: SupportSet, x, nu: Sequence) -> tuple[bool, dict]:
    """Is ``nu`` (any positive multiple) a circuit?  Returns the verdict and evidence."""
    nu = vec(nu)
    if len(nu) != len(a):
        raise InputError("vector length does not match the support set")
    if is_zero(nu):
        return False, {"reason": "zero vector"}
    beta = in_n_beta(nu)
    if beta is None:
        return False, {"reason": "not in any N_beta"}
    x = as_polyhedron(x)
    p = primitive_ray(nu)
    for q, sigma, cert in _facet_circuits(a, x.vrep, beta, certify=False):
        if q == p:
            pv, _ = p_beta_vrep(a, x.vrep, beta)
            scaled = tuple(Fraction(v) for v in q)
            fc = facet_certificate(pv, scaled, sigma)
            return True, {"beta": beta, "sigma": str(sigma), "facet_certificate": fc}
    s = support_function(x, tuple(-v for v in a.apply(p)))
    if s == INF:
        return False, {"reason": "support function is infinite", "beta": beta}
    return False, {"reason": "not a facet normal of P_beta", "beta": beta}


def _as_lambda(lam) -> tuple[tuple[Fraction, ...], int]:
    v = lam.normalized if isinstance(lam, Circuit) else vec(lam)
    beta = in_n_beta(v)
    if beta is None:
        raise InputError("vector is not in any N_beta")
    s = -v[beta]
    return tuple(t / s for t in v), beta


def check_support_necessary(a: SupportSet, x, lam) -> tuple[bool, str | None]:
    """Necessary support conditions every circuit satisfies.

    Passes iff no positive support point lies in ``relint conv(supp lam)`` and
    ``beta in conv(lam+)`` forces ``A lam = 0``.
    """
    lam, beta = _as_lambda(lam)
    supp = [a.points[i] for i, v in enumerate(lam) if v]
    plus = [i for i, v in enumerate(lam) if v > 0]
    for i in plus:
        inside, _ = in_relint_conv(a.points[i], supp)
        if inside:
            return False, f"positive support point {i} lies in relint conv(supp)"
    inside, _ = in_conv(a.points[beta], [a.points[i] for i in plus])
    if inside and not is_zero(a.apply(lam)):
        return False, "beta lies in conv of the positive support but A lam != 0"
    return True, None


def _beta_in_conv_minus_dual_rec(a: SupportSet, x: Polyhedron, lam, beta) -> bool:
    """Exact feasibility of ``beta = sum theta_alpha alpha - d`` with ``d in rec(X)^*``."""
    plus = [i for i, v in enumerate(lam) if v > 0]
    xv = x.vrep
    n = a.n
    k = len(plus)
    # variables: theta (k, >= 0), d (n, free)
    A_eq = [[a.points[i][r] for i in plus] + [-int(r == c) for c in range(n)] for r in range(n)]
    b_eq = list(a.points[beta])
    A_eq.append([1] * k + [0] * n)
    b_eq.append(1)
    for l in xv.lineality:
        A_eq.append([0] * k + list(l))
        b_eq.append(0)
    A_ub = [[0] * k + [-v for v in r] for r in xv.rays]
    res = linprog_exact([0] * (k + n), A_ub=A_ub, b_ub=[0] * len(A_ub),
                        A_eq=A_eq, b_eq=b_eq, free=range(k, k + n))
    return res.status == OPTIMAL


def check_edge_case_sufficient(a: SupportSet, x, lam) -> tuple[bool, str | None]:
    """Sufficient conditions for a circuit; ``(True, case)`` when one applies.

    ``(False, None)`` means not applicable; no claim is made then.
    """
    x = as_polyhedron(x)
    lam, beta = _as_lambda(lam)
    if not _beta_in_conv_minus_dual_rec(a, x, lam, beta):
        return False, None
    plus = [a.points[i] for i, v in enumerate(lam) if v > 0]
    diffs = [tuple(p - q for p, q in zip(pt, plus[0])) for pt in plus[1:]]
    if diffs and rank(diffs) != len(diffs):
        return False, None
    if len(plus) == 1:
        return True, "two-point support"
    if (x.is_full_dimensional() and in_conv(a.points[beta], plus)[0]
            and is_zero(a.apply(lam))):
        return True, "full-dimensional affine"
    return False, None


def check_cube_exclusion(a: SupportSet, lam) -> bool:
    """True when ``lam`` is provably not a ``[-1,1]^n`` circuit.

    Applies to normalized ``lam`` with at least three support points: every
    coordinate of the positive support lies weakly on one side of ``beta``.
    """
    lam, beta = _as_lambda(lam)
    if sum(1 for v in lam if v) < 3:
        return False
    b = a.points[beta]
    plus = [a.points[i] for i, v in enumerate(lam) if v > 0]
    return all(all(p[j] <= b[j] for p in plus) or all(p[j] >= b[j] for p in plus)
               for j in range(a.n))


def check_cube_exclusion_general(a: SupportSet, lam) -> bool:
    """Generalized cube exclusion via the coordinates where ``A lam`` vanishes.

    With ``J = {j : (A lam)_j = 0}``, the positive support must split into
    points agreeing with ``beta`` off ``J`` and a non-empty set of points
    agreeing with ``beta`` on ``J`` which is one-sided against ``beta`` in
    every coordinate off ``J``.
    """
    lam, beta = _as_lambda(lam)
    if sum(1 for v in lam if v) < 3:
        return False
    b = a.points[beta]
    image = a.apply(lam)
    J = [j for j in range(a.n) if image[j] == 0]
    off = [j for j in range(a.n) if image[j] != 0]
    plus = [a.points[i] for i, v in enumerate(lam) if v > 0]
    first = [p for p in plus if all(p[j] == b[j] for j in off)]
    second = [p for p in plus if all(p[j] == b[j] for j in J)]
    if not second or set(first) & set(second) or len(first) + len(second) != len(plus):
        return False
    return all(all(p[j] <= b[j] for p in second) or all(p[j] >= b[j] for p in second)
               for j in off)


def cone_zero_slice_check(a: SupportSet, x) -> tuple[bool, tuple | None]:
    """Compare the circuits with ``A lam = 0`` of a full-dimensional cone with the affine circuits."""
    x = as_polyhedron(x)
    if not x.is_cone():
        raise NotAConeError("cone_zero_slice_check needs a cone")
    if not x.is_full_dimensional():
        raise PreconditionError("cone_zero_slice_check needs a full-dimensional cone")
    fam = enumerate_circuits_cone(a, x)
    zero = {c.nu for c in fam if is_zero(a.apply(c.nu))}
    aff = affine_circuits(a).rays()
    diff = sorted(zero ^ aff)
    return (not diff), (diff[0] if diff else None)
