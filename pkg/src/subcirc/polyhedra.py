"""Exact polyhedra in H- and V-representation.

Both directions of the conversion go through :func:`subcirc.dd.cone_rays`
on a homogenized cone.  V-representations are kept *pointed modulo
lineality*: vertices and rays live in the orthogonal complement of the
lineality space.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import dd
from .errors import (EmptyPolyhedronError, InputError, NotAConeError,
                     NotAMemberError)
from .exactmath import (dot, frac, integer_scaling, is_zero, kernel_basis,
                        primitive_ray, rank, solve_linear, vec)

INF = math.inf

RatVec = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class HRep:
    """``normal . x <= offset`` for each inequality, ``normal . x = offset`` for each equation."""

    inequalities: tuple[tuple[RatVec, Fraction], ...]
    equations: tuple[tuple[RatVec, Fraction], ...]
    ambient_dim: int
    certificates: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for a, _ in self.inequalities + self.equations:
            if len(a) != self.ambient_dim:
                raise InputError("row length does not match ambient dimension")
        for a, _ in self.inequalities:
            if is_zero(a):
                raise InputError("inequality with zero normal")

    @classmethod
    def make(cls, ineqs=(), eqs=(), dim=None) -> "HRep":
        ineqs = [(vec(a), frac(b)) for a, b in ineqs]
        eqs = [(vec(a), frac(b)) for a, b in eqs]
        if dim is None:
            rows = ineqs + eqs
            if not rows:
                raise InputError("cannot infer dimension of an empty H-representation")
            dim = len(rows[0][0])
        return cls(tuple(ineqs), tuple(eqs), dim)

    def canonical(self) -> "HRep":
        """Rows scaled to primitive integers and deduplicated."""
        seen = {}
        for a, b in self.inequalities:
            key = primitive_ray(tuple(a) + (b,))
            seen.setdefault(key, None)
        ineqs = tuple((vec(k[:-1]), Fraction(k[-1])) for k in sorted(seen))
        eqs = []
        for a, b in self.equations:
            if is_zero(a):
                if b != 0:
                    eqs.append((a, b))
                continue
            k = primitive_ray(tuple(a) + (b,))
            eqs.append((vec(k[:-1]), Fraction(k[-1])))
        return HRep(ineqs, tuple(sorted(set(eqs))), self.ambient_dim)

    def satisfied_by(self, x: Sequence) -> bool:
        return (all(dot(a, x) <= b for a, b in self.inequalities)
                and all(dot(a, x) == b for a, b in self.equations))


@dataclass(frozen=True)
class VRep:
    vertices: tuple[RatVec, ...]
    rays: tuple[RatVec, ...]
    lineality: tuple[RatVec, ...]
    ambient_dim: int

    def __post_init__(self):
        for g in self.vertices + self.rays + self.lineality:
            if len(g) != self.ambient_dim:
                raise InputError("generator length does not match ambient dimension")

    @classmethod
    def make(cls, vertices=(), rays=(), lineality=(), dim=None) -> "VRep":
        vertices = tuple(vec(v) for v in vertices)
        rays = tuple(vec(r) for r in rays)
        lineality = tuple(vec(l) for l in lineality)
        if dim is None:
            gens = vertices + rays + lineality
            if not gens:
                raise InputError("cannot infer dimension of an empty V-representation")
            dim = len(gens[0])
        return cls(vertices, rays, lineality, dim)

    @property
    def is_cone(self) -> bool:
        return all(is_zero(v) for v in self.vertices)

    def homogenized(self) -> list[tuple]:
        return ([tuple(v) + (Fraction(1),) for v in self.vertices]
                + [tuple(r) + (Fraction(0),) for r in self.rays]
                + [tuple(l) + (Fraction(0),) for l in self.lineality])


def _canonical_vrep(vertices, rays, lineality, dim) -> VRep:
    verts = tuple(sorted(set(vec(v) for v in vertices)))
    rs = tuple(sorted(set(vec(primitive_ray(r)) for r in rays if not is_zero(r))))
    lin = tuple(vec(l) for l in lineality)
    return VRep(verts, rs, lin, dim)


def vrep_from_hrep(h: HRep) -> VRep:
    """Generators of ``{x : h holds}`` by the double description method.

    Raises :class:`EmptyPolyhedronError` if the system is infeasible.
    """
    n = h.ambient_dim
    ineqs = [tuple(-x for x in a) + (b,) for a, b in h.inequalities]
    ineqs.append((Fraction(0),) * n + (Fraction(1),))
    eqs = [tuple(-x for x in a) + (b,) for a, b in h.equations]
    conv = dd.cone_rays(ineqs, eqs, n + 1)
    vertices, rays = [], []
    for r in conv.rays:
        t = r[-1]
        if t > 0:
            vertices.append(tuple(Fraction(x, t) for x in r[:-1]))
        else:
            rays.append(r[:-1])
    if not vertices:
        raise EmptyPolyhedronError("H-representation is infeasible")
    lineality = [l[:-1] for l in conv.lineality]
    return _canonical_vrep(vertices, rays, lineality, n)


def hrep_from_vrep(v: VRep, certify: bool = True) -> HRep:
    """Irredundant facet description of ``conv(vertices) + cone(rays) + span(lineality)``.

    Facet normals are orthogonal to the lineality space and to the implicit
    equations.  With ``certify`` each facet carries the tight generator
    indices that witness it (see :func:`facet_certificate`).
    """
    if not v.vertices:
        raise EmptyPolyhedronError("V-representation without vertices")
    n = v.ambient_dim
    rows = ([tuple(-x for x in p) + (Fraction(1),) for p in v.vertices]
            + [tuple(-x for x in r) + (Fraction(0),) for r in v.rays])
    eqs = [tuple(l) + (Fraction(0),) for l in v.lineality]
    conv = dd.cone_rays(rows, eqs, n + 1)
    eq_rows = [tuple(Fraction(x) for x in e) for e in conv.lineality]
    eq_normals_basis = []
    for e in eq_rows:
        if rank([r[:-1] for r in eq_normals_basis] + [e[:-1]]) > len(eq_normals_basis):
            eq_normals_basis.append(e)
    gram = [[dot(a[:-1], b[:-1]) for b in eq_normals_basis] for a in eq_normals_basis]
    ineqs = []
    for r in conv.rays:
        a = tuple(Fraction(x) for x in r)
        if eq_normals_basis:
            rhs = [dot(a[:-1], e[:-1]) for e in eq_normals_basis]
            mu = solve_linear(gram, rhs)
            a = tuple(x - sum(m * e[i] for m, e in zip(mu, eq_normals_basis))
                      for i, x in enumerate(a))
        if is_zero(a[:-1]):
            continue
        p = primitive_ray(a)
        ineqs.append((vec(p[:-1]), Fraction(p[-1])))
    equations = []
    for e in eq_normals_basis:
        p = primitive_ray(e)
        equations.append((vec(p[:-1]), Fraction(p[-1])))
    ineqs = sorted(set(ineqs))
    certs = tuple(facet_certificate(v, a, b) for a, b in ineqs) if certify else None
    return HRep(tuple(ineqs), tuple(equations), n, certs)


def dimension(v: VRep) -> int:
    """Affine dimension of the polyhedron."""
    return rank(v.homogenized()) - 1


def facet_certificate(v: VRep, a, b) -> dict | None:
    """Tight generators spanning the facet ``a.x = b``.

    Returns ``{"vertices": [...], "rays": [...]}`` with indices into ``v``
    such that the homogenized chosen generators together with the lineality
    are linearly independent and span a space of dimension ``dim(P)``
    (one less than the homogenized cone).  None if ``a.x <= b`` is not a
    facet.
    """
    tv = [i for i, p in enumerate(v.vertices) if dot(a, p) == b]
    tr = [i for i, r in enumerate(v.rays) if dot(a, r) == 0]
    lin = [tuple(l) + (Fraction(0),) for l in v.lineality]
    chosen_v, chosen_r = [], []
    current = list(lin)
    cur_rank = rank(current) if current else 0
    for i in tv:
        cand = current + [tuple(v.vertices[i]) + (Fraction(1),)]
        if rank(cand) > cur_rank:
            current, cur_rank = cand, cur_rank + 1
            chosen_v.append(i)
    for i in tr:
        cand = current + [tuple(v.rays[i]) + (Fraction(0),)]
        if rank(cand) > cur_rank:
            current, cur_rank = cand, cur_rank + 1
            chosen_r.append(i)
    if cur_rank != dimension(v):
        return None
    return {"vertices": chosen_v, "rays": chosen_r}


def verify_facet_certificate(v: VRep, a, b, cert) -> bool:
    """Independent re-check of a facet certificate."""
    if cert is None:
        return False
    if any(dot(a, p) > b for p in v.vertices) or any(dot(a, r) > 0 for r in v.rays):
        return False
    if any(dot(a, l) != 0 for l in v.lineality):
        return False
    pts = [v.vertices[i] for i in cert["vertices"]]
    rs = [v.rays[i] for i in cert["rays"]]
    if not pts:
        return False
    if any(dot(a, p) != b for p in pts) or any(dot(a, r) != 0 for r in rs):
        return False
    gens = ([tuple(p) + (Fraction(1),) for p in pts] + [tuple(r) + (Fraction(0),) for r in rs]
            + [tuple(l) + (Fraction(0),) for l in v.lineality])
    return rank(gens) == len(gens) == dimension(v)


def verify_vrep_certificates(h: HRep, v: VRep) -> bool:
    """Every vertex is a minimal face and every ray an edge of the recession cone."""
    n = h.ambient_dim
    lin_dim = len(v.lineality)
    eqs = [a for a, _ in h.equations]
    for p in v.vertices:
        if not h.satisfied_by(p):
            return False
        tight = [a for a, b in h.inequalities if dot(a, p) == b] + eqs
        if (rank(tight) if tight else 0) != n - lin_dim:
            return False
    for r in v.rays:
        if any(dot(a, r) > 0 for a, _ in h.inequalities) or any(dot(a, r) != 0 for a in eqs):
            return False
        tight = [a for a, _ in h.inequalities if dot(a, r) == 0] + eqs
        if (rank(tight) if tight else 0) != n - lin_dim - 1:
            return False
    return True


class Polyhedron:
    """A polyhedron with lazily filled H- and V-representations.

    The cache fill is idempotent and guarded by a lock, so instances may be
    shared across threads.
    """

    def __init__(self, hrep: HRep | None = None, vrep: VRep | None = None):
        if hrep is None and vrep is None:
            raise InputError("a polyhedron needs an H- or a V-representation")
        self._hrep = hrep
        self._vrep = vrep
        self._lock = threading.Lock()

    def __getstate__(self):
        return {"hrep": self._hrep, "vrep": self._vrep}

    def __setstate__(self, state):
        self._hrep = state["hrep"]
        self._vrep = state["vrep"]
        self._lock = threading.Lock()

    # constructors ---------------------------------------------------------
    @classmethod
    def from_hrep(cls, ineqs=(), eqs=(), dim=None) -> "Polyhedron":
        return cls(hrep=HRep.make(ineqs, eqs, dim))

    @classmethod
    def from_vrep(cls, vertices=(), rays=(), lineality=(), dim=None) -> "Polyhedron":
        return cls(vrep=VRep.make(vertices, rays, lineality, dim))

    @classmethod
    def cube(cls, n: int) -> "Polyhedron":
        """``[-1, 1]^n`` with both representations filled."""
        ineqs = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            ineqs.append((e, 1))
            ineqs.append(([-x for x in e], 1))
        verts = [tuple(s) for s in product((-1, 1), repeat=n)]
        return cls(HRep.make(ineqs, dim=n), VRep.make(verts, dim=n))

    @classmethod
    def orthant(cls, n: int) -> "Polyhedron":
        ineqs = [([-int(i == j) for j in range(n)], 0) for i in range(n)]
        rays = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(HRep.make(ineqs, dim=n), VRep.make([[0] * n], rays, dim=n))

    @classmethod
    def whole_space(cls, n: int) -> "Polyhedron":
        lin = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(HRep.make(dim=n), VRep.make([[0] * n], (), lin, dim=n))

    @classmethod
    def cone(cls, generators: Sequence[Sequence]) -> "Polyhedron":
        gens = [vec(g) for g in generators]
        n = len(gens[0])
        return cls(vrep=VRep.make([[0] * n], gens, dim=n))

    @classmethod
    def point(cls, x: Sequence) -> "Polyhedron":
        return cls(vrep=VRep.make([x]))

    # representations ------------------------------------------------------
    @property
    def ambient_dim(self) -> int:
        return (self._hrep or self._vrep).ambient_dim

    @property
    def vrep(self) -> VRep:
        if self._vrep is None:
            with self._lock:
                if self._vrep is None:
                    self._vrep = vrep_from_hrep(self._hrep)
        return self._vrep

    @property
    def hrep(self) -> HRep:
        if self._hrep is None:
            with self._lock:
                if self._hrep is None:
                    self._hrep = hrep_from_vrep(self._vrep)
        return self._hrep

    def minimal_vrep(self) -> VRep:
        """Irredundant V-representation (round trip through the facets)."""
        return vrep_from_hrep(self.hrep)

    # queries --------------------------------------------------------------
    def contains(self, x: Sequence) -> bool:
        return self.hrep.satisfied_by(vec(x))

    def is_bounded(self) -> bool:
        v = self.vrep
        return not v.rays and not v.lineality

    def is_cone(self) -> bool:
        """True when the polyhedron is a cone with apex at the origin."""
        v = self.vrep
        if v.is_cone:
            return True
        h = self.hrep
        return all(b == 0 for _, b in h.inequalities + h.equations)

    def dimension(self) -> int:
        return dimension(self.vrep)

    def is_full_dimensional(self) -> bool:
        return self.dimension() == self.ambient_dim

    def direction_space(self) -> list[tuple]:
        """Basis of the linear space parallel to the affine hull."""
        v = self.vrep
        p0 = v.vertices[0]
        gens = ([tuple(a - b for a, b in zip(p, p0)) for p in v.vertices[1:]]
                + list(v.rays) + list(v.lineality))
        gens = [g for g in gens if not is_zero(g)]
        if not gens:
            return []
        # basis of span(gens) = orthogonal complement of its kernel's complement
        perp = kernel_basis(gens)
        if not perp:
            return [tuple(int(i == j) for j in range(self.ambient_dim))
                    for i in range(self.ambient_dim)]
        return kernel_basis(perp)

    def translate(self, t: Sequence) -> "Polyhedron":
        t = vec(t)
        v = self.vrep
        verts = [tuple(a + b for a, b in zip(p, t)) for p in v.vertices]
        return Polyhedron(vrep=VRep(tuple(verts), v.rays, v.lineality, v.ambient_dim))

    def generators_as_cone(self) -> list[tuple]:
        """Conic generators (rays plus both signs of the lineality) of a cone."""
        if not self.is_cone():
            raise NotAConeError("polyhedron is not a cone with apex at the origin")
        v = self.vrep
        return list(v.rays) + list(v.lineality) + [tuple(-x for x in l) for l in v.lineality]

    def same_set(self, other: "Polyhedron") -> bool:
        return _contains_vrep(self.hrep, other.vrep) and _contains_vrep(other.hrep, self.vrep)

    def __repr__(self) -> str:
        parts = []
        if self._vrep is not None:
            v = self._vrep
            parts.append(f"{len(v.vertices)} vertices, {len(v.rays)} rays, "
                         f"lineality {len(v.lineality)}")
        if self._hrep is not None:
            h = self._hrep
            parts.append(f"{len(h.inequalities)} inequalities, {len(h.equations)} equations")
        return f"Polyhedron(ambient_dim={self.ambient_dim}; {'; '.join(parts)})"


def _contains_vrep(h: HRep, v: VRep) -> bool:
    if not all(h.satisfied_by(p) for p in v.vertices):
        return False
    for r in v.rays:
        if any(dot(a, r) > 0 for a, _ in h.inequalities) or any(dot(a, r) != 0 for a, _ in h.equations):
            return False
    for l in v.lineality:
        if any(dot(a, l) != 0 for a, _ in h.inequalities + h.equations):
            return False
    return True


def as_polyhedron(p) -> Polyhedron:
    if isinstance(p, Polyhedron):
        return p
    if isinstance(p, HRep):
        return Polyhedron(hrep=p)
    if isinstance(p, VRep):
        return Polyhedron(vrep=p)
    raise TypeError(f"cannot interpret {type(p).__name__} as a polyhedron")


def support_function(p, y: Sequence):
    """``sup { y.x : x in p }``; ``math.inf`` when unbounded above."""
    v = as_polyhedron(p).vrep
    y = vec(y)
    if len(y) != v.ambient_dim:
        raise InputError("direction has the wrong dimension")
    if any(dot(y, l) != 0 for l in v.lineality) or any(dot(y, r) > 0 for r in v.rays):
        return INF
    return max(dot(y, x) for x in v.vertices)


def recession_cone(p) -> VRep:
    v = as_polyhedron(p).vrep
    return VRep(((Fraction(0),) * v.ambient_dim,), v.rays, v.lineality, v.ambient_dim)


def minkowski_sum(a: VRep, b: VRep) -> VRep:
    """``a + b``, redundancy-pruned via the facet description."""
    if a.ambient_dim != b.ambient_dim:
        raise InputError("Minkowski sum of polyhedra in different dimensions")
    verts = [tuple(x + y for x, y in zip(p, q)) for p in a.vertices for q in b.vertices]
    raw = VRep(tuple(verts), a.rays + b.rays, a.lineality + b.lineality, a.ambient_dim)
    return vrep_from_hrep(hrep_from_vrep(raw, certify=False))


def dual_cone(c: VRep) -> VRep:
    """Generators of ``{y : y.x >= 0 for all x in c}``."""
    if not c.is_cone:
        raise NotAConeError("dual_cone needs a cone with apex at the origin")
    n = c.ambient_dim
    conv = dd.cone_rays(list(c.rays), list(c.lineality), n)
    zero = (Fraction(0),) * n
    return VRep((zero,), tuple(vec(r) for r in conv.rays),
                tuple(vec(l) for l in conv.lineality), n)


def in_cone_hrep(h: HRep, g) -> bool:
    return h.satisfied_by(g)


def is_extreme_generator(cone: VRep, g: Sequence) -> tuple[bool, dict]:
    """Does ``g`` span an extreme ray of ``cone`` (modulo lineality)?

    The decision uses the facets tight at ``g``: it is extreme iff those
    normals, together with the implicit equations, have rank
    ``ambient - lineality_dim - 1``.  Raises :class:`NotAMemberError`
    when ``g`` lies outside the cone.
    """
    if not cone.is_cone:
        raise NotAConeError("is_extreme_generator needs a cone")
    h = hrep_from_vrep(cone, certify=False)
    return _extreme_from_hrep(h, len(cone.lineality), vec(g))


def _extreme_from_hrep(h: HRep, lin_dim: int, g) -> tuple[bool, dict]:
    if not h.satisfied_by(g):
        raise NotAMemberError("generator is not in the cone")
    tight = [i for i, (a, _) in enumerate(h.inequalities) if dot(a, g) == 0]
    rows = [h.inequalities[i][0] for i in tight] + [a for a, _ in h.equations]
    r = rank(rows) if rows else 0
    target = h.ambient_dim - lin_dim - 1
    # g inside the lineality space is tight everywhere, so its rank exceeds target
    extreme = (not is_zero(g)) and r == target
    return extreme, {"tight": tight, "rank": r, "target": target}


def extreme_generators_facets(gens: Sequence[Sequence]) -> list[tuple[bool, dict]]:
    """Extremality of every generator of ``cone(gens)`` from one facet computation."""
    n = len(gens[0])
    v = VRep(((Fraction(0),) * n,), tuple(vec(g) for g in gens), (), n)
    h = hrep_from_vrep(v, certify=False)
    lin_dim = len(vrep_from_hrep(h).lineality)
    return [_extreme_from_hrep(h, lin_dim, vec(g)) for g in gens]


def integer_rows(rows) -> list[tuple[int, ...]]:
    return [integer_scaling(r) for r in rows]


def in_conv(x: Sequence, points: Sequence[Sequence]) -> tuple[bool, tuple | None]:
    """Exact test ``x in conv(points)``; returns the convex weights when true."""
    from .lp import OPTIMAL, linprog_exact

    points = [vec(p) for p in points]
    if not points:
        return False, None
    rows = [list(col) for col in zip(*points)] + [[1] * len(points)]
    rhs = list(vec(x)) + [1]
    res = linprog_exact([0] * len(points), A_eq=rows, b_eq=rhs)
    return (True, res.x) if res.status == OPTIMAL else (False, None)


def in_relint_conv(x: Sequence, points: Sequence[Sequence]) -> tuple[bool, tuple | None]:
    """Exact test ``x in relint conv(points)``.

    Maximizes ``t`` subject to ``theta_s >= t``, ``sum theta_s s = x``,
    ``sum theta_s = 1``; ``x`` is in the relative interior iff the optimum
    is positive.  Returns the strictly positive weights when true.
    """
    from .lp import OPTIMAL, linprog_exact

    points = [vec(p) for p in points]
    if not points:
        return False, None
    k = len(points)
    rows = [list(col) + [0] for col in zip(*points)] + [[1] * k + [0]]
    rhs = list(vec(x)) + [1]
    ub = [[-int(i == j) for j in range(k)] + [1] for i in range(k)]
    res = linprog_exact([0] * k + [1], A_ub=ub, b_ub=[0] * k, A_eq=rows, b_eq=rhs)
    if res.status == OPTIMAL and res.value > 0:
        return True, res.x[:k]
    return False, None
