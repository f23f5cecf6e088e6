"""Circuit graph and reduced circuits.

The circuit graph is the cone generated by the extended forms
``(lam, sigma_X(-A lam))`` of all normalized circuits together with
``(0, ..., 0, 1)``.  A circuit is reduced when its extended form spans an
extreme ray of that cone.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circuits import (HALFLINE, INTERVAL, LINE, Circuit, CircuitFamily, SupportSet,
                       _sorted_univariate, affine_circuits, enumerate_circuits_cone,
                       three_term, two_term, univariate_set)
from .conic import ConeExtremality, positive_functional, verify_certificate
from .errors import (DependentExponentialsError, InputError, NotAConeError,
                     PreconditionError)
from .exactmath import integer_scaling, is_zero
from .lp import OPTIMAL, linprog_exact
from .polyhedra import (as_polyhedron, extreme_generators_facets,
                        in_conv, support_function)

log = logging.getLogger(__name__)

FACETS_LIMIT = 40  # above this many generators the LP-certified path is used


@dataclass(frozen=True)
class ExtendedCircuit:
    circuit: Circuit
    extended: tuple[Fraction, ...]

    @classmethod
    def of(cls, c: Circuit) -> "ExtendedCircuit":
        return cls(c, c.normalized + (c.normalized_sigma,))


class CircuitGraph:
    """Generators of the circuit graph plus a strictly positive functional proving pointedness."""

    def __init__(self, generators: list[ExtendedCircuit], family: CircuitFamily,
                 functional: list[Fraction]):
        self.generators = generators
        self.family = family
        self.functional = functional

    @property
    def top(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(0) for _ in range(len(self.family.support))) + (Fraction(1),)

    def integer_generators(self) -> list[tuple[int, ...]]:
        """Extended forms scaled to integers, followed by the distinguished ray."""
        return [integer_scaling(g.extended) for g in self.generators] + [
            tuple(int(x) for x in self.top)]


def check_independence(a: SupportSet, x) -> None:
    """Raise unless the projections of ``A`` onto the direction space of ``aff(X)`` are distinct."""
    x = as_polyhedron(x)
    basis = x.direction_space()
    images = {}
    for i, p in enumerate(a.points):
        key = tuple(sum(b * c for b, c in zip(d, p)) for d in basis)
        if key in images:
            raise DependentExponentialsError(
                f"support points {images[key]} and {i} have the same projection onto aff(X); "
                "the exponentials are not linearly independent on X")
        images[key] = i


def build_circuit_graph(family: CircuitFamily) -> CircuitGraph:
    if family.constraint is None:
        raise PreconditionError("family has no constraint set attached")
    check_independence(family.support, family.constraint)
    gens = [ExtendedCircuit.of(c) for c in family]
    graph = CircuitGraph(gens, family, [])
    graph.functional = positive_functional(graph.integer_generators())
    return graph


def _attach(c: Circuit, extra: dict) -> Circuit:
    return Circuit(c.nu, c.beta, c.sigma, dict(c.certificate or {}, **extra))


def extremality(graph: CircuitGraph, method: str = "auto",
                only: Sequence[int] | None = None) -> dict[int, tuple[bool, dict]]:
    """Extremality verdicts (with certificates) for generator indices ``only`` (default all)."""
    gens = graph.integer_generators()
    idx = range(len(graph.generators)) if only is None else list(only)
    if method == "auto":
        method = "facets" if len(gens) <= FACETS_LIMIT else "lp"
    if method == "facets":
        verdicts = extreme_generators_facets(gens)
        return {i: (verdicts[i][0], dict(verdicts[i][1], method="facets")) for i in idx}
    ce = ConeExtremality(gens, use_float=(method == "lp"))
    return {i: ce.certify(i) for i in idx}


def reduced_circuits(graph: CircuitGraph, method: str = "auto") -> CircuitFamily:
    """Circuits whose extended form spans an extreme ray of the circuit graph."""
    verdicts = extremality(graph, method)
    keep = [_attach(g.circuit, {"extreme": verdicts[i][1]})
            for i, g in enumerate(graph.generators) if verdicts[i][0]]
    return CircuitFamily(keep, graph.family.support, graph.family.constraint)


def verify_extremality(graph: CircuitGraph, i: int, verdict: bool, cert: dict) -> bool:
    """Independent re-check of one verdict returned by :func:`extremality`."""
    gens = graph.integer_generators()
    if cert.get("method") == "facets":
        # recompute via an LP-free exact simplex certificate
        ok, c2 = ConeExtremality(gens, use_float=False).certify(i)
        return ok == verdict and verify_certificate(gens, i, ok, c2)
    return verify_certificate(gens, i, verdict, cert)


# ---------------------------------------------------------------------------
# Combinatorial filters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    beta_prime: int
    lambda_prime: tuple[Fraction, ...]
    gamma: Fraction

    def to_json(self) -> dict:
        return {"beta_prime": self.beta_prime,
                "lambda_prime": [str(x) for x in self.lambda_prime],
                "gamma": str(self.gamma)}


def combinatorial_witness(a: SupportSet, c: Circuit, beta_prime: int | None = None) -> Witness | None:
    """Search ``beta' not in supp lam`` and normalized ``lam' in N_beta'`` with
    ``(lam')+ within supp lam`` and ``A lam' = gamma A lam`` for some ``gamma >= 0``.

    For each ``beta'`` this is one exact feasibility problem in the weights
    ``mu`` of ``(lam')+`` and ``gamma``.  Witnesses with ``(lam')+`` inside
    ``lam+`` are tried first.
    """
    lam = c.normalized
    supp = list(c.support)
    image = a.apply(lam)
    candidates = [beta_prime] if beta_prime is not None else [
        b for b in range(len(a)) if b not in supp]
    for bp in candidates:
        if bp in supp:
            continue
        for allowed in (list(c.positive_support), supp):
            w = _witness_lp(a, image, allowed, bp)
            if w is not None:
                return w
    return None


def _witness_lp(a: SupportSet, image, allowed: list[int], bp: int) -> Witness | None:
    k = len(allowed)
    A_eq = [[a.points[s][r] for s in allowed] + [-image[r]] for r in range(a.n)]
    b_eq = list(a.points[bp])
    A_eq.append([1] * k + [0])
    b_eq.append(1)
    res = linprog_exact([0] * (k + 1), A_eq=A_eq, b_eq=b_eq)
    if res.status != OPTIMAL:
        return None
    mu, gamma = res.x[:k], res.x[k]
    lp = [Fraction(0)] * len(a)
    for s, v in zip(allowed, mu):
        lp[s] = v
    lp[bp] = Fraction(-1)
    assert a.apply(lp) == tuple(gamma * x for x in image)
    return Witness(bp, tuple(lp), gamma)


def filter_nonreduced_combinatorial(family: CircuitFamily, beta_prime: int | None = None
                                    ) -> tuple[list[tuple[Circuit, Witness]], list[Circuit]]:
    """Split ``family`` into (certified non-reduced with witness, undecided)."""
    flagged, rest = [], []
    for c in family:
        w = combinatorial_witness(family.support, c, beta_prime)
        if w is None:
            rest.append(c)
        else:
            flagged.append((c, w))
    return flagged, rest


def convex_hull_witness(a: SupportSet, c: Circuit) -> int | None:
    """A support point outside ``supp lam`` lying in ``conv(supp lam)``, if any."""
    supp = [a.points[i] for i in c.support]
    for i, p in enumerate(a.points):
        if c.nu[i] == 0 and in_conv(p, supp)[0]:
            return i
    return None


def filter_convex_hull(family: CircuitFamily) -> tuple[list[tuple[Circuit, int]], list[Circuit]]:
    flagged, rest = [], []
    for c in family:
        w = convex_hull_witness(family.support, c)
        if w is None:
            rest.append(c)
        else:
            flagged.append((c, w))
    return flagged, rest


@dataclass
class Attribution:
    circuit: Circuit
    reduced: bool
    decided_by: str  # "convex-hull" | "combinatorial" | "extreme-ray"
    witness: object

    def to_json(self) -> dict:
        d = self.circuit.to_json()
        d["reduced"] = self.reduced
        d["decided_by"] = self.decided_by
        if isinstance(self.witness, Witness):
            d["witness"] = self.witness.to_json()
        elif self.decided_by == "convex-hull":
            d["witness"] = {"point_in_hull": self.witness}
        else:
            d["witness"] = None
            d["certificate"] = dict(d["certificate"] or {}, extreme=self.witness)
        return d


def classify(graph: CircuitGraph, use_filters: bool = True, method: str = "auto"
             ) -> list[Attribution]:
    """Decide reducedness of every circuit, recording which test decided it.

    The filters only ever certify non-reducedness; whatever they leave open
    is decided by the extreme-ray test on the full generator set.
    """
    a = graph.family.support
    out: dict[int, Attribution] = {}
    if use_filters:
        for i, g in enumerate(graph.generators):
            w = convex_hull_witness(a, g.circuit)
            if w is not None:
                out[i] = Attribution(g.circuit, False, "convex-hull", w)
                continue
            cw = combinatorial_witness(a, g.circuit)
            if cw is not None:
                out[i] = Attribution(g.circuit, False, "combinatorial", cw)
    todo = [i for i in range(len(graph.generators)) if i not in out]
    verdicts = extremality(graph, method, only=todo)
    for i in todo:
        ok, cert = verdicts[i]
        out[i] = Attribution(graph.generators[i].circuit, ok, "extreme-ray", cert)
    return [out[i] for i in range(len(graph.generators))]


# ---------------------------------------------------------------------------
# Closed forms and slice checks
# ---------------------------------------------------------------------------

def reduced_affine_circuits(a: SupportSet) -> CircuitFamily:
    """Affine circuits ``nu`` with ``A`` meeting ``conv(nu+)`` only in ``nu+`` and ``nu-``.

    Points on the relative boundary of ``conv(nu+)`` count: the left support-4
    pattern on the 3x3 grid has one on an edge and is not reduced.
    """
    fam = affine_circuits(a)

    def reduced(c: Circuit) -> bool:
        plus = [a.points[i] for i in c.positive_support]
        return not any(c.nu[i] == 0 and in_conv(p, plus)[0]
                       for i, p in enumerate(a.points))

    return fam.subfamily(reduced)


def reduced_univariate(a: SupportSet, shape: str) -> CircuitFamily:
    """Closed-form reduced circuits for ``R``, ``[0, inf)`` and ``[-1, 1]``."""
    order, alphas = _sorted_univariate(a)
    m = len(a)
    if shape == INTERVAL and m < 3:
        raise PreconditionError("the interval closed form needs at least three support points")
    x = univariate_set(shape)
    vectors = [three_term(m, order, alphas, i - 1, i, i + 1) for i in range(1, m - 1)]
    if shape in (HALFLINE, INTERVAL) and m >= 2:
        vectors.append(two_term(m, order[1], order[0]))
    if shape == INTERVAL:
        vectors.append(two_term(m, order[m - 2], order[m - 1]))
    if shape not in (LINE, HALFLINE, INTERVAL):
        raise InputError(f"unknown univariate shape {shape!r}")
    circuits = []
    for v in vectors:
        s = support_function(x, tuple(-t for t in a.apply(v)))
        circuits.append(Circuit.from_vector(v, s, {"route": "closed-form"}))
    return CircuitFamily(circuits, a, x)


def reduced_cone_zero_slice_check(a: SupportSet, x, method: str = "auto") -> tuple[bool, tuple | None]:
    """Compare reduced circuits with ``A lam = 0`` of a full-dimensional cone with reduced affine circuits."""
    x = as_polyhedron(x)
    if not x.is_cone():
        raise NotAConeError("reduced_cone_zero_slice_check needs a cone")
    if not x.is_full_dimensional():
        raise PreconditionError("reduced_cone_zero_slice_check needs a full-dimensional cone")
    fam = enumerate_circuits_cone(a, x)
    red = reduced_circuits(build_circuit_graph(fam), method)
    zero = {c.nu for c in red if is_zero(a.apply(c.nu))}
    aff = reduced_affine_circuits(a).rays()
    diff = sorted(zero ^ aff)
    return (not diff), (diff[0] if diff else None)


def reduce_family(family: CircuitFamily, method: str = "auto") -> CircuitFamily:
    return reduced_circuits(build_circuit_graph(family), method)

