"""Signomials, witnessed AGE membership and the univariate extreme-ray checker."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Sequence

import numpy as np
from scipy.stats import qmc

from .circuits import (Circuit, CircuitFamily, SupportSet, enumerate_circuits)
from .errors import (DegenerateSupportError, InputError, NonCompactError,
                     PreconditionError, UnboundedSamplingError,
                     WitnessMismatchError)
from .exactmath import dot, frac, vec
from .polyhedra import Polyhedron, as_polyhedron, support_function
from .reduction import build_circuit_graph, reduced_circuits

log = logging.getLogger(__name__)

MEMBER, BOUNDARY, NON_MEMBER = "member", "boundary", "non-member"
EXTREMAL, NOT_EXTREMAL = "extremal", "not-extremal"
BOUNDARY_TOL = 1e-9
EXP_LIMIT = 700


class ExpRational:
    """A finite sum ``sum_q r_q * e^q`` with rational ``r_q`` and ``q``.

    Distinct rational powers of ``e`` are linearly independent over the
    rationals, so equality of the term dictionaries is exact equality of the
    numbers.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {Fraction(q): Fraction(r) for q, r in (terms or {}).items() if r}

    @classmethod
    def exp(cls, q, coef=1) -> "ExpRational":
        return cls({frac(q): frac(coef)})

    @classmethod
    def lift(cls, x) -> "ExpRational":
        if isinstance(x, ExpRational):
            return x
        return cls({Fraction(0): frac(x)})

    def __add__(self, other):
        other = ExpRational.lift(other)
        out = dict(self.terms)
        for q, r in other.terms.items():
            out[q] = out.get(q, Fraction(0)) + r
        return ExpRational(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpRational({q: -r for q, r in self.terms.items()})

    def __sub__(self, other):
        return self + (-ExpRational.lift(other))

    def __eq__(self, other):
        try:
            return self.terms == ExpRational.lift(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __float__(self):
        return math.fsum(float(r) * math.exp(q) for q, r in self.terms.items())

    def log_abs(self) -> float:
        """``ln |x|``, exact in the exponent for single-term values."""
        if len(self.terms) == 1:
            (q, r), = self.terms.items()
            return _ln_abs(r) + float(q)
        return math.log(abs(float(self)))

    def sign(self) -> int:
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            r = next(iter(self.terms.values()))
            return 1 if r > 0 else -1
        v = float(self)
        return (v > 0) - (v < 0)

    def __repr__(self):
        return " + ".join(f"{r}*e^({q})" for q, r in sorted(self.terms.items())) or "0"

    def __str__(self):
        return repr(self)


def _sign(c) -> int:
    if isinstance(c, ExpRational):
        return c.sign()
    return (c > 0) - (c < 0)


def _ln_abs(c) -> float:
    if isinstance(c, ExpRational):
        return c.log_abs()
    if isinstance(c, Fraction):
        return math.log(abs(c.numerator)) - math.log(c.denominator)
    return math.log(abs(c))


def _coef(c):
    if isinstance(c, (ExpRational, float)):
        return c
    if isinstance(c, str):
        try:
            return Fraction(c)
        except ValueError:
            return float(c)
    if isinstance(c, Real) and not isinstance(c, (int, Fraction)):
        return float(c)
    return frac(c)


@dataclass(frozen=True)
class Signomial:
    """``f(x) = sum_alpha c_alpha exp(alpha . x)``; coefficients may be rational, float or :class:`ExpRational`."""

    support: SupportSet
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != len(self.support):
            raise InputError("coefficient vector length does not match the support set")

    @classmethod
    def make(cls, support, coefficients) -> "Signomial":
        if not isinstance(support, SupportSet):
            support = SupportSet.make(support)
        return cls(support, tuple(_coef(c) for c in coefficients))

    def __add__(self, other: "Signomial") -> "Signomial":
        if self.support != other.support:
            raise InputError("signomials over different support sets")
        return Signomial(self.support, tuple(ExpRational.lift(a) + ExpRational.lift(b)
                                             if isinstance(a, ExpRational) or isinstance(b, ExpRational)
                                             else a + b
                                             for a, b in zip(self.coefficients, other.coefficients)))

    def float_coefficients(self) -> np.ndarray:
        return np.array([float(c) for c in self.coefficients])

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return str(c)
            return float(c)
        return {"support": self.support.to_json(), "coefficients": [enc(c) for c in self.coefficients]}


def evaluate(f: Signomial, x: Sequence) -> float:
    """Floating evaluation with exactly computed exponents and compensated summation.

    Raises OverflowError when some ``|alpha . x|`` exceeds 700.
    """
    if len(x) != f.support.n:
        raise InputError("evaluation point has the wrong dimension")
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    terms = []
    for c, p in zip(f.coefficients, f.support.points):
        e = dot(p, vec(x)) if exact else math.fsum(float(a) * float(b) for a, b in zip(p, x))
        if abs(e) > EXP_LIMIT:
            raise OverflowError(f"exponent {float(e):.1f} out of range")
        if isinstance(c, ExpRational):
            terms.extend(float(r) * math.exp(float(q) + float(e)) for q, r in c.terms.items())
        else:
            terms.append(float(c) * math.exp(float(e)))
    return math.fsum(terms)


@dataclass(frozen=True)
class AgeWitness:
    """A normalized circuit with ``sigma = sigma_X(-A lam)`` for the normalized vector."""

    circuit: Circuit

    @property
    def lam(self) -> tuple[Fraction, ...]:
        return self.circuit.normalized

    @property
    def sigma(self) -> Fraction:
        return self.circuit.normalized_sigma

    @classmethod
    def of(cls, a: SupportSet, x, lam: Sequence) -> "AgeWitness":
        lam = vec(lam)
        s = support_function(as_polyhedron(x), tuple(-v for v in a.apply(lam)))
        return cls(Circuit.from_vector(lam, s))


@dataclass(frozen=True)
class Membership:
    status: str
    margin: float

    def to_json(self) -> dict:
        return {"status": self.status, "margin": self.margin}


def age_membership(f: Signomial, w: AgeWitness) -> Membership:
    """Decide ``prod (c_a / lam_a)^lam_a >= -c_beta * exp(sigma)`` in the log domain.

    ``margin`` is ``sum lam_a (ln c_a - ln lam_a) - (ln(-c_beta) + sigma)``.
    """
    lam = w.lam
    if len(lam) != len(f.coefficients):
        raise WitnessMismatchError("witness and signomial have different support sizes")
    beta = w.circuit.beta
    c = f.coefficients
    if any(_sign(v) < 0 for i, v in enumerate(c) if i != beta):
        return Membership(NON_MEMBER, -math.inf)
    if _sign(c[beta]) >= 0:
        return Membership(MEMBER, math.inf)
    plus = [i for i, v in enumerate(lam) if v > 0]
    if any(_sign(c[i]) == 0 for i in plus):
        return Membership(NON_MEMBER, -math.inf)
    lhs = math.fsum(float(lam[i]) * (_ln_abs(c[i]) - _ln_abs(lam[i])) for i in plus)
    rhs = _ln_abs(c[beta]) + float(w.sigma)
    margin = lhs - rhs
    if abs(margin) <= BOUNDARY_TOL * max(1.0, abs(lhs), abs(rhs)):
        return Membership(BOUNDARY, margin)
    return Membership(MEMBER if margin > 0 else NON_MEMBER, margin)


def sage_decomposition_summands(a: SupportSet, x, use_reduced: bool = True) -> list[Circuit]:
    """Index set of the witnessed AGE cones in the Minkowski decomposition."""
    fam = enumerate_circuits(a, x)
    if not len(fam):
        log.warning("no circuits: the SAGE cone is the non-negative orthant")
        return []
    if use_reduced:
        fam = reduced_circuits(build_circuit_graph(fam))
    return list(fam)


@dataclass(frozen=True)
class ExtremalVerdict:
    status: str
    case: str | None = None
    reason: str | None = None
    zero: float | None = None

    @property
    def extremal(self) -> bool:
        return self.status == EXTREMAL

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _close(x: float, y: float, tol: float = BOUNDARY_TOL) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def interval_extreme_ray_check(f: Signomial) -> ExtremalVerdict:
    """Is ``f`` on an extreme ray of the SAGE cone of ``X = [-1, 1]``?

    The support must be univariate and sorted ascending.  Two-term rays are
    ``e^{a_2 x} - e^{a_1 - a_2} e^{a_1 x}`` and its mirror at the top end;
    three-term rays sit on consecutive support points with a zero of ``f``
    in ``[-1, 1]``.
    """
    a = f.support
    if a.n != 1:
        raise InputError("interval checker needs a univariate support")
    alphas = [p[0] for p in a.points]
    if alphas != sorted(alphas):
        raise InputError("support must be sorted ascending")
    m = len(alphas)
    c = [float(v) for v in f.coefficients]
    nz = [i for i, v in enumerate(c) if v != 0]
    if len(nz) == 2:
        i, j = nz
        if j != i + 1:
            return ExtremalVerdict(NOT_EXTREMAL, reason="two-term support not consecutive")
        gap = float(alphas[i] - alphas[j])  # negative
        if i == 0 and c[0] < 0 < c[1] and _close(c[0] / c[1], -math.exp(gap)):
            return ExtremalVerdict(EXTREMAL, case="lower boundary two-term")
        if j == m - 1 and c[j] < 0 < c[i] and _close(c[j] / c[i], -math.exp(gap)):
            return ExtremalVerdict(EXTREMAL, case="upper boundary two-term")
        return ExtremalVerdict(NOT_EXTREMAL, reason="two-term coefficients off the boundary ray")
    if len(nz) == 3 and nz[1] == nz[0] + 1 and nz[2] == nz[1] + 1:
        lo, i, hi = nz
        if not (c[lo] > 0 and c[hi] > 0 and c[i] < 0):
            return ExtremalVerdict(NOT_EXTREMAL, reason="sign pattern is not (+, -, +)")
        width = float(alphas[hi] - alphas[lo])
        lam_lo = float((alphas[hi] - alphas[i]) / (alphas[hi] - alphas[lo]))
        lam_hi = float((alphas[i] - alphas[lo]) / (alphas[hi] - alphas[lo]))
        target = -math.exp(lam_lo * math.log(c[lo] / lam_lo) + lam_hi * math.log(c[hi] / lam_hi))
        if not _close(c[i], target):
            return ExtremalVerdict(NOT_EXTREMAL, reason=f"middle coefficient {c[i]} differs from {target}")
        ell = math.log(c[lo] * lam_hi / (c[hi] * lam_lo))
        slack = BOUNDARY_TOL * max(1.0, width)
        if not (-width - slack <= ell <= width + slack):
            return ExtremalVerdict(NOT_EXTREMAL, reason="zero of f lies outside [-1, 1]")
        return ExtremalVerdict(EXTREMAL, case="three-term", zero=ell / width)
    return ExtremalVerdict(NOT_EXTREMAL, reason="wrong shape")


def decompose_atomic(f: Signomial, x) -> tuple[Signomial, Signomial]:
    """Split a single positive term into two AGE signomials.

    For ``f = c e^{alpha x}`` and the first index ``beta != alpha``, with
    ``s = sigma_X(beta - alpha)``: ``f1 = c e^{alpha x} - c e^{-s} e^{beta x}``
    and ``f2 = c e^{-s} e^{beta x}``.  Coefficients are :class:`ExpRational`,
    so ``f1 + f2 == f`` holds exactly.
    """
    a = f.support
    nz = [i for i, v in enumerate(f.coefficients) if _sign(v) != 0]
    if len(a) < 2:
        raise DegenerateSupportError("atomic decomposition needs at least two support points")
    if len(nz) != 1 or _sign(f.coefficients[nz[0]]) <= 0:
        raise DegenerateSupportError("f must consist of a single positive term")
    x = as_polyhedron(x)
    if not x.is_bounded():
        raise NonCompactError("atomic decomposition needs a compact X")
    alpha = nz[0]
    beta = next(i for i in range(len(a)) if i != alpha)
    lam = [Fraction(0)] * len(a)
    lam[alpha], lam[beta] = Fraction(1), Fraction(-1)
    s = support_function(x, tuple(-v for v in a.apply(lam)))
    c = ExpRational.lift(f.coefficients[alpha])
    if len(c.terms) != 1:
        raise PreconditionError("coefficient must be a single rational multiple of a power of e")
    (q, r), = c.terms.items()
    zero = ExpRational()
    k1 = [zero] * len(a)
    k2 = [zero] * len(a)
    k1[alpha] = c
    k1[beta] = ExpRational.exp(q - s, -r)
    k2[beta] = ExpRational.exp(q - s, r)
    return Signomial(a, tuple(k1)), Signomial(a, tuple(k2))


def sample_nonnegativity(f: Signomial, x, n: int = 10_000, seed: int = 0,
                         box: Sequence[tuple] | None = None, method: str = "sobol"
                         ) -> tuple[float, np.ndarray]:
    """Minimum of ``f`` over ``n`` low-discrepancy points of ``X`` and where it is attained."""
    x = as_polyhedron(x)
    d = x.ambient_dim
    if box is None:
        if not x.is_bounded():
            raise UnboundedSamplingError("X is unbounded; pass a sampling box")
        verts = np.array([[float(v) for v in p] for p in x.vrep.vertices])
        lo, hi = verts.min(axis=0), verts.max(axis=0)
    else:
        lo = np.array([float(b[0]) for b in box])
        hi = np.array([float(b[1]) for b in box])
    h = x.hrep
    A = np.array([[float(v) for v in a] for a, _ in h.inequalities]).reshape(-1, d)
    b = np.array([float(v) for _, v in h.inequalities])
    E = np.array([[float(v) for v in a] for a, _ in h.equations]).reshape(-1, d)
    e = np.array([float(v) for _, v in h.equations])
    flat = hi - lo <= 0
    sampler = (qmc.Sobol(d, scramble=True, seed=seed) if method == "sobol"
               else qmc.Halton(d, scramble=True, seed=seed))
    pts = np.empty((0, d))
    for _ in range(64):
        raw = sampler.random_base2(max(8, math.ceil(math.log2(n)))) if method == "sobol" \
            else sampler.random(max(n, 256))
        cand = lo + raw * np.where(flat, 0, hi - lo)
        ok = np.all(cand @ A.T <= b + 1e-12, axis=1) if len(b) else np.ones(len(cand), bool)
        if len(e):
            ok &= np.all(np.abs(cand @ E.T - e) <= 1e-9, axis=1)
        pts = np.vstack([pts, cand[ok]])
        if len(pts) >= n:
            break
    if not len(pts):
        raise PreconditionError("no sample point landed inside X")
    pts = pts[:n]
    P = np.array([[float(v) for v in p] for p in f.support.points])
    expo = pts @ P.T
    if np.abs(expo).max() > EXP_LIMIT:
        raise OverflowError("exponent out of range on the sample")
    vals = np.exp(expo) @ f.float_coefficients()
    k = int(np.argmin(vals))
    return float(vals[k]), pts[k]


__all__ = [
    "ExpRational", "Signomial", "AgeWitness", "Membership", "ExtremalVerdict",
    "evaluate", "age_membership", "sage_decomposition_summands",
    "interval_extreme_ray_check", "decompose_atomic", "sample_nonnegativity",
    "MEMBER", "BOUNDARY", "NON_MEMBER", "EXTREMAL", "NOT_EXTREMAL",
    "CircuitFamily", "Polyhedron",
]
