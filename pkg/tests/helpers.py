"""Random instance generators shared by several test modules."""
import math
import random
from fractions import Fraction as F
from functools import lru_cache

from subcirc.circuits import SupportSet, enumerate_circuits
from subcirc.exactmath import dot
from subcirc.lp import UNBOUNDED, linprog_exact
from subcirc.polyhedra import (INF, HRep, Polyhedron, hrep_from_vrep, support_function,
                               verify_facet_certificate, verify_vrep_certificates,
                               vrep_from_hrep)
from subcirc.sage import AgeWitness, Signomial


@lru_cache(maxsize=None)
def member_pool():
    """(support, X, circuits) triples over bounded X, used to draw AGE members."""
    triangle = Polyhedron.from_vrep(vertices=[(0, 0), (2, 0), (0, 1)])
    cases = [
        (SupportSet.make([(0,), (1,), (2,), (4,)]), Polyhedron.cube(1)),
        (SupportSet.make([(-1,), (0,), (3,)]), Polyhedron.from_vrep(vertices=[(0,), (2,)])),
        (SupportSet.grid(2), Polyhedron.cube(2)),
        (SupportSet.make([(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]), triangle),
    ]
    return [(a, x, list(enumerate_circuits(a, x))) for a, x in cases]


def random_age_member(rng: random.Random, margin: float = 1e-6):
    """A signomial in the witnessed AGE cone of a random circuit, with log-margin at least ``margin``.

    Returns ``(f, x, witness)``.
    """
    a, x, circuits = rng.choice(member_pool())
    c = rng.choice(circuits)
    w = AgeWitness(c)
    lam = w.lam
    coeffs = [0.0] * len(a)
    for i, v in enumerate(lam):
        if v > 0:
            coeffs[i] = rng.uniform(0.1, 5.0)
        elif v == 0 and rng.random() < 0.5:
            coeffs[i] = rng.uniform(0.0, 3.0)
    lhs = math.fsum(float(v) * (math.log(coeffs[i]) - math.log(float(v)))
                    for i, v in enumerate(lam) if v > 0)
    gap = margin + rng.uniform(0.0, 1.0) * rng.choice([0.0, 1e-3, 1.0])
    coeffs[c.beta] = -math.exp(lhs - float(w.sigma) - gap)
    return Signomial.make(a, coeffs), x, w


def random_hrep(rng, n, m):
    """Random non-empty H-rep: a random rational point is made feasible."""
    x0 = [F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)]
    rows = []
    while len(rows) < m:
        a = [rng.randint(-5, 5) for _ in range(n)]
        if not any(a):
            continue
        rows.append((a, dot(a, x0) + rng.randint(0, 5)))
    return HRep.make(rows, dim=n)


def lp_max(h, y):
    res = linprog_exact(y, A_ub=[a for a, _ in h.inequalities], b_ub=[b for _, b in h.inequalities],
                        A_eq=[a for a, _ in h.equations], b_eq=[b for _, b in h.equations],
                        free=range(h.ambient_dim))
    return INF if res.status == UNBOUNDED else res.value


def check_round_trip(h, rng):
    v = vrep_from_hrep(h)
    assert verify_vrep_certificates(h, v)
    h2 = hrep_from_vrep(v)
    for (a, b), cert in zip(h2.inequalities, h2.certificates):
        assert verify_facet_certificate(v, a, b, cert)
    v2 = vrep_from_hrep(h2)
    p1, p2 = Polyhedron(hrep=h), Polyhedron(hrep=h2)
    # mutual containment of generators in the other description
    assert all(p2.contains(x) for x in v.vertices) and all(p1.contains(x) for x in v2.vertices)
    # support values from generators agree with an LP over the original inequalities
    for _ in range(4):
        y = [rng.randint(-4, 4) for _ in range(h.ambient_dim)]
        assert support_function(Polyhedron(vrep=v), y) == lp_max(h, y)
