import pickle
import random
import threading
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import check_round_trip, random_hrep
from subcirc.circuits import SupportSet, p_beta_vrep
from subcirc.dd import ALGEBRAIC, COMBINATORIAL, cone_rays
from subcirc.errors import EmptyPolyhedronError, InputError, NotAConeError, NotAMemberError
from subcirc.exactmath import dot, primitive_ray, rank
from subcirc.polyhedra import (INF, HRep, Polyhedron, VRep, dual_cone, facet_certificate,
                               hrep_from_vrep, in_conv, in_relint_conv, is_extreme_generator,
                               minkowski_sum, recession_cone, support_function,
                               verify_facet_certificate, vrep_from_hrep)


def cube_hrep(n=2):
    rows = []
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        rows += [(e, 1), ([-x for x in e], 1)]
    return HRep.make(rows, dim=n)


def normals(h):
    return {primitive_ray(tuple(a) + (b,)) for a, b in h.inequalities}


def test_cube_vertices():
    v = vrep_from_hrep(cube_hrep())
    assert set(v.vertices) == {(a, b) for a in (-1, 1) for b in (-1, 1)}
    assert not v.rays and not v.lineality


def test_orthant_generators():
    v = vrep_from_hrep(HRep.make([((-1, 0), 0), ((0, -1), 0)]))
    assert v.vertices == ((0, 0),)
    assert set(v.rays) == {(1, 0), (0, 1)}


def test_empty_hrep_raises():
    with pytest.raises(EmptyPolyhedronError):
        vrep_from_hrep(HRep.make([((1,), -1), ((-1,), -1)]))


def test_zero_normal_rejected():
    with pytest.raises(InputError):
        HRep.make([((0, 0), 1)])


def test_cube_facets_from_vertices():
    v = VRep.make([(a, b) for a in (-1, 1) for b in (-1, 1)])
    assert normals(hrep_from_vrep(v)) == normals(cube_hrep())


def test_planar_cone_has_two_facets():
    h = hrep_from_vrep(VRep.make([(0, 0)], [(-1, 1), (2, -1)]))
    assert len(h.inequalities) == 2
    # the facets pass through the origin and contain one generator each
    assert all(b == 0 for _, b in h.inequalities)


def _interval_pbeta(beta):
    a = SupportSet.make([(0,), (1,), (2,)])
    pv, _ = p_beta_vrep(a, Polyhedron.cube(1).vrep, beta)
    return pv


def test_univariate_p_beta_three_facets_and_lineality():
    pv = _interval_pbeta(1)
    h = hrep_from_vrep(pv)
    assert len(h.inequalities) == 3
    v = vrep_from_hrep(h)
    assert rank(list(v.lineality) + [(1, 1, 1)]) == len(v.lineality) == 1
    # each facet is orthogonal to the line R.1
    assert all(sum(a) == 0 for a, _ in h.inequalities)


def test_univariate_p_beta_as_minkowski_sum():
    # -A^T [-1,1] is the segment between (0,1,2) and (0,-1,-2); the polar of N_beta
    # is R.1 + cone{-e_alpha : alpha != beta}
    seg = VRep.make([(0, 1, 2), (0, -1, -2)])
    polar = VRep.make([(0, 0, 0)], [(-1, 0, 0), (0, 0, -1)], [(1, 1, 1)])
    s = minkowski_sum(seg, polar)
    assert len(hrep_from_vrep(s).inequalities) == 3


def test_p_beta_of_planar_cone_instance_has_both_normals():
    a = SupportSet.make([(0, 0), (1, 0), (0, 1)])
    x = Polyhedron.cone([(-1, 1), (2, -1)])
    pv, _ = p_beta_vrep(a, x.vrep, 0)
    got = {primitive_ray(n) for n, _ in hrep_from_vrep(pv).inequalities}
    assert {(-2, 1, 1), (-3, 1, 2)} <= got


def test_support_function_examples():
    cube = Polyhedron.cube(3)
    for y in [(1, -2, 3), (0, 0, 0), (F(1, 2), -5, 0)]:
        assert support_function(cube, y) == sum(abs(F(v)) for v in y)
    assert support_function(Polyhedron.orthant(1), (1,)) == INF
    assert support_function(Polyhedron.cone([(-1, 1), (2, -1)]), (-1, -1)) == 0


def test_recession_cones():
    assert recession_cone(Polyhedron.cube(2)).rays == ()
    rc = recession_cone(Polyhedron.orthant(2))
    assert set(rc.rays) == {(1, 0), (0, 1)}
    pv = _interval_pbeta(1)
    rec = recession_cone(Polyhedron(vrep=pv))
    assert len(rec.lineality) == 1 and primitive_ray(rec.lineality[0]) in ((1, 1, 1), (-1, -1, -1))
    # modulo the line, the rays are -e_0 and -e_2
    rays = {primitive_ray(tuple(x - r[1] for x in r)) for r in rec.rays}
    assert rays == {(-1, 0, 0), (0, 0, -1)}


def test_minkowski_sum_examples():
    b = VRep.make([(0, 0), (1, 0), (0, 1)])
    s = minkowski_sum(VRep.make([(2, 3)]), b)
    assert set(s.vertices) == {(2, 3), (3, 3), (2, 4)}
    s = minkowski_sum(VRep.make([(-1, -1), (1, 1)]), VRep.make([(0, 0)], [(-1, 0)]))
    assert len(s.vertices) == 2 and len(s.rays) == 1


def test_dual_cones():
    d = dual_cone(Polyhedron.orthant(3).vrep)
    assert set(d.rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)} and not d.lineality
    d = dual_cone(Polyhedron.whole_space(2).vrep)
    assert not d.rays and not d.lineality
    d = dual_cone(VRep.make([(0, 0)], [(-1, 1), (2, -1)]))
    assert set(d.rays) == {(1, 1), (1, 2)}
    with pytest.raises(NotAConeError):
        dual_cone(Polyhedron.cube(2).vrep)


def test_extreme_generator_examples():
    cone = VRep.make([(0, 0, 0)], [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert is_extreme_generator(cone, (0, 1, 0))[0]
    assert not is_extreme_generator(cone, (1, 1, 0))[0]
    with pytest.raises(NotAMemberError):
        is_extreme_generator(cone, (-1, 0, 0))


def test_extreme_generator_halfline_circuit_graph():
    # extended normalized circuits of A = {0,1,2} on [0, inf) plus (0,0,0,1)
    gens = [(1, -2, 1, 0), (0, -1, 1, 0), (-1, 0, 1, 0), (-1, 1, 0, 0), (0, 0, 0, 1)]
    cone = VRep.make([(0,) * 4], gens)
    ok, cert = is_extreme_generator(cone, (F(1, 2), -1, F(1, 2), 0))
    assert ok and cert["rank"] == cert["target"]
    assert not is_extreme_generator(cone, (-1, 0, 1, 0))[0]


def test_in_conv_and_relint():
    tri = [(0, 0), (2, 0), (0, 2)]
    assert in_conv((1, 1), tri)[0]
    assert not in_relint_conv((1, 1), tri)[0]
    ok, w = in_relint_conv((F(1, 2), F(1, 2)), tri)
    assert ok and all(x > 0 for x in w)
    assert not in_conv((2, 2), tri)[0]


def test_polyhedron_cache_is_thread_safe_and_picklable():
    p = Polyhedron(hrep=cube_hrep(3))
    out = []
    threads = [threading.Thread(target=lambda: out.append(p.vrep)) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(v == out[0] for v in out)
    q = pickle.loads(pickle.dumps(p))
    assert q.same_set(p)


def test_translate_and_same_set():
    p = Polyhedron.cube(2).translate((1, 0))
    assert p.contains((2, 1)) and not p.contains((-1, 0))
    assert not p.same_set(Polyhedron.cube(2))


# -------------------------------------------------------------------- properties

def test_dd_round_trip_random_instances():
    rng = random.Random(20240611)
    for _ in range(60):
        n = rng.randint(1, 5)
        check_round_trip(random_hrep(rng, n, rng.randint(1, 10)), rng)


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_adjacency_rules_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    ineqs = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(1, 7))]
    ineqs = [a for a in ineqs if any(a)] or [[1] + [0] * (n - 1)]
    a = cone_rays(ineqs, [], n, ALGEBRAIC)
    b = cone_rays(ineqs, [], n, COMBINATORIAL)
    assert sorted(a.rays) == sorted(b.rays)
    assert rank(a.lineality) == rank(b.lineality) == len(a.lineality)


@given(st.integers(0, 10**6))
@settings(max_examples=60)
def test_support_function_properties(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    p = Polyhedron(hrep=random_hrep(rng, n, rng.randint(1, 6)))
    v = p.vrep
    y1 = [F(rng.randint(-4, 4)) for _ in range(n)]
    y2 = [F(rng.randint(-4, 4)) for _ in range(n)]
    s1 = support_function(p, y1)
    finite = all(dot(y1, r) <= 0 for r in v.rays) and all(dot(y1, l) == 0 for l in v.lineality)
    assert (s1 != INF) == finite
    c = F(rng.randint(1, 7), rng.randint(1, 5))
    s_scaled = support_function(p, [c * t for t in y1])
    assert s_scaled == (INF if s1 == INF else c * s1)
    s2 = support_function(p, y2)
    if s1 != INF and s2 != INF:
        assert support_function(p, [a + b for a, b in zip(y1, y2)]) <= s1 + s2


def test_facet_certificate_rejects_non_facet():
    v = VRep.make([(a, b) for a in (-1, 1) for b in (-1, 1)])
    assert facet_certificate(v, (1, 1), 2) is None
    assert verify_facet_certificate(v, (1, 0), 1, facet_certificate(v, (1, 0), 1))
