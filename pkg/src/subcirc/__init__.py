"""Exact sublinear circuits, reduced circuits and AGE certificates for signomials."""

__version__ = "0.1.0"

from .circuits import (Circuit, CircuitFamily, SupportSet, affine_circuits,
                       check_cube_exclusion, check_cube_exclusion_general,
                       check_edge_case_sufficient, check_support_necessary,
                       circuits_orthant, circuits_univariate, cone_zero_slice_check,
                       enumerate_circuits, enumerate_circuits_cone, is_circuit,
                       verify_circuit_certificate)
from .errors import (DependentExponentialsError, EmptyPolyhedronError, InputError,
                     NotAConeError, PreconditionError, SubcircError)
from .polyhedra import (HRep, Polyhedron, VRep, dual_cone, hrep_from_vrep,
                        minkowski_sum, recession_cone, support_function, vrep_from_hrep)
from .reduction import (CircuitGraph, build_circuit_graph, classify,
                        filter_convex_hull, filter_nonreduced_combinatorial,
                        reduced_affine_circuits, reduced_circuits,
                        reduced_cone_zero_slice_check, reduced_univariate)
from .sage import (AgeWitness, Signomial, age_membership, decompose_atomic, evaluate,
                   interval_extreme_ray_check, sage_decomposition_summands,
                   sample_nonnegativity)
