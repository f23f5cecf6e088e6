"""Command line interface: ``subcirc {enumerate,reduce,check,age-check,verify-paper}``."""
from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import platform
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .circuits import (HALFLINE, INTERVAL, LINE, Circuit, CircuitFamily, SupportSet, affine_circuits,
                       check_cube_exclusion, check_cube_exclusion_general,
                       check_edge_case_sufficient, check_support_necessary,
                       circuits_orthant, circuits_univariate, enumerate_circuits,
                       enumerate_circuits_cone, in_n_beta, is_circuit)
from .errors import InputError, PreconditionError, SubcircError
from .polyhedra import Polyhedron, support_function
from .reduction import (build_circuit_graph, classify, combinatorial_witness,
                        convex_hull_witness, reduced_univariate)
from .sage import (AgeWitness, ExpRational, Signomial, age_membership,
                   interval_extreme_ray_check, sample_nonnegativity)
from .serial import (checksum, dumps, hrep_from_json, load_json, parse_support,
                     polyhedron_to_json, rational, vrep_from_json)

log = logging.getLogger("subcirc")

ROUTES = ("auto", "general", "cone", "closed-form", "orthant")


@dataclass
class InstanceSpec:
    support: SupportSet
    constraint: Polyhedron
    preset: tuple[str, int] | None  # (kind, n) for presets, None for explicit sets


def parse_preset(text: str) -> tuple[str, int]:
    """``line | halfline | interval | rn:n | orthant:n | cube:n``."""
    if text in (LINE, HALFLINE, INTERVAL):
        return {LINE: "rn", HALFLINE: "orthant", INTERVAL: "cube"}[text], 1
    m = re.fullmatch(r"(rn|orthant|cube):(\d+)", text)
    if not m or int(m.group(2)) < 1:
        raise InputError(f"unknown preset {text!r}")
    return m.group(1), int(m.group(2))


def preset_polyhedron(kind: str, n: int) -> Polyhedron:
    return {"rn": Polyhedron.whole_space, "orthant": Polyhedron.orthant,
            "cube": Polyhedron.cube}[kind](n)


def build_spec(args) -> InstanceSpec:
    support = parse_support(args.support)
    preset = None
    if args.set is not None:
        preset = parse_preset(args.set)
        x = preset_polyhedron(*preset)
    elif args.hrep is not None:
        x = Polyhedron(hrep=hrep_from_json(load_json(args.hrep)))
    else:
        x = Polyhedron(vrep=vrep_from_json(load_json(args.vrep)))
    if x.ambient_dim != support.n:
        raise InputError(f"constraint set has dimension {x.ambient_dim} "
                         f"but the support points have dimension {support.n}")
    return InstanceSpec(support, x, preset)


def _kind(spec: InstanceSpec) -> str | None:
    """Recognize R^n, the orthant and the cube even when given explicitly."""
    if spec.preset is not None:
        return spec.preset[0]
    n = spec.constraint.ambient_dim
    for kind in ("rn", "orthant", "cube"):
        if spec.constraint.same_set(preset_polyhedron(kind, n)):
            return kind
    return None


def _univariate_shape(spec: InstanceSpec) -> str | None:
    if spec.support.n != 1:
        return None
    return {"rn": LINE, "orthant": HALFLINE, "cube": INTERVAL}.get(_kind(spec))


def applicable_routes(spec: InstanceSpec) -> list[str]:
    """Most specific first; ``general`` always applies."""
    out = []
    kind = _kind(spec)
    if _univariate_shape(spec) or kind == "rn":
        out.append("closed-form")
    if kind == "orthant":
        out.append("orthant")
    if spec.constraint.is_cone():
        out.append("cone")
    out.append("general")
    return out


def run_route(spec: InstanceSpec, route: str, parallel: int | None) -> CircuitFamily:
    a, x = spec.support, spec.constraint
    if route == "auto":
        route = applicable_routes(spec)[0]
    if route == "general":
        return enumerate_circuits(a, x, parallel=parallel)
    if route == "cone":
        return enumerate_circuits_cone(a, x, parallel=parallel)
    if route == "orthant":
        if _kind(spec) != "orthant":
            raise PreconditionError("orthant route needs X = R_+^n")
        return CircuitFamily(circuits_orthant(a), a, x)
    if route == "closed-form":
        shape = _univariate_shape(spec)
        if shape is not None:
            return CircuitFamily(circuits_univariate(a, shape), a, x)
        if _kind(spec) == "rn":
            return CircuitFamily(affine_circuits(a), a, x)
        raise PreconditionError("closed forms exist for univariate presets and R^n only")
    raise InputError(f"unknown route {route!r}")


def _canonical(fam: CircuitFamily) -> list:
    return [(c.beta, c.nu, str(c.sigma)) for c in fam]


def cross_check(spec: InstanceSpec, fam: CircuitFamily, route: str, parallel) -> dict:
    """Compare ``fam`` against every other applicable route."""
    used = applicable_routes(spec)[0] if route == "auto" else route
    results = {}
    for other in applicable_routes(spec):
        if other == used:
            continue
        got = run_route(spec, other, parallel)
        results[other] = _canonical(got) == _canonical(fam)
    return {"route": used, "agrees_with": results}


def run_report(fam: CircuitFamily, payload: dict, started: float) -> dict:
    per_beta = fam.count_by_beta()
    assert sum(per_beta) == len(fam)
    return {
        "counts": {"total": len(fam), "per_beta": fam.count_table()},
        "seconds": round(time.perf_counter() - started, 3),
        "version": __version__,
        "python": platform.python_version(),
        "checksum": checksum(payload),
    }


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def table_text(rows: list[list]) -> str:
    cells = [[str(x) for x in r] for r in rows]
    width = max((len(c) for r in cells for c in r), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def family_csv(fam: CircuitFamily) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in fam.count_table():
        w.writerow(row)
    return buf.getvalue()


def family_table(fam: CircuitFamily, title: str) -> str:
    lines = [f"{title}: {len(fam)}", "per-beta counts:", table_text(fam.count_table()), ""]
    for c in fam:
        lines.append(f"beta={c.beta:<3} sigma={str(c.normalized_sigma):<6} "
                     f"lam=({', '.join(str(v) for v in c.normalized)})")
    return "\n".join(lines) + "\n"


def emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_family(args, fam: CircuitFamily, payload: dict, started: float, title: str) -> None:
    if args.format == "csv":
        emit(args, family_csv(fam))
    elif args.format == "table":
        emit(args, family_table(fam, title))
    else:
        payload = dict(payload, report=run_report(fam, payload, started))
        emit(args, dumps(payload) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _parallel(args) -> int:
    return args.parallel if args.parallel is not None else (os.cpu_count() or 1)


def cmd_enumerate(args) -> int:
    started = time.perf_counter()
    spec = build_spec(args)
    fam = run_route(spec, args.route, _parallel(args))
    payload = {"support": spec.support.to_json(),
               "constraint": polyhedron_to_json(spec.constraint),
               "family": fam.to_json()}
    status = 0
    if args.verify:
        v = cross_check(spec, fam, args.route, _parallel(args))
        payload["verify"] = v
        status = 0 if all(v["agrees_with"].values()) else 1
    _emit_family(args, fam, payload, started, "circuits")
    if status:
        log.error("routes disagree: %s", payload["verify"])
    return status


def cmd_reduce(args) -> int:
    started = time.perf_counter()
    spec = build_spec(args)
    fam = run_route(spec, args.route, _parallel(args))
    graph = build_circuit_graph(fam)
    attribution = classify(graph, use_filters=not args.no_filters, method=args.method)
    red = CircuitFamily([a.circuit for a in attribution if a.reduced], spec.support,
                        spec.constraint)
    payload = {"support": spec.support.to_json(),
               "constraint": polyhedron_to_json(spec.constraint),
               "family": red.to_json(),
               "attribution": [a.to_json() for a in attribution]}
    status = 0
    if args.verify:
        checks = {}
        shape = _univariate_shape(spec)
        if shape and not (shape == INTERVAL and len(spec.support) < 3):
            checks["closed-form"] = (_canonical(reduced_univariate(spec.support, shape))
                                     == _canonical(red))
        plain = classify(graph, use_filters=False, method=args.method)
        checks["without-filters"] = ({a.circuit.key for a in plain if a.reduced}
                                     == {c.key for c in red})
        payload["verify"] = checks
        status = 0 if all(checks.values()) else 1
    _emit_family(args, red, payload, started, "reduced circuits")
    return status


def parse_vector(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if text.startswith("["):
        data = load_json(text)
    else:
        data = [t for t in re.split(r"[,\s]+", text.strip("()")) if t]
    if not isinstance(data, list) or not data:
        raise InputError(f"cannot parse vector {text!r}")
    return tuple(rational(x) for x in data)


_EXP = re.compile(r"^([+-]?[0-9./]*)\*?e\^\(?([+-]?[0-9./]+)\)?$")


def parse_coefficient(tok):
    """A rational, a float, or ``r*e^q`` with rational ``r`` and ``q`` (kept exact)."""
    if isinstance(tok, str):
        m = _EXP.match(tok.replace(" ", ""))
        if m:
            r = m.group(1)
            r = {"": "1", "+": "1", "-": "-1"}.get(r, r)
            return ExpRational.exp(rational(m.group(2)), rational(r))
        try:
            return Fraction(tok)
        except ValueError:
            try:
                return float(tok)
            except ValueError:
                raise InputError(f"cannot parse coefficient {tok!r}") from None
    if isinstance(tok, float):
        return tok
    return rational(tok)


def parse_coefficients(text: str) -> list:
    text = text.strip()
    if text.startswith("["):
        data = load_json(text)
        if not isinstance(data, list):
            raise InputError("coefficients must be a list")
        return [parse_coefficient(t) for t in data]
    return [parse_coefficient(t) for t in re.split(r"[,\s]+", text.strip("()")) if t]


def cmd_check(args) -> int:
    spec = build_spec(args)
    a, x = spec.support, spec.constraint
    nu = parse_vector(args.vector)
    if len(nu) != len(a):
        raise InputError(f"vector has {len(nu)} entries, support set has {len(a)}")
    ok, evidence = is_circuit(a, x, nu)
    out = {"vector": [str(v) for v in nu], "circuit": ok, "evidence": evidence}
    if in_n_beta(nu) is not None:
        nec, why = check_support_necessary(a, x, nu)
        out["necessary_conditions"] = {"pass": nec, "reason": why}
        suff, case = check_edge_case_sufficient(a, x, nu)
        out["sufficient_conditions"] = {"applies": suff, "case": case}
        if _kind(spec) == "cube":
            out["cube_exclusion"] = {"basic": check_cube_exclusion(a, nu),
                                     "general": check_cube_exclusion_general(a, nu)}
        if ok:
            s = support_function(x, tuple(-v for v in a.apply(nu)))
            c = Circuit.from_vector(nu, s)
            w = combinatorial_witness(a, c)
            out["non_reduced_witnesses"] = {
                "convex_hull": convex_hull_witness(a, c),
                "combinatorial": w.to_json() if w else None,
            }
    emit(args, dumps(out) + "\n")
    return 0


def cmd_age_check(args) -> int:
    spec = build_spec(args)
    f = Signomial.make(spec.support, parse_coefficients(args.coefficients))
    out = {"coefficients": f.to_json()["coefficients"]}
    if args.witness:
        lam = parse_vector(args.witness)
        if len(lam) != len(spec.support):
            raise InputError("witness length does not match the support set")
        w = AgeWitness.of(spec.support, spec.constraint, lam)
        out["witness"] = {"lambda": [str(v) for v in w.lam], "sigma": str(w.sigma)}
        out["age"] = age_membership(f, w).to_json()
    if _univariate_shape(spec) == INTERVAL:
        out["extremal"] = interval_extreme_ray_check(f).to_json()
    if args.samples:
        value, where = sample_nonnegativity(f, spec.constraint, args.samples, seed=args.seed)
        out["sampled_minimum"] = {"value": value, "at": [float(v) for v in where],
                                  "samples": args.samples, "seed": args.seed}
    emit(args, dumps(out) + "\n")
    return 0


def cmd_reference_suite(args) -> int:
    from .reference import run
    results = run(quick=args.quick)
    if args.format == "json":
        emit(args, dumps({"checks": [r.to_json() for r in results],
                          "all_pass": all(r.ok for r in results)}) + "\n")
    else:
        lines = []
        for r in results:
            mark = "PASS" if r.ok else "FAIL"
            lines.append(f"{mark}  {r.label}  ({r.seconds:.2f}s)")
            if not r.ok:
                lines.append(f"      expected: {r.expected}")
                lines.append(f"      computed: {r.computed}")
        lines.append(f"{sum(r.ok for r in results)}/{len(results)} checks pass")
        emit(args, "\n".join(lines) + "\n")
    return 0 if all(r.ok for r in results) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--support", required=True,
                   help="support set: JSON file, '-' for stdin, inline JSON, or grid:k")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--set", help="preset: line | halfline | interval | rn:n | orthant:n | cube:n")
    g.add_argument("--hrep", help="JSON H-representation (file, '-' or inline)")
    g.add_argument("--vrep", help="JSON V-representation (file, '-' or inline)")


def _output_args(p: argparse.ArgumentParser, formats=("json", "csv", "table")) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--output", help="write to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subcirc", description=__doc__)
    p.add_argument("--version", action="version", version=f"subcirc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (("enumerate", cmd_enumerate, "enumerate all circuits"),
                               ("reduce", cmd_reduce, "reduced circuits with attribution")):
        s = sub.add_parser(name, help=helptext)
        _instance_args(s)
        _output_args(s)
        s.add_argument("--route", choices=ROUTES, default="auto")
        s.add_argument("--verify", action="store_true",
                       help="cross-check against the other applicable routes")
        s.add_argument("--parallel", type=int, default=None, metavar="N",
                       help="per-beta worker processes (default: all cores)")
        s.add_argument("--seed", type=int, default=0, help="accepted for uniformity; enumeration is deterministic")
        if name == "reduce":
            s.add_argument("--method", choices=("auto", "facets", "lp", "exact"), default="auto",
                           help="extreme-ray test used by the circuit graph")
            s.add_argument("--no-filters", action="store_true",
                           help="decide everything by the extreme-ray test")
        s.set_defaults(func=fn)

    s = sub.add_parser("check", help="is a vector a circuit? with certificates")
    _instance_args(s)
    _output_args(s, ("json",))
    s.add_argument("--vector", required=True, help="e.g. '-3,1,2' or '[\"1/2\", -1, \"1/2\"]'")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("age-check", help="AGE membership and extreme-ray checks for a signomial")
    _instance_args(s)
    _output_args(s, ("json",))
    s.add_argument("--coefficients", required=True,
                   help="rationals, floats or r*e^q terms, e.g. '-e^(-1),1'")
    s.add_argument("--witness", help="circuit vector lambda witnessing AGE membership")
    s.add_argument("--samples", type=int, default=0, help="sample the minimum of f on X")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_age_check)

    s = sub.add_parser("verify-paper", help="run the reference suite of known results")
    _output_args(s, ("table", "json"))
    s.add_argument("--quick", action="store_true", help="skip the 4x4 grid")
    s.set_defaults(func=cmd_reference_suite)
    return p


def main(argv=None) -> int:
    level = os.environ.get("SUBCIRC_LOG", "WARNING").upper()
    if not isinstance(logging.getLevelName(level), int):
        level = "WARNING"
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SubcircError as e:
        print(f"subcirc: error: {e}", file=sys.stderr)
        return e.exit_code
    except OverflowError as e:
        print(f"subcirc: error: {e}", file=sys.stderr)
        return PreconditionError.exit_code


if __name__ == "__main__":
    sys.exit(main())
