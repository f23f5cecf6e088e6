"""JSON reading and writing for support sets, polyhedra and results.

Rationals are written as ``"p/q"`` strings.  On input, integers, rational
strings and finite decimals are accepted.
"""
from __future__ import annotations

import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .circuits import SupportSet
from .errors import InputError
from .polyhedra import HRep, Polyhedron, VRep


def rational(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"not a finite number: {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {x!r}") from None
    raise InputError(f"not a rational: {x!r}")


def rational_vector(v) -> tuple[Fraction, ...]:
    if not isinstance(v, (list, tuple)):
        v = [v]
    return tuple(rational(x) for x in v)


def read_text(source: str) -> str:
    """Read ``-`` (stdin), a file path, or return ``source`` itself when it looks like inline JSON."""
    if source == "-":
        return sys.stdin.read()
    s = source.lstrip()
    if s.startswith(("[", "{")):
        return source
    try:
        return Path(source).read_text()
    except OSError as e:
        raise InputError(f"cannot read {source!r}: {e}") from None


def load_json(source: str):
    try:
        return json.loads(read_text(source))
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None


def support_from_json(data) -> SupportSet:
    if isinstance(data, dict):
        data = data.get("support", data.get("points"))
    if not isinstance(data, list) or not data:
        raise InputError("support set must be a non-empty list of points")
    return SupportSet.make([rational_vector(p) for p in data])


def parse_support(source: str) -> SupportSet:
    """``grid:k`` (k x k grid, row-major), ``-``, a file path or inline JSON."""
    if source.startswith("grid:"):
        try:
            k = int(source[5:])
        except ValueError:
            raise InputError(f"bad grid size in {source!r}") from None
        if k < 1:
            raise InputError("grid size must be positive")
        return SupportSet.grid(k)
    return support_from_json(load_json(source))


def _pairs(rows, what):
    out = []
    for r in rows or []:
        if isinstance(r, dict):
            a, b = r.get("a"), r.get("b")
        elif isinstance(r, (list, tuple)) and len(r) == 2 and isinstance(r[0], (list, tuple)):
            a, b = r
        else:
            raise InputError(f"{what} entries must be {{'a': [...], 'b': ...}} or [a, b]")
        out.append((rational_vector(a), rational(b)))
    return out


def hrep_from_json(data) -> HRep:
    """``{"ineqs": [{"a": [...], "b": ...}], "eqs": [...], "dim": n}`` meaning ``a.x <= b`` / ``a.x = b``."""
    if isinstance(data, dict) and "hrep" in data:
        data = data["hrep"]
    if not isinstance(data, dict):
        raise InputError("H-representation must be a JSON object")
    ineqs = _pairs(data.get("ineqs", data.get("inequalities")), "inequality")
    eqs = _pairs(data.get("eqs", data.get("equations")), "equation")
    dim = data.get("dim")
    if dim is None and not ineqs and not eqs:
        raise InputError("H-representation needs rows or an explicit dim")
    return HRep.make(ineqs, eqs, dim)


def vrep_from_json(data) -> VRep:
    if isinstance(data, dict) and "vrep" in data:
        data = data["vrep"]
    if not isinstance(data, dict):
        raise InputError("V-representation must be a JSON object")
    get = lambda k: [rational_vector(p) for p in data.get(k) or []]
    return VRep.make(get("vertices"), get("rays"), get("lineality"), data.get("dim"))


def hrep_to_json(h: HRep) -> dict:
    return {"dim": h.ambient_dim,
            "ineqs": [{"a": [str(x) for x in a], "b": str(b)} for a, b in h.inequalities],
            "eqs": [{"a": [str(x) for x in a], "b": str(b)} for a, b in h.equations]}


def vrep_to_json(v: VRep) -> dict:
    enc = lambda rows: [[str(x) for x in r] for r in rows]
    return {"dim": v.ambient_dim, "vertices": enc(v.vertices), "rays": enc(v.rays),
            "lineality": enc(v.lineality)}


def polyhedron_from_json(data) -> Polyhedron:
    """Exactly one of ``"hrep"`` / ``"vrep"`` must be present."""
    if not isinstance(data, dict) or ("hrep" in data) == ("vrep" in data):
        raise InputError('polyhedron JSON needs exactly one of "hrep" and "vrep"')
    if "hrep" in data:
        return Polyhedron(hrep=hrep_from_json(data["hrep"]))
    return Polyhedron(vrep=vrep_from_json(data["vrep"]))


def polyhedron_to_json(p: Polyhedron) -> dict:
    return {"hrep": hrep_to_json(p.hrep), "vrep": vrep_to_json(p.vrep)}


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, float) and not math.isfinite(o):
        return str(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _finite(o):
    # json emits Infinity for inf, which is not JSON; spell it out instead
    if isinstance(o, float) and not math.isfinite(o):
        return "inf" if o > 0 else ("-inf" if o < 0 else "nan")
    if isinstance(o, dict):
        return {k: _finite(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_finite(v) for v in o]
    return o


def dumps(obj, pretty: bool = True) -> str:
    obj = _finite(json.loads(json.dumps(obj, default=_default)))
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def checksum(obj) -> str:
    return hashlib.sha256(dumps(obj, pretty=False).encode()).hexdigest()
