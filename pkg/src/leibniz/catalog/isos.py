"""Evaluation of basis-change records at exact instantiations."""

from __future__ import annotations

from ..algebra import Algebra, bracket_mismatches, format_vector, transport
from ..cohomology import Cochain
from ..deformation import deform
from ..exactnum import ONE
from ..linalg import Matrix, det
from .expr import ExprError, scalar
from .store import load, parse_table


def deformation_cochain(spec: dict, env: dict) -> tuple[Algebra, Cochain | None]:
    """Base algebra and the (unscaled) deforming cochain named by ``spec``."""
    entry = load(spec["algebra"])
    n = entry.dim
    if "cocycle" in spec:
        named = entry.cocycle(spec["cocycle"])
        return entry.algebra, named.cochain(n, ONE)
    if "deformation" in spec:
        table = parse_table(spec["deformation"], n, spec.get("skew", False), env, where="deformation")
        return entry.algebra, Cochain.from_dict(2, n, table)
    return entry.algebra, None


def instantiate(spec, env: dict) -> Algebra:
    """``base + t * phi`` at the value bound to the record's parameter name."""
    if isinstance(spec, str):
        return load(spec).algebra
    base, phi = deformation_cochain(spec, env)
    if phi is None:
        return base
    t = env[spec.get("parameter", "t")]
    if "coefficient" in spec:
        t = t * scalar(spec["coefficient"], env)
    return deform(base, [(phi, 1)]).at(t)


def check_radicals(record: dict, env: dict) -> list[str]:
    bad = []
    for rad in record.get("radicals", []):
        lhs = env[rad["name"]] ** rad.get("power", 2)
        rhs = scalar(rad["of"], env)
        if lhs != rhs:
            bad.append(f"{rad['name']}^{rad.get('power', 2)} = {lhs}, expected {rhs}")
    return bad


def iso_matrix(record: dict, env: dict) -> Matrix:
    return Matrix([[scalar(x, env) for x in row] for row in record["rows"]])


def evaluate_instantiation(record: dict, inst: dict) -> dict:
    env = {k: scalar(v) for k, v in inst.items()}
    for alias, name in record.get("aliases", {}).items():
        env[alias] = env[name]
    out = {"instantiation": dict(inst)}
    bad = check_radicals(record, env)
    if bad:
        out.update(ok=False, reason="radical instantiation inconsistent", details=bad)
        return out
    try:
        p = iso_matrix(record, env)
    except (ExprError, ZeroDivisionError) as exc:
        out.update(ok=False, reason=f"matrix does not evaluate: {exc}")
        return out
    if not det(p):
        out.update(ok=False, reason="basis change is singular")
        return out
    src = instantiate(record["source"], env)
    dst = instantiate(record["target"], env)
    mism = bracket_mismatches(src, dst, p)
    out["ok"] = not mism
    if mism:
        out["reason"] = "bracket mismatch"
        out["mismatches"] = [
            {"pair": list(m["pair"]), "got": m["got"], "expected": m["expected"]} for m in mism
        ]
        out["transported"] = transport(src, p).describe()
    return out


def evaluate_record(record: dict) -> list[dict]:
    return [evaluate_instantiation(record, inst) for inst in record["instantiations"]]


def fmt(v) -> str:
    return format_vector(v)
