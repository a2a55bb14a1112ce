"""Command-line front end.

    leibniz check catalog:mu2
    leibniz cohomology catalog:lambda2 --degree 2
    leibniz graph --dim 4 --format dot

Algebras are named ``catalog:<id>`` or given as a JSON file.  Output is JSON
(DOT for ``graph --format dot``).  Exit codes: 0 computed and every checked
property holds, 1 a checked claim failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import Algebra, bracket_mismatches, identity_summary, leibniz_kernel, series, transport
from .catalog import UnknownEntry, load
from .cohomology import Cochain, cohomology, is_cocycle
from .deformation import GRIDS, ObstructedError, deform, leibniz_defect, metric_of_deformation
from .exactnum import ONE, Scalar
from .forms import BilinearForm, is_metric, verify_form
from .linalg import Matrix, det

OK, DISCREPANCY, USAGE = 0, 1, 2


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# input readers
# ---------------------------------------------------------------------------


def _read_json(path: str):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def read_algebra(ref: str) -> Algebra:
    if ref.startswith("catalog:"):
        try:
            return load(ref[len("catalog:"):]).algebra
        except UnknownEntry as exc:
            raise InputError(str(exc.args[0])) from None
    obj = _read_json(ref)
    try:
        if isinstance(obj, dict) and isinstance(obj.get("brackets"), dict):
            from .catalog.store import parse_table

            dim = obj.get("dim")
            if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
                raise ValueError("algebra.dim: expected a non-negative integer")
            table = parse_table(obj["brackets"], dim, bool(obj.get("skew", False)), where="algebra.brackets")
            return Algebra.from_brackets(dim, table, obj.get("name") or Path(ref).stem)
        return Algebra.from_json(obj)
    except ValueError as exc:
        raise InputError(f"{ref}: {exc}") from None


def read_cochain(path: str, dim: int) -> Cochain:
    obj = _read_json(path)
    try:
        if isinstance(obj, dict) and isinstance(obj.get("values"), dict):
            from .catalog.store import parse_table

            d = obj.get("dim", dim)
            table = parse_table(obj["values"], d, bool(obj.get("skew", False)), where="cochain.values")
            f = Cochain.from_dict(2, d, table)
        else:
            f = Cochain.from_json(obj)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    if f.dim != dim:
        raise InputError(f"{path}: cochain.dim: {f.dim} does not match the algebra dimension {dim}")
    return f


def read_matrix(path: str, n: int) -> Matrix:
    obj = _read_json(path)
    if isinstance(obj, dict):
        obj = obj.get("matrix", obj.get("rows"))
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError(f"{path}: matrix: expected a list of rows")
    rows = []
    for i, r in enumerate(obj):
        if len(r) != n:
            raise InputError(f"{path}: matrix[{i}]: expected {n} entries, got {len(r)}")
        row = []
        for j, x in enumerate(r):
            try:
                row.append(Scalar.from_json(x))
            except ValueError as exc:
                raise InputError(f"{path}: matrix[{i}][{j}]: {exc}") from None
        rows.append(row)
    if len(rows) != n:
        raise InputError(f"{path}: matrix: expected {n} rows, got {len(rows)}")
    return Matrix(rows)


def read_scalar(text: str, flag: str = "--t0") -> Scalar:
    try:
        return Scalar.parse(text)
    except ValueError as exc:
        raise InputError(f"{flag}: {exc}") from None


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    _emit(identity_summary(read_algebra(args.algebra)))
    return OK


def cmd_series(args) -> int:
    a = read_algebra(args.algebra)
    lc, dr = series(a, "lower_central"), series(a, "derived")
    _emit({"lower_central": lc.dims, "derived": dr.dims, "nilpotent": lc.nilpotent, "solvable": dr.solvable})
    return OK


def cmd_kernel(args) -> int:
    _emit(leibniz_kernel(read_algebra(args.algebra)).to_json())
    return OK


def cmd_metric(args) -> int:
    a = read_algebra(args.algebra)
    if args.matrix:
        rep = verify_form(a, BilinearForm(read_matrix(args.matrix, a.dim)))
        _emit(rep.to_json())
        return OK if rep.ok else DISCREPANCY
    _emit(is_metric(a).to_json())
    return OK


def cmd_cohomology(args) -> int:
    a = read_algebra(args.algebra)
    if args.degree < 1:
        raise InputError("--degree: must be at least 1")
    _emit(cohomology(a, args.degree).to_json())
    return OK


def cmd_cocycles(args) -> int:
    a = read_algebra(args.algebra)
    if args.cocycle:
        f = read_cochain(args.cocycle, a.dim)
        ok = is_cocycle(a, f)
        _emit({"cocycle": ok})
        return OK if ok else DISCREPANCY
    if not args.algebra.startswith("catalog:"):
        raise InputError("cocycles: give --cocycle FILE or a catalog algebra with listed cocycles")
    from .catalog.verify import TheoremRecord, _cocycle

    e = load(args.algebra[len("catalog:"):])
    out, ok_all = [], True
    for c in e.cocycles:
        ok, details = _cocycle(TheoremRecord("cocycle", c.name, e.provenance, {"algebra": e.id, "cocycle": c.name}))
        ok_all &= ok
        out.append({"name": c.name, "ok": ok, **details})
    _emit({"algebra": e.id, "cocycles": out})
    return OK if ok_all else DISCREPANCY


def _deformation(args):
    a = read_algebra(args.algebra)
    if not args.cocycle:
        raise InputError("--cocycle FILE is required")
    return a, deform(a, [(read_cochain(args.cocycle, a.dim), 1)])


def cmd_deform(args) -> int:
    a, pa = _deformation(args)
    try:
        rep = leibniz_defect(pa)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = rep.to_json()
    if args.order is not None:
        out["coefficients"] = {
            str(p): [
                {"triple": [x + 1 for x in key], "value": {str(k + 1): str(c) for k, c in sorted(v.items())}}
                for key, v in sorted(rep.coefficients.get(p, {}).items())
            ]
            for p in range(args.order + 1)
        }
    if args.t0 is not None:
        t0 = read_scalar(args.t0)
        try:
            out["metric"] = metric_of_deformation(pa, t0).to_json()
        except ObstructedError:
            out["metric"] = None
        except ValueError as exc:
            raise InputError(f"--t0: {exc}") from None
        out["t0"] = str(t0)
    _emit(out)
    return OK


def cmd_iso(args) -> int:
    src = read_algebra(args.algebra)
    dst = read_algebra(args.target)
    if src.dim != dst.dim:
        raise InputError("iso: algebras of different dimension")
    if args.cocycle:
        t0 = read_scalar(args.t0) if args.t0 is not None else ONE
        src = deform(src, [(read_cochain(args.cocycle, src.dim), 1)]).at(t0)
    if not args.matrix:
        raise InputError("--matrix FILE is required")
    p = read_matrix(args.matrix, src.dim)
    if not det(p):
        _emit({"isomorphism": False, "reason": "singular basis change"})
        return DISCREPANCY
    mism = bracket_mismatches(src, dst, p)
    out = {"isomorphism": not mism, "mismatches": mism}
    if mism:
        out["transported"] = transport(src, p).describe()
    _emit(out)
    return OK if not mism else DISCREPANCY


def cmd_scan(args) -> int:
    a = read_algebra(args.algebra)
    if args.grid not in GRIDS:
        raise InputError(f"--grid: unknown grid {args.grid!r}; choose from {sorted(GRIDS)}")
    t0 = read_scalar(args.t0) if args.t0 is not None else ONE
    if not t0:
        raise InputError("--t0: must be nonzero")
    if args.algebra.startswith("catalog:") and t0 == ONE:
        from .catalog.classify import catalog_scan

        rep = catalog_scan(args.algebra[len("catalog:"):], args.grid)
    else:
        from .deformation import scan

        rep = scan(a, GRIDS[args.grid], t0, base_id=args.algebra)
    _emit(rep.to_json())
    return OK


def cmd_graph(args) -> int:
    from .catalog.graph import deformation_graph

    if args.dim is None:
        raise InputError("--dim N is required")
    try:
        g = deformation_graph(args.dim)
    except ValueError as exc:
        raise InputError(f"--dim: {exc}") from None
    if args.format == "dot":
        sys.stdout.write(g.to_dot(args.unicode))
    else:
        _emit(g.to_json())
    return OK if all(e.confirmed for e in g.edges) else DISCREPANCY


def cmd_catalog(args) -> int:
    from .catalog import list_ids
    from .catalog.verify import jsonable, verify_catalog

    if args.action == "list":
        metric = True if args.metric else None
        _emit(list_ids(args.dim, metric, listed_only=not args.all))
        return OK
    if args.action == "show":
        if not args.id:
            raise InputError("catalog show: an id is required")
        try:
            e = load(args.id)
        except UnknownEntry as exc:
            raise InputError(str(exc.args[0])) from None
        _emit({
            "id": e.id, "label": e.unicode if args.unicode else e.label, "dim": e.dim, "lie": e.lie,
            "metric": e.metric, "listed": e.listed, "brackets": e.algebra.describe(),
            "metric_form": e.metric_form.matrix.to_json() if e.metric_form else None, "hl2": e.hl2,
            "cocycles": [c.name for c in e.cocycles], "provenance": e.provenance,
        })
        return OK
    bad = 0
    for _, line in verify_catalog():
        bad += line["verdict"] != "confirmed"
        sys.stdout.write(json.dumps(jsonable(line), ensure_ascii=False, separators=(",", ":")) + "\n")
    return OK if bad == 0 else DISCREPANCY


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="leibniz", description="exact computations with metric Leibniz algebras")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help, algebra=True):
        p = sub.add_parser(name, help=help)
        if algebra:
            p.add_argument("algebra", help="catalog:<id> or a JSON file")
        p.set_defaults(fn=fn)
        return p

    verb("check", cmd_check, "left/right/symmetric/Lie identities")
    verb("series", cmd_series, "lower central and derived series dimensions")
    verb("kernel", cmd_kernel, "Leibniz kernel (span of squares)")
    p = verb("metric", cmd_metric, "invariant inner products")
    p.add_argument("--matrix", help="verify this form instead of searching")
    p = verb("cohomology", cmd_cohomology, "Leibniz cohomology with adjoint coefficients")
    p.add_argument("--degree", type=int, default=2)
    p = verb("cocycles", cmd_cocycles, "cocycle membership")
    p.add_argument("--cocycle", help="2-cochain JSON file")
    p = verb("deform", cmd_deform, "Leibniz defect of base + t*cocycle")
    p.add_argument("--cocycle", help="2-cochain JSON file")
    p.add_argument("--t0", help="also test the instantiation at t0 for metricity")
    p.add_argument("--order", type=int, help="list defect coefficients up to this power of t")
    p = verb("iso", cmd_iso, "check a basis change between two algebras")
    p.add_argument("target", help="catalog:<id> or a JSON file")
    p.add_argument("--matrix", help="rows are the new basis vectors in old coordinates")
    p.add_argument("--cocycle", help="deform the source by this cocycle first")
    p.add_argument("--t0", help="parameter value for --cocycle (default 1)")
    p = verb("scan", cmd_scan, "heuristic search for metric deformations")
    p.add_argument("--grid", default="default", help=f"one of {', '.join(sorted(GRIDS))}")
    p.add_argument("--t0", help="instantiation value (default 1)")
    p = verb("graph", cmd_graph, "jump-deformation graph of one dimension", algebra=False)
    p.add_argument("--dim", type=int)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--unicode", action="store_true", help="use the typeset names as DOT labels")
    p = verb("catalog", cmd_catalog, "list, show or verify the bundled catalog", algebra=False)
    p.add_argument("action", choices=("list", "show", "verify"))
    p.add_argument("id", nargs="?")
    p.add_argument("--dim", type=int)
    p.add_argument("--metric", action="store_true", help="list: metric entries only")
    p.add_argument("--all", action="store_true", help="list: include entries outside the published lists")
    p.add_argument("--unicode", action="store_true")
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: --help exits 0, errors exit 2
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
