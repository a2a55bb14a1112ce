"""Naming deformed algebras by comparing invariants with catalog entries."""

from __future__ import annotations

from functools import lru_cache

from ..algebra import Algebra, invariants
from ..cohomology import cohomology
from ..deformation import GRIDS, ScanReport, scan
from ..forms import invariant_form_space
from .store import all_entries, load


def fingerprint(a: Algebra, full: bool = False) -> dict:
    """Isomorphism invariants; ``full`` adds dim HL^2, which separates pairs
    such as R20(0) and mu1+mu1 that agree on everything cheaper."""
    fp = dict(invariants(a))
    fp["forms"] = len(invariant_form_space(a))
    fp["derivations"] = cohomology(a, 1).dim_cocycles
    if full:
        fp["hl2"] = cohomology(a, 2).dim_hl
    return fp


@lru_cache(maxsize=None)
def _entry_fp(id: str, full: bool) -> tuple:
    return tuple(sorted(fingerprint(load(id).algebra, full).items()))


def _metric_ids(dim: int) -> list[str]:
    return [e.id for e in all_entries() if e.dim == dim and e.metric]


def identify(a: Algebra) -> list[str]:
    """Metric catalog entries (listed or not) that ``a`` cannot be told apart
    from; an empty list means an algebra the catalog does not know."""
    ids = _metric_ids(a.dim)
    fp = tuple(sorted(fingerprint(a).items()))
    match = [i for i in ids if _entry_fp(i, False) == fp]
    if len(match) > 1:
        full = tuple(sorted(fingerprint(a, True).items()))
        match = [i for i in match if _entry_fp(i, True) == full]
    return match


def separating(a: Algebra, b: Algebra) -> dict:
    """Invariants on which ``a`` and ``b`` differ (empty if none found)."""
    fa, fb = fingerprint(a), fingerprint(b)
    diff = {k: [fa[k], fb[k]] for k in fa if fa[k] != fb[k]}
    if not diff:
        fa, fb = fingerprint(a, True), fingerprint(b, True)
        diff = {k: [fa[k], fb[k]] for k in fa if fa[k] != fb[k]}
    return diff


@lru_cache(maxsize=None)
def catalog_scan(id: str, grid: str = "default") -> ScanReport:
    """Scan of a catalog entry with hit targets filled in (cached per process)."""
    rep = scan(load(id).algebra, GRIDS[grid], base_id=id)
    for hit in rep.hits:
        found = identify(_hit_algebra(id, hit))
        hit.target_candidates = found
        hit.target = found[0] if len(found) == 1 else None
        if not found:
            hit.notes.append("target not in the catalog")
    return rep


def _hit_algebra(id: str, hit) -> Algebra:
    from ..deformation import deform

    phi = hit.cocycles[0][0]
    return deform(load(id).algebra, [(phi, 1)]).at(hit.t0)


def target_counts(rep: ScanReport) -> dict:
    out: dict = {}
    for hit in rep.hits:
        key = hit.target or ("|".join(hit.target_candidates) if hit.target_candidates else "unknown")
        out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items()))
