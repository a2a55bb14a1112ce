"""Loading catalog JSON files into algebra objects."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from ..algebra import Algebra
from ..cohomology import Cochain
from ..exactnum import ONE, ZERO, Scalar
from ..forms import BilinearForm
from ..linalg import Matrix
from .expr import ExprError, scalar, vector


class UnknownEntry(KeyError):
    pass


def _data(*parts: str):
    return resources.files(__package__).joinpath("data", *parts)


def _pair(key: str, dim: int, where: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in key.split(","))
    except ValueError:
        raise ValueError(f"{where}: bad index pair {key!r}") from None
    if not (1 <= i <= dim and 1 <= j <= dim):
        raise ValueError(f"{where}: index pair {key!r} outside 1..{dim}")
    return i, j


def parse_table(values: dict, dim: int, skew: bool = False, env: dict | None = None, where: str = "table") -> dict:
    """``{"i,j": "vector expr"}`` to ``{(i, j): {k: Scalar}}`` (1-based); with
    ``skew`` the opposite order receives the negated value."""
    table: dict = {}
    for key, src in values.items():
        i, j = _pair(key, dim, where)
        try:
            v = vector(src, dim, env)
        except ExprError as exc:
            raise ValueError(f"{where}[{key!r}]: {exc}") from None
        slots = [((i, j), ONE)] + ([((j, i), -ONE)] if skew and i != j else [])
        for ij, sign in slots:
            slot = table.setdefault(ij, {})
            for k, c in enumerate(v, 1):
                if c:
                    slot[k] = slot.get(k, ZERO) + sign * c
    return table


@dataclass(frozen=True)
class NamedCocycle:
    name: str
    values: dict  # raw "i,j" -> expression
    skew: bool = False
    suspect: bool = False
    parameter: str | None = None
    readings: tuple = ()
    note: str | None = None
    group: str | None = None

    def cochain(self, dim: int, t=ONE, override: dict | None = None) -> Cochain:
        """Evaluate at ``parameter = t``; ``override`` replaces individual values."""
        vals = dict(self.values)
        vals.update(override or {})
        env = {self.parameter: t} if self.parameter else {}
        return Cochain.from_dict(2, dim, parse_table(vals, dim, self.skew, env, where=f"cocycle {self.name}"))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    label: str
    unicode: str
    dim: int
    algebra: Algebra
    lie: bool
    metric: bool
    listed: bool
    metric_form: BilinearForm | None
    hl2: int | None
    cocycles: tuple
    provenance: str
    summands: tuple = ()
    notes: tuple = field(default=())

    def cocycle(self, name: str) -> NamedCocycle:
        for c in self.cocycles:
            if c.name == name:
                return c
        raise UnknownEntry(f"{self.id} has no cocycle named {name!r}")


def _entry_from_json(obj: dict) -> CatalogEntry:
    where = f"catalog entry {obj.get('id', '?')}"
    dim = obj["dim"]
    table = parse_table(obj.get("brackets", {}), dim, obj.get("skew", False), where=f"{where}.brackets")
    alg = Algebra.from_brackets(dim, table, obj["id"])
    form = None
    if obj.get("metric_form") is not None:
        form = BilinearForm(Matrix([[scalar(x) for x in row] for row in obj["metric_form"]]))
    cocs = tuple(
        NamedCocycle(
            c["name"],
            dict(c["values"]),
            c.get("skew", False),
            c.get("suspect", False),
            c.get("parameter"),
            tuple(c.get("readings", ())),
            c.get("note"),
            c.get("group"),
        )
        for c in obj.get("cocycles", [])
    )
    return CatalogEntry(
        obj["id"], obj["label"], obj["unicode"], dim, alg, obj.get("lie", False), obj.get("metric", False),
        obj.get("listed", True), form, obj.get("hl2"), cocs, obj.get("provenance", ""),
        tuple(obj.get("summands", ())), tuple(obj.get("notes", ())),
    )


@lru_cache(maxsize=None)
def _all() -> dict:
    out = {}
    for path in sorted(_data("algebras").iterdir(), key=lambda p: p.name):
        if path.name.endswith(".json"):
            obj = json.loads(path.read_text(encoding="utf-8"))
            out[obj["id"]] = _entry_from_json(obj)
    return out


def load(id: str) -> CatalogEntry:
    try:
        return _all()[id]
    except KeyError:
        raise UnknownEntry(f"unknown catalog id {id!r}") from None


def all_entries() -> list[CatalogEntry]:
    return [e for _, e in sorted(_all().items())]


def list_ids(dim: int | None = None, metric: bool | None = None, listed_only: bool = True) -> list[str]:
    """Ids matching the filters; abelian fillers are never metric-labeled."""
    out = []
    for e in all_entries():
        if dim is not None and e.dim != dim:
            continue
        if metric is not None and e.metric != metric:
            continue
        if listed_only and not e.listed:
            continue
        out.append(e.id)
    return out


@lru_cache(maxsize=None)
def _json(name: str):
    return json.loads(_data(name).read_text(encoding="utf-8"))


def claims() -> list[dict]:
    return _json("claims.json")


def isomorphisms() -> list[dict]:
    return _json("isomorphisms.json")


def edges() -> list[dict]:
    return _json("edges.json")


def scalar_env(inst: dict) -> dict:
    return {k: scalar(v) for k, v in inst.items()}


def as_scalar_expr(src) -> Scalar:
    return scalar(src)
