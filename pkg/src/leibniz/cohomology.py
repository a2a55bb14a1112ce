"""Leibniz cochains with adjoint coefficients, the coboundary, and HL^p.

A p-cochain is stored as a flat tuple indexed by ``(i_1, ..., i_p, k)`` in
row-major order (0-based here, 1-based in files), meaning
``f(e_{i_1}, ..., e_{i_p}) = sum_k F[i_1..i_p][k] e_k``.  The coboundary is

    (d f)(x_1..x_{p+1}) = [x_1, f(x_2..x_{p+1})]
        + sum_{i=2}^{p+1} (-1)^i [f(x_1..^x_i..x_{p+1}), x_i]
        + sum_{i<j} (-1)^{j+1} f(x_1..x_{i-1}, [x_i, x_j], x_{i+1}..^x_j..x_{p+1})

which squares to zero on right Leibniz algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .algebra import Algebra, check_identity, format_vector
from .exactnum import ZERO, Scalar, as_scalar
from .linalg import Matrix, nullspace_from_rref, reduce_sparse, rref_sparse, to_dense


class NotLeibnizError(ValueError):
    """The algebra fails the right Leibniz identity."""


class NotCocycleError(ValueError):
    """A cochain that was required to be a cocycle is not one."""


def flat_index(idx: Sequence[int], k: int, n: int) -> int:
    out = 0
    for i in idx:
        out = out * n + i
    return out * n + k


class Cochain:
    """Multilinear map ``L^{(x)p} -> L`` as a dense coefficient tensor."""

    __slots__ = ("arity", "dim", "values")

    def __init__(self, arity: int, dim: int, values: Sequence | None = None):
        size = dim ** (arity + 1)
        if values is None:
            vals = (ZERO,) * size
        else:
            vals = tuple(x if type(x) is Scalar else as_scalar(x) for x in values)
            if len(vals) != size:
                raise ValueError(f"{arity}-cochain on dim {dim} needs {size} values, got {len(vals)}")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    @classmethod
    def from_dict(cls, arity: int, dim: int, table: Mapping) -> Cochain:
        """``{(i_1, .., i_p): {k: c}}`` with 1-based indices."""
        vals = [ZERO] * dim ** (arity + 1)
        for idx, out in table.items():
            idx = tuple(idx) if not isinstance(idx, int) else (idx,)
            if len(idx) != arity or not all(1 <= i <= dim for i in idx):
                raise ValueError(f"bad cochain argument {idx} for arity {arity}, dim {dim}")
            for k, c in out.items():
                if not 1 <= k <= dim:
                    raise ValueError(f"output index {k} outside 1..{dim}")
                pos = flat_index([i - 1 for i in idx], k - 1, dim)
                vals[pos] = vals[pos] + as_scalar(c)
        return cls(arity, dim, vals)

    @classmethod
    def from_sparse(cls, arity: int, dim: int, sparse: Mapping[int, Scalar]) -> Cochain:
        return cls(arity, dim, to_dense(sparse, dim ** (arity + 1)))

    def sparse(self) -> dict[int, Scalar]:
        return {j: x for j, x in enumerate(self.values) if x}

    def value(self, idx: Sequence[int]) -> tuple:
        """``f(e_{i_1}, ...)`` as a vector, 0-based indices."""
        base = flat_index(idx, 0, self.dim)
        return self.values[base : base + self.dim]

    def items(self):
        """Yield ``(idx, vector)`` for nonzero values, 0-based."""
        n = self.dim
        for idx in itertools.product(range(n), repeat=self.arity):
            v = self.value(idx)
            if any(v):
                yield idx, v

    def is_zero(self) -> bool:
        return not any(self.values)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other: Cochain):
        if (self.arity, self.dim) != (other.arity, other.dim):
            raise ValueError("cochain shape mismatch")

    def __add__(self, other: Cochain) -> Cochain:
        self._check(other)
        return Cochain(self.arity, self.dim, (a + b if b else a for a, b in zip(self.values, other.values)))

    def __sub__(self, other: Cochain) -> Cochain:
        self._check(other)
        return Cochain(self.arity, self.dim, (a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> Cochain:
        return Cochain(self.arity, self.dim, (-a for a in self.values))

    def scale(self, c) -> Cochain:
        c = as_scalar(c)
        return Cochain(self.arity, self.dim, (c * a if a else a for a in self.values))

    __rmul__ = lambda self, c: self.scale(c)  # noqa: E731

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.arity, self.dim, self.values) == (other.arity, other.dim, other.values)

    def __hash__(self):
        return hash((self.arity, self.dim, self.values))

    def is_skew(self) -> bool:
        if self.arity != 2:
            raise ValueError("skewness is defined for 2-cochains")
        n = self.dim
        return all(
            a == -b for i in range(n) for j in range(n) for a, b in zip(self.value((i, j)), self.value((j, i)))
        )

    def describe(self) -> str:
        parts = []
        for idx, v in self.items():
            args = ",".join(f"e{i + 1}" for i in idx)
            parts.append(f"({args})->{format_vector(v)}")
        return "; ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<Cochain arity={self.arity} dim={self.dim}: {self.describe()}>"

    def to_json(self) -> dict:
        entries = []
        for idx, v in self.items():
            entries.append(
                {"idx": [i + 1 for i in idx], "out": [{"k": k + 1, "c": c.to_json()} for k, c in enumerate(v) if c]}
            )
        return {"arity": self.arity, "dim": self.dim, "entries": entries}

    @classmethod
    def from_json(cls, obj, where: str = "cochain") -> Cochain:
        if not isinstance(obj, Mapping):
            raise ValueError(f"{where}: expected a JSON object")
        arity, dim = obj.get("arity"), obj.get("dim")
        for key, val in (("arity", arity), ("dim", dim)):
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                raise ValueError(f"{where}.{key}: expected a non-negative integer")
        entries = obj.get("entries", [])
        if not isinstance(entries, list):
            raise ValueError(f"{where}.entries: expected a list")
        table: dict = {}
        for n_, e in enumerate(entries):
            loc = f"{where}.entries[{n_}]"
            if not isinstance(e, Mapping):
                raise ValueError(f"{loc}: expected an object")
            idx = e.get("idx")
            if (
                not isinstance(idx, list)
                or len(idx) != arity
                or not all(isinstance(i, int) and not isinstance(i, bool) and 1 <= i <= dim for i in idx)
            ):
                raise ValueError(f"{loc}.idx: expected {arity} indices in 1..{dim}")
            outs = e.get("out")
            if not isinstance(outs, list):
                raise ValueError(f"{loc}.out: expected a list")
            slot = table.setdefault(tuple(idx), {})
            for m_, term in enumerate(outs):
                tloc = f"{loc}.out[{m_}]"
                k = term.get("k") if isinstance(term, Mapping) else None
                if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= dim:
                    raise ValueError(f"{tloc}.k: expected an index in 1..{dim}")
                try:
                    c = Scalar.from_json(term.get("c"))
                except ValueError as exc:
                    raise ValueError(f"{tloc}.c: {exc}") from None
                slot[k] = slot.get(k, ZERO) + c
        return cls.from_dict(arity, dim, table)


def cochain_2(dim: int, table: Mapping) -> Cochain:
    """Shorthand for a 2-cochain from ``{(i, j): {k: c}}`` (1-based)."""
    return Cochain.from_dict(2, dim, table)


def linear_map_cochain(m: Matrix) -> Cochain:
    """The 1-cochain ``g`` with ``g(e_i) = sum_k m[k, i] e_k`` (matrix acting on columns)."""
    n = m.rows
    return Cochain(1, n, (m[k, i] for i in range(n) for k in range(n)))


def cochain_matrix(g: Cochain) -> Matrix:
    """Inverse of :func:`linear_map_cochain`."""
    if g.arity != 1:
        raise ValueError("only 1-cochains are linear maps")
    n = g.dim
    return Matrix([[g.values[i * n + k] for i in range(n)] for k in range(n)])


# ---------------------------------------------------------------------------
# the coboundary
# ---------------------------------------------------------------------------


def _require_right_leibniz(a: Algebra) -> None:
    rep = check_identity(a, "right")
    if not rep.holds:
        v = rep.violations[0]
        raise NotLeibnizError(
            f"{a.name or 'algebra'} is not right Leibniz: triple {v.indices} has residual {format_vector(v.residual)}"
        )


def coboundary_rows(a: Algebra, p: int) -> list[dict[int, Scalar]]:
    """Sparse rows of the matrix of ``d^p : CL^p -> CL^{p+1}``.

    Row ``(x_1..x_{p+1}, k)``, column ``(i_1..i_p, m)``; assembled directly
    from the three groups of terms of the coboundary.
    """
    n = a.dim
    rows: list[dict[int, Scalar]] = []
    st = a.structure
    for args in itertools.product(range(n), repeat=p + 1):
        for k in range(n):
            row: dict[int, Scalar] = {}

            def add(col, c):
                v = row.get(col)
                nv = c if v is None else v + c
                if nv:
                    row[col] = nv
                elif v is not None:
                    del row[col]

            x1 = args[0]
            tail = args[1:]
            # [x_1, f(x_2..)]
            for m in range(n):
                c = st[x1][m][k]
                if c:
                    add(flat_index(tail, m, n), c)
            # (-1)^i [f(.. ^x_i ..), x_i]
            for i in range(1, p + 1):
                sign = 1 if (i + 1) % 2 == 0 else -1
                rest = args[:i] + args[i + 1 :]
                xi = args[i]
                for m in range(n):
                    c = st[m][xi][k]
                    if c:
                        add(flat_index(rest, m, n), c if sign > 0 else -c)
            # (-1)^{j+1} f(.., [x_i, x_j], .., ^x_j, ..)
            for i in range(p + 1):
                for j in range(i + 1, p + 1):
                    sign = 1 if (j + 2) % 2 == 0 else -1
                    for c_idx, c in a.sparse(args[i], args[j]):
                        new = list(args)
                        new[i] = c_idx
                        del new[j]
                        add(flat_index(new, k, n), c if sign > 0 else -c)
            rows.append(row)
    return rows


def coboundary_matrix(a: Algebra, p: int) -> Matrix:
    """Matrix of ``d^p`` in the standard tensor bases (requires right Leibniz)."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    _require_right_leibniz(a)
    n = a.dim
    cols = n ** (p + 1)
    return Matrix((to_dense(r, cols) for r in coboundary_rows(a, p)), cols=cols)


def coboundary(a: Algebra, f: Cochain) -> Cochain:
    """``d f`` evaluated directly; no Leibniz check."""
    if f.dim != a.dim:
        raise ValueError("cochain and algebra dimensions differ")
    sf = f.sparse()
    out = []
    for row in _rows_cached(a, f.arity):
        acc = ZERO
        for col, c in row.items():
            x = sf.get(col)
            if x is not None:
                acc = acc + c * x
        out.append(acc)
    return Cochain(f.arity + 1, a.dim, out)


@lru_cache(maxsize=256)
def _rows_cached(a: Algebra, p: int):
    return tuple(coboundary_rows(a, p))


def is_cocycle(a: Algebra, f: Cochain) -> bool:
    if f.arity < 1:
        raise ValueError("cocycles are checked for arity >= 1")
    return coboundary(a, f).is_zero()


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyReport:
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    representatives: tuple  # Cochains

    @property
    def dim_hl(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries

    def to_json(self, with_representatives: bool = True) -> dict:
        out = {
            "degree": self.degree,
            "dim_cochains": self.dim_cochains,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_hl": self.dim_hl,
        }
        if with_representatives:
            out["representatives"] = [r.to_json() for r in self.representatives]
        return out


@dataclass(frozen=True)
class _Complex:
    boundary_basis: tuple  # RREF rows of B^p as sparse dicts
    boundary_pivots: tuple
    cocycle_basis: tuple  # dense vectors of Z^p
    representatives: tuple  # sparse rows


def _transpose_sparse(rows: Sequence[dict[int, Scalar]], ncols: int) -> list[dict[int, Scalar]]:
    cols: list[dict[int, Scalar]] = [{} for _ in range(ncols)]
    for r_idx, row in enumerate(rows):
        for c, x in row.items():
            cols[c][r_idx] = x
    return cols


@lru_cache(maxsize=128)
def _complex(a: Algebra, p: int) -> _Complex:
    _require_right_leibniz(a)
    n = a.dim
    size = n ** (p + 1)
    z_rows, z_piv = rref_sparse(list(_rows_cached(a, p)), size)
    cocycles = nullspace_from_rref(z_rows, z_piv, size)
    if p >= 1:
        images = _transpose_sparse(_rows_cached(a, p - 1), n**p)
        b_rows, b_piv = rref_sparse(images, size)
    else:
        b_rows, b_piv = [], []
    reduced = [reduce_sparse({j: x for j, x in enumerate(v) if x}, b_rows, b_piv) for v in cocycles]
    reps, _ = rref_sparse(reduced, size)
    return _Complex(tuple(b_rows), tuple(b_piv), tuple(cocycles), tuple(reps))


def cohomology(a: Algebra, p: int = 2) -> CohomologyReport:
    """``HL^p(a; a)`` with canonical representatives.

    Representatives are the reduced echelon basis of the cocycle space after
    reduction modulo the echelon basis of the coboundaries.
    """
    if p < 1:
        raise ValueError("cohomology degree must be at least 1")
    cx = _complex(a, p)
    n = a.dim
    reps = tuple(Cochain.from_sparse(p, n, r) for r in cx.representatives)
    return CohomologyReport(p, n ** (p + 1), len(cx.cocycle_basis), len(cx.boundary_basis), reps)


def reduce_mod_coboundaries(a: Algebra, f: Cochain) -> Cochain:
    """Canonical representative of the class of the cocycle ``f``."""
    if not is_cocycle(a, f):
        raise NotCocycleError(f"not a cocycle: {f.describe()}")
    cx = _complex(a, f.arity)
    red = reduce_sparse(f.sparse(), list(cx.boundary_basis), list(cx.boundary_pivots))
    return Cochain.from_sparse(f.arity, f.dim, red)


def is_coboundary(a: Algebra, f: Cochain) -> bool:
    cx = _complex(a, f.arity)
    return not reduce_sparse(f.sparse(), list(cx.boundary_basis), list(cx.boundary_pivots))


def class_coordinates(a: Algebra, f: Cochain) -> tuple:
    """Coordinates of ``[f]`` in the basis of representatives."""
    red = reduce_mod_coboundaries(a, f).sparse()
    cx = _complex(a, f.arity)
    coords = []
    for rep in cx.representatives:
        piv = min(rep)
        coords.append(red.get(piv, ZERO))
    return tuple(coords)


def compose_rows(a: Algebra, p: int) -> Matrix:
    """``d^{p+1} d^p`` as an exact matrix product."""
    return coboundary_matrix(a, p + 1) @ coboundary_matrix(a, p)


def cochain_family(dim: int, arity: int, tables: Iterable[Mapping]) -> list[Cochain]:
    return [Cochain.from_dict(arity, dim, t) for t in tables]
