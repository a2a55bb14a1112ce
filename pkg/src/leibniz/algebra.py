"""Finite-dimensional Leibniz algebras given by structure constants.

Basis indices are 0-based internally; every user-facing report (violations,
JSON files) uses the 1-based labels e_1..e_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exactnum import ONE, ZERO, Scalar, as_scalar
from .linalg import Matrix, inverse, span_basis

SIDES = ("left", "right", "symmetric", "lie")


def basis_vector(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def format_vector(v: Sequence[Scalar]) -> str:
    """Render a vector as ``2e_1 - e_3`` (1-based)."""
    parts = []
    for k, c in enumerate(v):
        if not c:
            continue
        s = str(c)
        if c == ONE:
            coef = ""
        elif c == -ONE:
            coef = "-"
        elif not c.im or not c.re:
            coef = s
        else:
            coef = f"({s})"
        parts.append(f"{coef}e{k + 1}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


class Algebra:
    """Bracket ``[e_i, e_j] = sum_k C[i][j][k] e_k``.

    Nothing about the Leibniz identity is assumed; use :func:`check_identity`.
    """

    __slots__ = ("dim", "structure", "name", "_sparse")

    def __init__(self, dim: int, structure: Sequence, name: str | None = None):
        st = tuple(tuple(tuple(as_scalar(c) for c in structure[i][j]) for j in range(dim)) for i in range(dim))
        if len(structure) != dim or any(len(row) != dim for row in structure):
            raise ValueError("structure tensor has wrong shape")
        if any(len(v) != dim for row in st for v in row):
            raise ValueError("structure tensor has wrong shape")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "structure", st)
        object.__setattr__(self, "name", name)
        sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(st[i][j]) if c) for j in range(dim)) for i in range(dim)
        )
        object.__setattr__(self, "_sparse", sparse)

    def __setattr__(self, name, value):
        raise AttributeError("Algebra is immutable")

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping, name: str | None = None) -> Algebra:
        """Build from ``{(i, j): {k: c}}`` with 1-based indices; omitted pairs are zero."""
        st = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in brackets.items():
            _check_index(i, dim)
            _check_index(j, dim)
            for k, c in out.items():
                _check_index(k, dim)
                st[i - 1][j - 1][k - 1] = st[i - 1][j - 1][k - 1] + as_scalar(c)
        return cls(dim, st, name)

    @classmethod
    def abelian(cls, dim: int, name: str | None = None) -> Algebra:
        return cls(dim, [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)], name or f"C{dim}")

    def renamed(self, name: str | None) -> Algebra:
        return Algebra(self.dim, self.structure, name)

    def bracket_basis(self, i: int, j: int) -> tuple:
        """``[e_i, e_j]`` with 0-based indices."""
        return self.structure[i][j]

    def sparse(self, i: int, j: int):
        return self._sparse[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise ValueError(f"bracket of vectors of length {len(x)}, {len(y)} in a {n}-dimensional algebra")
        out = [ZERO] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, c in self._sparse[i][j]:
                    out[k] = out[k] + f * c
        return tuple(out)

    def nonzero_brackets(self):
        """Yield ``(i, j, vector)`` for nonzero basis brackets, 0-based."""
        for i in range(self.dim):
            for j in range(self.dim):
                if self._sparse[i][j]:
                    yield i, j, self.structure[i][j]

    def is_abelian(self) -> bool:
        return not any(True for _ in self.nonzero_brackets())

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure

    def __hash__(self):
        return hash((self.dim, self.structure))

    def describe(self) -> str:
        parts = [
            f"[e{i + 1},e{j + 1}]={format_vector(v)}" for i, j, v in self.nonzero_brackets()
        ]
        return ", ".join(parts) if parts else "abelian"

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Algebra{label} dim={self.dim}: {self.describe()}>"

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        brackets = []
        for i, j, v in self.nonzero_brackets():
            brackets.append(
                {"i": i + 1, "j": j + 1, "out": [{"k": k + 1, "c": c.to_json()} for k, c in enumerate(v) if c]}
            )
        return {"name": self.name or "", "dim": self.dim, "brackets": brackets}

    @classmethod
    def from_json(cls, obj, where: str = "algebra") -> Algebra:
        if not isinstance(obj, Mapping):
            raise ValueError(f"{where}: expected a JSON object")
        dim = obj.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ValueError(f"{where}.dim: expected a non-negative integer")
        raw = obj.get("brackets", [])
        if not isinstance(raw, list):
            raise ValueError(f"{where}.brackets: expected a list")
        table: dict = {}
        for n_, b in enumerate(raw):
            loc = f"{where}.brackets[{n_}]"
            if not isinstance(b, Mapping):
                raise ValueError(f"{loc}: expected an object")
            i, j = _json_index(b, "i", dim, loc), _json_index(b, "j", dim, loc)
            outs = b.get("out")
            if not isinstance(outs, list):
                raise ValueError(f"{loc}.out: expected a list")
            slot = table.setdefault((i, j), {})
            for m_, term in enumerate(outs):
                tloc = f"{loc}.out[{m_}]"
                if not isinstance(term, Mapping):
                    raise ValueError(f"{tloc}: expected an object")
                k = _json_index(term, "k", dim, tloc)
                try:
                    c = Scalar.from_json(term.get("c"))
                except ValueError as exc:
                    raise ValueError(f"{tloc}.c: {exc}") from None
                slot[k] = slot.get(k, ZERO) + c
        name = obj.get("name") or None
        return cls.from_brackets(dim, table, name)


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise ValueError(f"basis index {i} outside 1..{n}")


def _json_index(obj, key, dim, loc) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= dim:
        raise ValueError(f"{loc}.{key}: expected an index in 1..{dim}, got {v!r}")
    return v


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    identity: str  # "left", "right" or "antisymmetry"
    indices: tuple  # 1-based basis labels
    residual: tuple  # LHS - RHS as a vector

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "indices": list(self.indices),
            "residual": format_vector(self.residual),
        }


@dataclass(frozen=True)
class IdentityReport:
    side: str
    violations: tuple = ()

    @property
    def holds(self) -> bool:
        return not self.violations


def _ad_tables(a: Algebra):
    # [[e_i, e_j], e_k] and [e_i, [e_j, e_k]] for all triples
    n = a.dim
    basis = [basis_vector(n, i) for i in range(n)]
    inner = [[a.structure[i][j] for j in range(n)] for i in range(n)]

    def left_of(v, k):
        return a.bracket(v, basis[k])

    def right_of(i, v):
        return a.bracket(basis[i], v)

    return basis, inner, left_of, right_of


def _identity_violations(a: Algebra, side: str) -> list[Violation]:
    n = a.dim
    basis, inner, left_of, right_of = _ad_tables(a)
    out = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = right_of(i, inner[j][k])  # [x,[y,z]]
                xy_z = left_of(inner[i][j], k)  # [[x,y],z]
                if side == "right":
                    rhs = vsub(xy_z, left_of(inner[i][k], j))  # [[x,y],z] - [[x,z],y]
                else:
                    rhs = vadd(xy_z, right_of(j, inner[i][k]))  # [[x,y],z] + [y,[x,z]]
                res = vsub(lhs, rhs)
                if any(res):
                    out.append(Violation(side, (i + 1, j + 1, k + 1), res))
    return out


def check_identity(a: Algebra, side: str = "right") -> IdentityReport:
    """Check one identity on every basis triple.

    ``symmetric`` means both the left and the right identity; ``lie`` adds
    antisymmetry on every basis pair (including ``[e_i, e_i] = 0``) to the
    right identity, which is then the Jacobi identity.
    """
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}; expected one of {SIDES}")
    if side in ("left", "right"):
        return IdentityReport(side, tuple(_identity_violations(a, side)))
    if side == "symmetric":
        return IdentityReport(side, tuple(_identity_violations(a, "left") + _identity_violations(a, "right")))
    anti = []
    n = a.dim
    for i in range(n):
        for j in range(i, n):
            s = vadd(a.structure[i][j], a.structure[j][i]) if i != j else a.structure[i][i]
            if any(s):
                anti.append(Violation("antisymmetry", (i + 1, j + 1), s))
    return IdentityReport(side, tuple(anti + _identity_violations(a, "right")))


def identity_summary(a: Algebra) -> dict:
    return {side: check_identity(a, side).holds for side in ("right", "left", "symmetric", "lie")}


# ---------------------------------------------------------------------------
# subspaces, series, kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``C^ambient_dim`` stored by its reduced row echelon basis."""

    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = field(default=(), compare=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> Subspace:
        rows, pivots = span_basis(vectors, ambient_dim)
        return cls(ambient_dim, tuple(rows), tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return Subspace.span(list(self.basis) + [tuple(v)], self.ambient_dim).dim == self.dim

    def contains_subspace(self, other: Subspace) -> bool:
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim).dim == self.dim

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [format_vector(v) for v in self.basis]}


def bracket_span(a: Algebra, left: Subspace, right: Subspace) -> Subspace:
    vectors = [a.bracket(x, y) for x in left.basis for y in right.basis]
    return Subspace.span(vectors, a.dim)


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: tuple  # Subspaces, starting with the whole algebra

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.terms]

    @property
    def reaches_zero(self) -> bool:
        return self.terms[-1].dim == 0

    @property
    def nilpotent(self) -> bool:
        return self.kind == "lower_central" and self.reaches_zero

    @property
    def solvable(self) -> bool:
        return self.kind == "derived" and self.reaches_zero


def series(a: Algebra, kind: str = "lower_central") -> SeriesReport:
    """Lower central (``L^{k+1} = [L^k, L]``) or derived (``[L^[k], L^[k]]``)
    series, iterated until the dimension stops dropping."""
    if kind not in ("lower_central", "derived"):
        raise ValueError(f"unknown series kind {kind!r}")
    whole = Subspace.span([basis_vector(a.dim, i) for i in range(a.dim)], a.dim)
    terms = [whole]
    while terms[-1].dim:
        cur = terms[-1]
        nxt = bracket_span(a, cur, whole if kind == "lower_central" else cur)
        if nxt.dim == cur.dim:
            break
        terms.append(nxt)
    return SeriesReport(kind, tuple(terms))


def is_nilpotent(a: Algebra) -> bool:
    return series(a, "lower_central").reaches_zero


def is_solvable(a: Algebra) -> bool:
    return series(a, "derived").reaches_zero


def leibniz_kernel(a: Algebra) -> Subspace:
    """Span of all squares ``[x, x]``."""
    n = a.dim
    vecs = []
    for i in range(n):
        vecs.append(a.structure[i][i])
        for j in range(i + 1, n):
            vecs.append(vadd(a.structure[i][j], a.structure[j][i]))
    return Subspace.span(vecs, n)


def derived_algebra(a: Algebra) -> Subspace:
    whole = Subspace.span([basis_vector(a.dim, i) for i in range(a.dim)], a.dim)
    return bracket_span(a, whole, whole)


def invariants(a: Algebra) -> dict:
    """Basis-independent numbers used to tell algebras apart."""
    return {
        "lower_central": series(a, "lower_central").dims,
        "derived": series(a, "derived").dims,
        "kernel": leibniz_kernel(a).dim,
        "center": center_dim(a),
    }


def center_dim(a: Algebra) -> int:
    """Dimension of ``{z : [z, x] = [x, z] = 0 for all x}``."""
    from .linalg import rank

    n = a.dim
    rows = []
    for x in range(n):
        for k in range(n):
            rows.append([a.structure[z][x][k] for z in range(n)])
            rows.append([a.structure[x][z][k] for z in range(n)])
    if not rows:
        return n
    return n - rank(Matrix(rows, cols=n))


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def direct_sum(a: Algebra, b: Algebra, name: str | None = None) -> Algebra:
    n, m = a.dim, b.dim
    d = n + m
    st = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for i, j, v in a.nonzero_brackets():
        for k, c in enumerate(v):
            st[i][j][k] = c
    for i, j, v in b.nonzero_brackets():
        for k, c in enumerate(v):
            st[n + i][n + j][n + k] = c
    if name is None and a.name and b.name:
        name = f"{a.name}+{b.name}"
    return Algebra(d, st, name)


def transport(a: Algebra, p: Matrix) -> Algebra:
    """Structure constants in the basis ``e'_i = sum_j p[i, j] e_j``.

    Row ``i`` of ``p`` holds the old coordinates of the new basis vector
    ``e'_i``.  Raises ``ValueError`` when ``p`` is singular.
    """
    n = a.dim
    if p.rows != n or p.cols != n:
        raise ValueError(f"basis change of size {p.rows}x{p.cols} for a {n}-dimensional algebra")
    pinv = inverse(p)
    new_vecs = [p.row(i) for i in range(n)]
    st = []
    for i in range(n):
        row = []
        for j in range(n):
            old = a.bracket(new_vecs[i], new_vecs[j])
            # express in the new basis: coordinates = old @ pinv
            row.append(tuple(sum((old[c] * pinv[c, k] for c in range(n) if old[c]), ZERO) for k in range(n)))
        st.append(row)
    return Algebra(n, st, a.name)


def is_isomorphic_via(src: Algebra, dst: Algebra, p: Matrix) -> bool:
    return src.dim == dst.dim and transport(src, p).structure == dst.structure


def bracket_mismatches(src: Algebra, dst: Algebra, p: Matrix) -> list[dict]:
    """Basis pairs where ``transport(src, p)`` and ``dst`` disagree (1-based)."""
    moved = transport(src, p)
    out = []
    for i in range(src.dim):
        for j in range(src.dim):
            got, want = moved.structure[i][j], dst.structure[i][j]
            if got != want:
                out.append({"pair": [i + 1, j + 1], "got": format_vector(got), "expected": format_vector(want)})
    return out
