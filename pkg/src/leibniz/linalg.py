"""Dense exact linear algebra over :class:`~leibniz.exactnum.Scalar`.

Elimination is plain fraction Gauss-Jordan on sparse row dictionaries with a
deterministic pivot rule: columns are scanned left to right and the first row
(in current order) holding a nonzero entry in that column becomes the pivot.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .exactnum import ONE, ZERO, MultiPoly, Scalar, as_scalar

Vector = tuple  # tuple of Scalar


class Matrix:
    """Immutable dense ``rows x cols`` matrix of Scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in data)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(((ONE if i == j else ZERO) for j in range(n)) for i in range(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(((ZERO,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls(((as_scalar(values[i]) if i == j else ZERO) for j in range(n)) for i in range(n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> Matrix:
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(zip(*columns))

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.entries), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def __add__(self, other: Matrix) -> Matrix:
        return Matrix((a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries))

    def __sub__(self, other: Matrix) -> Matrix:
        return Matrix((a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries))

    def scale(self, c) -> Matrix:
        c = as_scalar(c)
        return Matrix((x * c for x in r) for r in self.entries)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            ocols = other.transpose().entries if other.rows else ((),) * other.cols
            return Matrix(
                (tuple(_dot(r, c) for c in ocols) for r in self.entries), cols=other.cols
            )
        return self.apply(other)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(_dot(r, v) for r in self.entries)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, data) -> Matrix:
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be a list of rows")
        return cls([Scalar.from_json(x) for x in r] for r in data)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix([{body}])"


def _dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    acc = ZERO
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y
    return acc


# ---------------------------------------------------------------------------
# elimination core
# ---------------------------------------------------------------------------


def _sparse_rows(rows: Iterable[Sequence[Scalar]]) -> list[dict[int, Scalar]]:
    return [{j: x for j, x in enumerate(r) if x} for r in rows]


def rref_sparse(rows: list[dict[int, Scalar]], ncols: int) -> tuple[list[dict[int, Scalar]], list[int]]:
    """Reduced row echelon form of sparse rows.

    Returns the nonzero reduced rows (pivot entries equal to one) and their
    pivot columns, both in increasing pivot order.  The input is not mutated.
    """
    work = [dict(r) for r in rows if r]
    pivots: list[int] = []
    reduced: list[dict[int, Scalar]] = []
    # column-major scan with first-row-wins pivoting
    for col in range(ncols):
        piv_idx = None
        for idx, r in enumerate(work):
            if col in r:
                piv_idx = idx
                break
        if piv_idx is None:
            continue
        prow = work.pop(piv_idx)
        inv = prow[col].inv()
        if inv != ONE:
            prow = {j: x * inv for j, x in prow.items()}
        for r in work:
            f = r.get(col)
            if f is not None:
                _axpy(r, prow, -f)
        for r in reduced:
            f = r.get(col)
            if f is not None:
                _axpy(r, prow, -f)
        work = [r for r in work if r]
        reduced.append(prow)
        pivots.append(col)
        if not work:
            break
    return reduced, pivots


def _axpy(target: dict[int, Scalar], src: dict[int, Scalar], f: Scalar) -> None:
    """target += f * src, dropping entries that cancel."""
    for j, x in src.items():
        v = target.get(j)
        nv = f * x if v is None else v + f * x
        if nv:
            target[j] = nv
        elif v is not None:
            del target[j]


def reduce_sparse(v: dict[int, Scalar], basis: list[dict[int, Scalar]], pivots: list[int]) -> dict[int, Scalar]:
    """Reduce ``v`` against an RREF basis: the result vanishes on every pivot."""
    out = dict(v)
    for r, p in zip(basis, pivots):
        f = out.get(p)
        if f is not None:
            _axpy(out, r, -f)
    return out


def to_dense(v: dict[int, Scalar], n: int) -> Vector:
    return tuple(v.get(j, ZERO) for j in range(n))


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows, pivots = rref_sparse(_sparse_rows(m.entries), m.cols)
    return Matrix((to_dense(r, m.cols) for r in rows), cols=m.cols), pivots


def rank(m: Matrix) -> int:
    return len(rref_sparse(_sparse_rows(m.entries), m.cols)[1])


def nullspace_from_rref(rows: list[dict[int, Scalar]], pivots: list[int], ncols: int) -> list[Vector]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = {free: ONE}
        for r, p in zip(rows, pivots):
            x = r.get(free)
            if x is not None:
                v[p] = -x
        basis.append(to_dense(v, ncols))
    return basis


def rank_nullspace(m: Matrix) -> tuple[int, list[Vector]]:
    """Rank of ``m`` and a basis of its right kernel, one vector per free column."""
    rows, pivots = rref_sparse(_sparse_rows(m.entries), m.cols)
    return len(pivots), nullspace_from_rref(rows, pivots, m.cols)


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """One exact solution of ``m x = b`` (free variables set to zero), or None."""
    b = [as_scalar(x) for x in b]
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    aug = [dict(r) for r in _sparse_rows(m.entries)]
    for r, x in zip(aug, b):
        if x:
            r[m.cols] = x
    rows, pivots = rref_sparse(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = {p: r.get(m.cols, ZERO) for r, p in zip(rows, pivots)}
    return to_dense({j: v for j, v in x.items() if v}, m.cols)


def det(m: Matrix) -> Scalar:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    work = [list(r) for r in m.entries]
    n = m.rows
    result = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if work[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            work[c], work[p] = work[p], work[c]
            result = -result
        pv = work[c][c]
        result = result * pv
        inv = pv.inv()
        for r in range(c + 1, n):
            f = work[r][c]
            if f:
                f = f * inv
                work[r] = [a - f * b for a, b in zip(work[r], work[c])]
    return result


def inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises ``ValueError`` for singular input."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = []
    for i, r in enumerate(m.entries):
        d = {j: x for j, x in enumerate(r) if x}
        d[n + i] = ONE
        aug.append(d)
    rows, pivots = rref_sparse(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return Matrix(tuple(r.get(n + j, ZERO) for j in range(n)) for r in rows[:n])


def span_basis(vectors: Iterable[Sequence[Scalar]], dim: int) -> tuple[list[Vector], list[int]]:
    """RREF basis of the span of ``vectors`` together with pivot columns."""
    rows, pivots = rref_sparse(_sparse_rows(vectors), dim)
    return [to_dense(r, dim) for r in rows], pivots


# ---------------------------------------------------------------------------
# parametric determinants
# ---------------------------------------------------------------------------


def det_of_family(basis: Sequence[Matrix]) -> MultiPoly:
    """``det(sum_i lambda_i * B_i)`` as an exact polynomial in the lambdas.

    Laplace expansion along rows with memoisation over the set of used
    columns, so the cost is ``O(2^n * n)`` polynomial products.
    """
    m = len(basis)
    if m == 0:
        return MultiPoly(0)
    n = basis[0].rows
    for b in basis:
        if b.rows != n or b.cols != n:
            raise ValueError("family members must be square and of equal size")
    if n > 8:
        raise ValueError("parametric determinants are limited to n <= 8")
    entries = [
        [
            MultiPoly(m, {tuple(int(k == q) for k in range(m)): basis[q][i, j] for q in range(m)})
            for j in range(n)
        ]
        for i in range(n)
    ]

    @lru_cache(maxsize=None)
    def minor(row: int, used: int) -> MultiPoly:
        if row == n:
            return MultiPoly.constant(m, ONE)
        acc = MultiPoly(m)
        sign = 1
        for col in range(n):
            if used >> col & 1:
                continue
            e = entries[row][col]
            if e:
                sub = minor(row + 1, used | (1 << col))
                if sub:
                    term = e * sub
                    acc = acc + (term if sign > 0 else -term)
            sign = -sign
        return acc

    return minor(0, 0)
