"""Invariant symmetric bilinear forms and the metric test."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra import Algebra
from .exactnum import ONE, ZERO, I, MultiPoly, Scalar, as_scalar
from .linalg import Matrix, det, det_of_family, rank_nullspace

# lambda values tried, in order, when looking for a nondegenerate member
WITNESS_GRID = (ONE, -ONE, Scalar(2), I, ONE + I)


@dataclass(frozen=True)
class BilinearForm:
    matrix: Matrix

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, x, y) -> Scalar:
        return sum((x[p] * self.matrix[p, q] * y[q] for p in range(self.dim) if x[p] for q in range(self.dim) if y[q]), ZERO)

    def to_json(self) -> dict:
        return {"dim": self.dim, "matrix": self.matrix.to_json()}

    @classmethod
    def from_json(cls, obj, where: str = "form") -> BilinearForm:
        if not isinstance(obj, dict):
            raise ValueError(f"{where}: expected a JSON object")
        try:
            m = Matrix.from_json(obj.get("matrix"))
        except ValueError as exc:
            raise ValueError(f"{where}.matrix: {exc}") from None
        dim = obj.get("dim", m.rows)
        if m.rows != m.cols or m.rows != dim:
            raise ValueError(f"{where}.matrix: expected a {dim}x{dim} matrix")
        return cls(m)


def _pairs(n: int):
    return [(p, q) for p in range(n) for q in range(p, n)]


def invariance_system(a: Algebra) -> Matrix:
    """Rows encode ``B([e_i,e_j],e_k) - B(e_i,[e_j,e_k]) = 0`` in the
    upper-triangular unknowns ``b_pq`` (p <= q)."""
    n = a.dim
    pairs = _pairs(n)
    col = {pq: c for c, pq in enumerate(pairs)}

    def slot(p, q):
        return col[(p, q) if p <= q else (q, p)]

    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [ZERO] * len(pairs)
                for m, c in a.sparse(i, j):
                    s = slot(m, k)
                    row[s] = row[s] + c
                for m, c in a.sparse(j, k):
                    s = slot(i, m)
                    row[s] = row[s] - c
                if any(row):
                    rows.append(row)
    return Matrix(rows, cols=len(pairs))


def invariant_form_space(a: Algebra) -> list[BilinearForm]:
    """Echelon basis of the symmetric invariant forms of ``a``."""
    n = a.dim
    pairs = _pairs(n)
    system = invariance_system(a)
    _, kernel = rank_nullspace(system)
    forms = []
    for v in kernel:
        m = [[ZERO] * n for _ in range(n)]
        for (p, q), x in zip(pairs, v):
            m[p][q] = x
            m[q][p] = x
        forms.append(BilinearForm(Matrix(m)))
    return forms


def combine(forms, coeffs) -> BilinearForm:
    n = forms[0].dim
    acc = [[ZERO] * n for _ in range(n)]
    for f, c in zip(forms, coeffs):
        if not c:
            continue
        for p in range(n):
            for q in range(n):
                x = f.matrix[p, q]
                if x:
                    acc[p][q] = acc[p][q] + c * x
    return BilinearForm(Matrix(acc))


def _grid_points(m: int, max_box: int):
    yield from itertools.product(WITNESS_GRID, repeat=m)
    # fall back to growing integer boxes
    for r in range(3, max_box + 1):
        vals = [Scalar(v) for v in range(-r, r + 1)]
        for pt in itertools.product(vals, repeat=m):
            if max(abs(int(x.re)) for x in pt) == r:
                yield pt


@dataclass(frozen=True)
class MetricReport:
    metric: bool
    witness: BilinearForm | None = None
    family_dim: int = 0
    determinant: MultiPoly | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "metric": self.metric,
            "family_dim": self.family_dim,
            "witness": self.witness.matrix.to_json() if self.witness else None,
        }


def find_witness(forms: list[BilinearForm], poly: MultiPoly, max_box: int = 12) -> BilinearForm:
    for pt in _grid_points(len(forms), max_box):
        if poly.evaluate(pt):
            return combine(forms, pt)
    raise RuntimeError("no nondegenerate member found in the search box")


def is_metric(a: Algebra, need_determinant: bool = False) -> MetricReport:
    """``a`` is metric iff the determinant of the generic invariant symmetric
    form is a nonzero polynomial; the witness is a nondegenerate member
    found by a deterministic search.

    The grid is first probed with plain determinants, then a few seeded
    random integer members are tried; the symbolic determinant is only built
    when both fail (or on request).  The verdict never depends on the probes,
    and the witness is deterministic.
    """
    forms = invariant_form_space(a)
    if a.dim == 0:
        return MetricReport(True, BilinearForm(Matrix([])), 0)
    if not forms:
        return MetricReport(False, None, 0, MultiPoly(0))
    if not need_determinant:
        for pt in itertools.islice(itertools.product(WITNESS_GRID, repeat=len(forms)), _PROBE):
            w = combine(forms, pt)
            if det(w.matrix):
                return MetricReport(True, w, len(forms))
        rnd = random.Random(_SEED)
        for _ in range(_RANDOM_TRIES):
            pt = [Scalar(rnd.randint(-97, 97)) for _ in forms]
            w = combine(forms, pt)
            if det(w.matrix):
                return MetricReport(True, w, len(forms))
    poly = det_of_family([f.matrix for f in forms])
    if poly.is_zero():
        return MetricReport(False, None, len(forms), poly)
    return MetricReport(True, find_witness(forms, poly), len(forms), poly)


_PROBE = 32
_RANDOM_TRIES = 12
_SEED = 1729


@dataclass(frozen=True)
class FormReport:
    symmetric: bool
    invariant: bool
    nondegenerate: bool
    violations: tuple = ()  # (i, j, k) 1-based triples where invariance fails

    @property
    def ok(self) -> bool:
        return self.symmetric and self.invariant and self.nondegenerate

    def to_json(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "invariant": self.invariant,
            "nondegenerate": self.nondegenerate,
            "violations": [list(v) for v in self.violations],
        }


def verify_form(a: Algebra, b: BilinearForm | Matrix) -> FormReport:
    m = b.matrix if isinstance(b, BilinearForm) else b
    n = a.dim
    if m.rows != n or m.cols != n:
        raise ValueError(f"form of size {m.rows}x{m.cols} for a {n}-dimensional algebra")
    bad = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = sum((c * m[q, k] for q, c in a.sparse(i, j)), ZERO)
                rhs = sum((m[i, q] * c for q, c in a.sparse(j, k)), ZERO)
                if lhs != rhs:
                    bad.append((i + 1, j + 1, k + 1))
    return FormReport(m.is_symmetric(), not bad, bool(det(m)), tuple(bad))


def form_matrix(rows) -> BilinearForm:
    return BilinearForm(Matrix([[as_scalar(x) for x in r] for r in rows]))
