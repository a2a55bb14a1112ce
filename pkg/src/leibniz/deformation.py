"""Deformed brackets ``mu_t = mu_0 + t phi_1 + t^2 phi_2 + ...`` and what can be
decided about them exactly: the Leibniz defect, its obstruction order,
metricity at an instantiation, and formal equivalence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Algebra, check_identity, format_vector, invariants, transport
from .cohomology import Cochain, is_cocycle
from .exactnum import ONE, ZERO, Scalar, TPoly, as_scalar
from .forms import MetricReport, is_metric
from .linalg import Matrix, inverse


class ObstructedError(ValueError):
    """The deformed bracket fails the Leibniz identity at some order."""


class PolyAlgebra:
    """Bracket with polynomial structure constants, stored as one coefficient
    tensor per power of ``t`` (``layers[p][i][j]`` is a vector)."""

    __slots__ = ("dim", "layers", "name")

    def __init__(self, dim: int, layers: Sequence, name: str | None = None):
        cleaned = [tuple(tuple(tuple(as_scalar(c) for c in v) for v in row) for row in layer) for layer in layers]
        while len(cleaned) > 1 and not any(c for row in cleaned[-1] for v in row for c in v):
            cleaned.pop()
        if not cleaned:
            cleaned = [tuple(tuple((ZERO,) * dim for _ in range(dim)) for _ in range(dim))]
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "layers", tuple(cleaned))
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("PolyAlgebra is immutable")

    @classmethod
    def constant(cls, a: Algebra) -> PolyAlgebra:
        return cls(a.dim, [a.structure], a.name)

    @property
    def degree(self) -> int:
        return len(self.layers) - 1

    @property
    def base(self) -> Algebra:
        return Algebra(self.dim, self.layers[0], self.name)

    def layer(self, p: int) -> Algebra:
        return Algebra(self.dim, self.layers[p])

    def structure_poly(self, i: int, j: int) -> tuple:
        """``[e_i, e_j]`` as a vector of TPoly (0-based)."""
        return tuple(TPoly(layer[i][j][k] for layer in self.layers) for k in range(self.dim))

    def at(self, t0) -> Algebra:
        """Instantiate at ``t = t0``."""
        t0 = as_scalar(t0)
        n = self.dim
        st = []
        for i in range(n):
            row = []
            for j in range(n):
                vec = []
                for k in range(n):
                    acc = ZERO
                    for layer in reversed(self.layers):
                        acc = acc * t0 + layer[i][j][k]
                    vec.append(acc)
                row.append(tuple(vec))
            st.append(row)
        return Algebra(n, st, self.name)

    def __eq__(self, other):
        if not isinstance(other, PolyAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.layers == other.layers

    def __hash__(self):
        return hash((self.dim, self.layers))

    def __repr__(self):
        return f"<PolyAlgebra {self.name or ''} dim={self.dim} degree={self.degree}>"

    def to_json(self) -> dict:
        return {
            "name": self.name or "",
            "dim": self.dim,
            "layers": [Algebra(self.dim, layer).to_json()["brackets"] for layer in self.layers],
        }


def deform(a: Algebra, parts: Sequence[tuple[Cochain, int]], name: str | None = None) -> PolyAlgebra:
    """``a + sum t^power * cochain`` over ``parts``."""
    n = a.dim
    top = max((p for _, p in parts), default=0)
    layers = [[[list(a.structure[i][j]) if q == 0 else [ZERO] * n for j in range(n)] for i in range(n)] for q in range(top + 1)]
    for f, power in parts:
        if f.arity != 2 or f.dim != n:
            raise ValueError(f"deformation parts must be 2-cochains on dim {n}, got arity {f.arity} dim {f.dim}")
        if power < 0:
            raise ValueError("powers of t must be non-negative")
        for (i, j), v in f.items():
            slot = layers[power][i][j]
            for k, c in enumerate(v):
                if c:
                    slot[k] = slot[k] + c
    return PolyAlgebra(n, layers, name or a.name)


# ---------------------------------------------------------------------------
# defect and obstruction
# ---------------------------------------------------------------------------


def _sparse_layer(layer, n):
    return [[tuple((k, c) for k, c in enumerate(layer[i][j]) if c) for j in range(n)] for i in range(n)]


def _compose(outer, inner, n):
    """``D(A,B)(x,y,z) = A(x,B(y,z)) - A(B(x,y),z) + A(B(x,z),y)`` on basis triples."""
    out = {}
    for x in range(n):
        for y in range(n):
            for z in range(n):
                acc = {}
                for m, c in inner[y][z]:
                    for k, d in outer[x][m]:
                        acc[k] = acc.get(k, ZERO) + c * d
                for m, c in inner[x][y]:
                    for k, d in outer[m][z]:
                        acc[k] = acc.get(k, ZERO) - c * d
                for m, c in inner[x][z]:
                    for k, d in outer[m][y]:
                        acc[k] = acc.get(k, ZERO) + c * d
                acc = {k: v for k, v in acc.items() if v}
                if acc:
                    out[(x, y, z)] = acc
    return out


@dataclass(frozen=True)
class DefectReport:
    dim: int
    coefficients: dict  # power -> {(x,y,z): {k: Scalar}} (0-based), nonzero only
    obstruction_order: int | None  # None: identically zero

    @property
    def unobstructed(self) -> bool:
        return self.obstruction_order is None

    def at(self, i: int, j: int, k: int) -> tuple:
        """Defect on ``(e_i, e_j, e_k)`` (1-based) as a vector of TPoly."""
        top = max(self.coefficients, default=-1)
        out = []
        for m in range(self.dim):
            out.append(TPoly(self.coefficients.get(p, {}).get((i - 1, j - 1, k - 1), {}).get(m, ZERO) for p in range(top + 1)))
        return tuple(out)

    def leading(self) -> list[dict]:
        """Nonzero entries of the lowest nonvanishing coefficient (1-based)."""
        if self.obstruction_order is None:
            return []
        n = self.dim
        entries = self.coefficients[self.obstruction_order]
        return [
            {"triple": [x + 1, y + 1, z + 1], "coefficient": format_vector(tuple(v.get(k, ZERO) for k in range(n)))}
            for (x, y, z), v in sorted(entries.items())
        ]

    def to_json(self) -> dict:
        return {
            "obstruction_order": "none" if self.obstruction_order is None else self.obstruction_order,
            "leading": self.leading(),
        }


def leibniz_defect(pa: PolyAlgebra, check_base: bool = True) -> DefectReport:
    """``mu(x,mu(y,z)) - mu(mu(x,y),z) + mu(mu(x,z),y)`` as a polynomial in t
    on every basis triple, collected by powers of t."""
    n = pa.dim
    if check_base and not check_identity(pa.base, "right").holds:
        raise ValueError("base of the deformation is not right Leibniz")
    sparse = [_sparse_layer(layer, n) for layer in pa.layers]
    coeffs: dict = {}
    for p, outer in enumerate(sparse):
        for q, inner in enumerate(sparse):
            part = _compose(outer, inner, n)
            if not part:
                continue
            slot = coeffs.setdefault(p + q, {})
            for key, vec in part.items():
                acc = slot.setdefault(key, {})
                for k, c in vec.items():
                    acc[k] = acc.get(k, ZERO) + c
    clean = {}
    for power, table in coeffs.items():
        t2 = {}
        for key, vec in table.items():
            vec = {k: c for k, c in vec.items() if c}
            if vec:
                t2[key] = vec
        if t2:
            clean[power] = t2
    order = min(clean) if clean else None
    return DefectReport(n, clean, order)


def cocycle_of_square(dim: int, i: int) -> Cochain:
    """The 2-cochain ``phi(e_i, e_i) = e_i`` (1-based ``i``), zero elsewhere."""
    return Cochain.from_dict(2, dim, {(i, i): {i: ONE}})


@dataclass(frozen=True)
class ObstructionVerdict:
    index: int
    precondition: bool  # the cochain is a cocycle
    obstruction_order: int | None
    residual: tuple = ()  # t^2 coefficient on (e_i, e_i, e_i)

    @property
    def confirmed(self) -> bool:
        return self.precondition and self.obstruction_order == 2

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "precondition": self.precondition,
            "obstruction_order": "none" if self.obstruction_order is None else self.obstruction_order,
            "residual_t2": format_vector(self.residual) if self.residual else None,
            "confirmed": self.confirmed,
        }


def infinitesimal_obstruction_rule(a: Algebra, i: int) -> ObstructionVerdict:
    """Deforming by ``phi(e_i, e_i) = e_i`` leaves a ``t^2 e_i`` defect."""
    phi = cocycle_of_square(a.dim, i)
    pre = is_cocycle(a, phi)
    rep = leibniz_defect(deform(a, [(phi, 1)]))
    residual = ()
    if 2 in rep.coefficients:
        v = rep.coefficients[2].get((i - 1, i - 1, i - 1), {})
        residual = tuple(v.get(k, ZERO) for k in range(a.dim))
    return ObstructionVerdict(i, pre, rep.obstruction_order, residual)


def metric_of_deformation(pa: PolyAlgebra, t0) -> MetricReport:
    t0 = as_scalar(t0)
    if not t0:
        raise ValueError("metricity of a deformation is decided at t0 != 0")
    rep = leibniz_defect(pa)
    if not rep.unobstructed:
        raise ObstructedError(f"deformation is obstructed at order {rep.obstruction_order}")
    return is_metric(pa.at(t0))


# ---------------------------------------------------------------------------
# formal equivalence
# ---------------------------------------------------------------------------


def _series_inverse(phi: Sequence[Matrix], order: int) -> list[Matrix]:
    n = phi[0].rows
    psi = [Matrix.identity(n)]
    for k in range(1, order + 1):
        acc = Matrix.zeros(n, n)
        for j in range(1, min(k, len(phi) - 1) + 1):
            acc = acc + phi[j] @ psi[k - j]
        psi.append(acc.scale(-1))
    return psi


def _apply_series(mats: Sequence[Matrix], vec: Sequence[TPoly], order: int) -> list[TPoly]:
    n = len(vec)
    out = [TPoly() for _ in range(n)]
    for p, m in enumerate(mats):
        if p > order:
            break
        for r in range(n):
            acc = TPoly()
            for c in range(n):
                x = m[r, c]
                if x and vec[c]:
                    acc = acc + vec[c] * x
            if acc:
                out[r] = out[r] + TPoly.monomial(ONE, p) * acc
    return [v.truncate(order) for v in out]


def _poly_bracket(pa: PolyAlgebra, u: Sequence[TPoly], v: Sequence[TPoly], order: int) -> list[TPoly]:
    n = pa.dim
    out = [TPoly() for _ in range(n)]
    for a in range(n):
        if not u[a]:
            continue
        for b in range(n):
            if not v[b]:
                continue
            uv = (u[a] * v[b]).truncate(order)
            if not uv:
                continue
            for k, c in enumerate(pa.structure_poly(a, b)):
                if c:
                    out[k] = out[k] + (uv * c).truncate(order)
    return out


def equivalence_check(mu: PolyAlgebra, mu2: PolyAlgebra, phi: Sequence[Matrix], order: int) -> bool:
    """Does ``mu2(x, y) = Phi(mu(Phi^-1 x, Phi^-1 y))`` hold through ``t^order``?

    ``Phi_t = sum phi[i] t^i`` acts on coordinate columns; ``phi[0]`` must be
    the identity.  ``Phi^-1`` is expanded as a truncated power series.
    """
    n = mu.dim
    if mu2.dim != n or not phi:
        raise ValueError("dimension mismatch")
    if phi[0] != Matrix.identity(n):
        raise ValueError("Phi_0 must be the identity map")
    psi = _series_inverse(phi, order)
    basis = [[TPoly.constant(ONE) if k == i else TPoly() for k in range(n)] for i in range(n)]
    pre = [_apply_series(psi, e, order) for e in basis]
    for x in range(n):
        for y in range(n):
            inner = _poly_bracket(mu, pre[x], pre[y], order)
            lhs = _apply_series(phi, inner, order)
            rhs = [c.truncate(order) for c in mu2.structure_poly(x, y)]
            if lhs != rhs:
                return False
    return True


def iso_from_phi(phi_at_t0: Matrix) -> Matrix:
    """Basis-change matrix (rows = new basis vectors) realising ``Phi`` at a
    fixed parameter: new basis ``e'_i = Phi^-1 e_i``."""
    return inverse(phi_at_t0).transpose()


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------


@dataclass
class DeformationRecord:
    base: str
    cocycles: list  # [(Cochain, TPoly)]
    obstruction_order: int | None
    metric: bool
    target: str | None = None
    iso: tuple | None = None  # (Matrix, t0)
    t0: Scalar = ONE
    combination: tuple = ()  # ((rep index, coefficient), ...) for scan hits
    invariants: dict = field(default_factory=dict)
    target_candidates: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "cocycles": [{"cochain": f.to_json(), "coefficient": str(c)} for f, c in self.cocycles],
            "combination": [{"rep": i + 1, "c": c.to_json()} for i, c in self.combination],
            "obstruction_order": "none" if self.obstruction_order is None else self.obstruction_order,
            "t0": self.t0.to_json(),
            "metric": self.metric,
            "target": self.target,
            "target_candidates": list(self.target_candidates),
            "iso": None if self.iso is None else {"matrix": self.iso[0].to_json(), "t0": as_scalar(self.iso[1]).to_json()},
            "invariants": self.invariants,
            "notes": list(self.notes),
        }


def record_for(base_id: str, a: Algebra, cocycle: Cochain, t0=ONE, target=None, iso=None) -> DeformationRecord:
    pa = deform(a, [(cocycle, 1)])
    rep = leibniz_defect(pa)
    t0 = as_scalar(t0)
    metric = False
    inv = {}
    if rep.unobstructed:
        inst = pa.at(t0)
        metric = is_metric(inst).metric
        inv = invariants(inst)
    if iso is not None and not isinstance(iso, tuple):
        iso = (iso, t0)
    return DeformationRecord(
        base_id, [(cocycle, TPoly.monomial(ONE, 1))], rep.obstruction_order, metric, target, iso, t0, invariants=inv
    )


def transported(pa: PolyAlgebra, t0, p: Matrix) -> Algebra:
    return transport(pa.at(t0), p)


# ---------------------------------------------------------------------------
# heuristic metric-deformation scan
# ---------------------------------------------------------------------------
#
# Candidates are pushed through cheap modular filters (batched numpy work over
# a prime field containing a square root of -1) and only the survivors are
# decided exactly.  A candidate passes when, modulo p, it is unobstructed, it
# satisfies the left identity (metric algebras are symmetric) and a random
# member of its invariant-form space is nondegenerate.  Every reported hit is
# then re-checked with exact arithmetic.

DEFAULT_GRID = (ZERO, ONE, -ONE, Scalar(0, 1), Scalar(0, -1), Scalar(2))
GRIDS = {
    "default": DEFAULT_GRID,
    "small": (ZERO, ONE, -ONE),
    "real": (ZERO, ONE, -ONE, Scalar(2), Scalar(-2)),
}

_P = 268435009  # prime, p = 1 mod 4, p^2 * 15 < 2^63
_SEED = 20240611


def _sqrt_minus_one(p: int) -> int:
    g = 2
    while pow(g, (p - 1) // 2, p) != p - 1:
        g += 1
    return pow(g, (p - 1) // 4, p)


_IP = _sqrt_minus_one(_P)


def _modp(s: Scalar) -> int:
    def red(q):
        return q.numerator % _P * pow(q.denominator % _P, -1, _P) % _P

    return (red(s.re) + _IP * red(s.im)) % _P


def _tensor(np, st, n):
    out = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for k, c in enumerate(st[i][j]):
                if c:
                    out[i, j, k] = _modp(c)
    return out


def _cochain_tensor(np, f: Cochain):
    n = f.dim
    out = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), v in f.items():
        for k, c in enumerate(v):
            if c:
                out[i, j, k] = _modp(c)
    return out


def _pair_terms(np, outer, inner, sign):
    """Batched ``A(x,B(y,z)) - A(B(x,y),z) + sign * A(B(x,z),y)`` (right: +1)
    or ``... - A(y,B(x,z))`` (left: sign None) over stacks of tensors."""
    t1 = np.einsum("...byzm,...axmk->...abxyzk", inner, outer) % _P
    t2 = np.einsum("...bxym,...amzk->...abxyzk", inner, outer) % _P
    if sign is None:
        t3 = np.einsum("...bxzm,...aymk->...abxyzk", inner, outer) % _P
        return (t1 - t2 - t3) % _P
    t3 = np.einsum("...bxzm,...amyk->...abxyzk", inner, outer) % _P
    return (t1 - t2 + t3) % _P


def _inv_modp(np, x):
    result = np.ones_like(x)
    base = x % _P
    e = _P - 2
    while e:
        if e & 1:
            result = result * base % _P
        base = base * base % _P
        e >>= 1
    return result


def _batched_rref(np, s):
    """Row-reduce a stack of matrices mod p in place; returns the pivot column
    of every row (-1 for non-pivot rows)."""
    b, m, c = s.shape
    ptr = np.zeros(b, dtype=np.int64)
    pivcol = np.full((b, m), -1, dtype=np.int64)
    rows = np.arange(m)
    for col in range(c):
        cand = (s[:, :, col] != 0) & (rows[None, :] >= ptr[:, None])
        has = cand.any(axis=1) & (ptr < m)
        if not has.any():
            continue
        bs = np.nonzero(has)[0]
        piv = cand[bs].argmax(axis=1)
        tgt = ptr[bs]
        top = s[bs, tgt].copy()
        s[bs, tgt] = s[bs, piv]
        s[bs, piv] = top
        row = s[bs, tgt] * _inv_modp(np, s[bs, tgt, col])[:, None] % _P
        s[bs, tgt] = row
        fac = s[bs, :, col].copy()
        fac[np.arange(len(bs)), tgt] = 0
        s[bs] = (s[bs] - fac[:, :, None] * row[:, None, :]) % _P
        pivcol[bs, tgt] = col
        ptr[bs] += 1
    return pivcol


def _metric_modp(np, mus, rng):
    """Random-member nondegeneracy test for a stack of bracket tensors."""
    b, n = mus.shape[0], mus.shape[1]
    pairs = [(p, q) for p in range(n) for q in range(p, n)]
    # The invariance equations B([x,y],z) = B(x,[y,z]) have one row per basis
    # triple; a random combination of len(pairs) + 4 rows has the same kernel
    # with overwhelming probability.  A false rejection only costs a missed
    # hit, never a wrong one, since hits are re-checked exactly.
    m = len(pairs) + 4
    squash = rng.integers(0, 1 << 20, size=(m, n, n, n), dtype=np.int64)
    flat = mus.reshape(b, n * n, n)
    # sum_{i,j} R[r,i,j,q] mu[i,j,p]  -  sum_{j,k} R[r,p,j,k] mu[j,k,q]
    left = np.matmul(flat.transpose(0, 2, 1), squash.reshape(m, n * n, n).transpose(1, 0, 2).reshape(n * n, m * n))
    left = left.reshape(b, n, m, n).transpose(0, 2, 1, 3) % _P
    right = np.matmul(squash.reshape(m * n, n * n)[None], flat).reshape(b, m, n, n) % _P
    full = (left - right) % _P
    sysm = np.stack(
        [full[:, :, p, q] if p == q else (full[:, :, p, q] + full[:, :, q, p]) % _P for p, q in pairs], axis=2
    )
    pivcol = _batched_rref(np, sysm)
    r = rng.integers(1, _P, size=len(pairs), dtype=np.int64)
    x = np.broadcast_to(r, (b, len(pairs))).copy()
    dots = np.einsum("bmc,c->bm", sysm, r) % _P
    bi, ri = np.nonzero(pivcol >= 0)
    cols = pivcol[bi, ri]
    x[bi, cols] = (r[cols] - dots[bi, ri]) % _P
    form = np.zeros((b, n, n), dtype=np.int64)
    for c, (p, q) in enumerate(pairs):
        form[:, p, q] = x[:, c]
        form[:, q, p] = x[:, c]
    piv = _batched_rref(np, form)
    return (piv >= 0).sum(axis=1) == n


@dataclass
class ScanReport:
    base: str
    grid: tuple
    t0: Scalar
    representatives: int
    candidates: int
    survivors: dict  # filter name -> count
    hits: list  # DeformationRecord
    heuristic: bool = True

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "heuristic": True,
            "note": "finite search: hits are certificates, absence of hits is not a proof",
            "grid": [c.to_json() for c in self.grid],
            "t0": self.t0.to_json(),
            "representatives": self.representatives,
            "candidates": self.candidates,
            "survivors": dict(self.survivors),
            "hits": [h.to_json() for h in self.hits],
        }


def _combine(reps, combo):
    f = None
    for idx, c in combo:
        g = reps[idx].scale(c)
        f = g if f is None else f + g
    return f


def scan(a: Algebra, grid=DEFAULT_GRID, t0=ONE, max_size: int = 3, base_id: str | None = None,
         chunk: int = 4096) -> ScanReport:
    """Search linear combinations of HL^2 representatives (up to ``max_size``
    terms, coefficients from ``grid``) for unobstructed deformations that are
    metric at ``t0``.  HEURISTIC: a finite search, not a proof of absence."""
    import itertools

    import numpy as np

    from .cohomology import cohomology

    t0 = as_scalar(t0)
    if not t0:
        raise ValueError("scan needs t0 != 0")
    base_id = base_id or a.name or "algebra"
    grid = tuple(as_scalar(c) for c in grid)
    coeffs = [c for c in dict.fromkeys(grid) if c]
    reps = cohomology(a, 2).representatives
    k, n = len(reps), a.dim
    rng = np.random.default_rng(_SEED)
    stats = {"unobstructed_and_symmetric_mod_p": 0, "metric_mod_p": 0, "confirmed": 0}
    base_inv = invariants(a)
    if not k or not coeffs:
        return ScanReport(base_id, grid, t0, k, 0, stats, [])

    mu = _tensor(np, a.structure, n)
    reps_t = np.stack([_cochain_tensor(np, f) for f in reps])
    tp = _modp(t0)
    # right defect of mu + t0*phi: t0^2 Q(phi, phi); left: L0 + t0 Lin(phi) + t0^2 LQ(phi, phi)
    quad_r = _pair_terms(np, reps_t, reps_t, 1).reshape(k, k, -1)
    quad_l = _pair_terms(np, reps_t, reps_t, None).reshape(k, k, -1)
    mu1 = mu[None]
    lin_l = ((_pair_terms(np, mu1, reps_t, None)[0] + _pair_terms(np, reps_t, mu1, None)[:, 0]) % _P).reshape(k, -1)
    base_l = _pair_terms(np, mu1, mu1, None).reshape(-1)
    width = quad_r.shape[-1]
    proj = rng.integers(0, 1 << 20, size=(width, 4), dtype=np.int64)

    def project(x):
        return np.stack([(x * proj[:, c]).sum(axis=-1) % _P for c in range(4)], axis=-1)

    quad = np.concatenate([project(quad_r), project(quad_l)], axis=-1) * (tp * tp % _P) % _P
    lin = np.concatenate([np.zeros((k, 4), dtype=np.int64), project(lin_l) * tp % _P], axis=-1)
    const = np.concatenate([np.zeros(4, dtype=np.int64), project(base_l)])
    gvals = np.array([_modp(c) for c in coeffs], dtype=np.int64)

    hits = []
    total = 0
    for size in range(1, max_size + 1):
        ctuples = list(itertools.product(range(len(coeffs)), repeat=size))
        cvals = gvals[np.array(ctuples, dtype=np.int64)]  # (C, size)
        pairs = [(u, v) for u in range(size) for v in range(size)]
        mix = np.concatenate(
            [np.stack([cvals[:, u] * cvals[:, v] % _P for u, v in pairs], axis=1), cvals], axis=1
        )
        combos = list(itertools.combinations(range(k), size))
        total += len(combos) * len(ctuples)
        for start in range(0, len(combos), max(1, chunk // len(ctuples) + 1)):
            idx = np.array(combos[start:start + max(1, chunk // len(ctuples) + 1)], dtype=np.int64)
            terms = np.stack([quad[idx[:, u], idx[:, v]] for u, v in pairs] + [lin[idx[:, u]] for u in range(size)], axis=1)
            val = (np.einsum("cq,tqk->tck", mix, terms) + const) % _P
            ok = np.nonzero((val == 0).all(axis=2))
            if not len(ok[0]):
                continue
            stats["unobstructed_and_symmetric_mod_p"] += len(ok[0])
            ti, ci = ok
            phis = np.einsum("ts,tsxyz->txyz", cvals[ci], reps_t[idx[ti]]) % _P
            mus = (mu[None] + tp * phis) % _P
            good = _metric_modp(np, mus, rng)
            for t_, c_ in zip(ti[good], ci[good]):
                stats["metric_mod_p"] += 1
                combo = tuple((int(idx[t_, u]), coeffs[ctuples[c_][u]]) for u in range(size))
                rec = _confirm(a, reps, combo, t0, base_id, base_inv)
                if rec is not None:
                    hits.append(rec)
    stats["confirmed"] = len(hits)
    hits.sort(key=lambda r: (len(r.combination), [i for i, _ in r.combination],
                             [coeffs.index(c) for _, c in r.combination]))
    return ScanReport(base_id, grid, t0, k, total, stats, hits)


def _confirm(a, reps, combo, t0, base_id, base_inv):
    phi = _combine(reps, combo)
    pa = deform(a, [(phi, 1)])
    rep = leibniz_defect(pa, check_base=False)
    if not rep.unobstructed:
        return None
    inst = pa.at(t0)
    if not is_metric(inst).metric:
        return None
    inv = invariants(inst)
    notes = ["same invariants as the base; possibly not a jump"] if inv == base_inv else []
    return DeformationRecord(base_id, [(phi, TPoly.monomial(ONE, 1))], None, True, t0=t0, combination=combo,
                             invariants=inv, notes=notes)


def scan_metric_deformations(a: Algebra, grid=DEFAULT_GRID, t0=ONE) -> list[DeformationRecord]:
    return scan(a, grid, t0).hits
