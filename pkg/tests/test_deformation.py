import itertools

import pytest
from conftest import scalars
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz import ONE, Algebra, Cochain, Matrix, Scalar, cohomology, deform, is_cocycle, is_metric, leibniz_defect
from leibniz.algebra import invariants
from leibniz.catalog.store import load
from leibniz.cohomology import class_coordinates, coboundary, cochain_matrix
from leibniz.linalg import rank
from leibniz.deformation import (ObstructedError, PolyAlgebra, cocycle_of_square, equivalence_check,
                                 infinitesimal_obstruction_rule, metric_of_deformation, record_for, scan)

BASES = ["mu1", "lambda2", "sl2", "diamond", "R20_0", "mu1+mu1", "L2"]


@st.composite
def algebra_and_cochain(draw):
    """A catalog algebra with a 2-cochain that is a cocycle about half the time."""
    a = load(draw(st.sampled_from(BASES))).algebra
    n = a.dim
    reps = cohomology(a, 2).representatives
    f = Cochain(2, n)
    for r in reps:
        f = f + r.scale(draw(scalars))
    g = Cochain(1, n, draw(st.lists(scalars, min_size=n * n, max_size=n * n)))
    f = f + coboundary(a, g)
    if draw(st.booleans()):
        i, j, k = draw(st.tuples(*[st.integers(1, n)] * 3))
        f = f + Cochain.from_dict(2, n, {(i, j): {k: draw(scalars)}})
    return a, f


def _layer(rep, power, n):
    table = rep.coefficients.get(power, {})
    return Cochain(3, n, [table.get((x, y, z), {}).get(k, 0)
                          for x, y, z in itertools.product(range(n), repeat=3) for k in range(n)])


@settings(max_examples=200)
@given(algebra_and_cochain())
def test_first_order_defect_is_the_coboundary(pair):
    a, f = pair
    rep = leibniz_defect(deform(a, [(f, 1)]))
    first = _layer(rep, 1, a.dim)
    assert first == coboundary(a, f)
    assert (rep.obstruction_order != 1) == is_cocycle(a, f)


@given(algebra_and_cochain())
def test_second_order_defect_is_the_square(pair):
    a, f = pair
    n = a.dim
    rep = leibniz_defect(deform(a, [(f, 1)]))
    sq = leibniz_defect(deform(Algebra(n, _tensor(f)), []), check_base=False)
    assert _layer(rep, 2, n) == _layer(sq, 0, n)


def _tensor(f):
    n = f.dim
    return [[f.value((i, j)) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("id", ["lambda2", "diamond", "mu1+mu1"])
@given(data=st.data())
def test_coboundary_deformation_is_trivial_to_first_order(id, data):
    a = load(id).algebra
    n = a.dim
    g = Cochain(1, n, data.draw(st.lists(scalars, min_size=n * n, max_size=n * n)))
    mu = PolyAlgebra.constant(a)
    mu2 = deform(a, [(coboundary(a, g), 1)])
    # with the coboundary sign used here, Phi_t = id - t g realises the equivalence
    phi = [Matrix.identity(n), cochain_matrix(g).scale(-1)]
    assert equivalence_check(mu, mu2, phi, 1)
    if not coboundary(a, g).is_zero():
        assert not equivalence_check(mu, mu2, [Matrix.identity(n)], 1)


def test_equivalence_requires_identity_start():
    a = load("mu1").algebra
    with pytest.raises(ValueError):
        equivalence_check(PolyAlgebra.constant(a), PolyAlgebra.constant(a), [Matrix.identity(2).scale(2)], 1)


@pytest.mark.parametrize("id,i", [("lambda2", 2), ("lambda2+C2", 2), ("lambda2+C2", 5), ("mu1+mu1+C", 5), ("diamond+C", 5)])
def test_square_cocycles_are_obstructed_at_order_two(id, i):
    a = load(id).algebra
    v = infinitesimal_obstruction_rule(a, i)
    assert v.precondition and v.confirmed
    # our defect is lhs - rhs of the right identity, so the residual is +e_i
    assert v.residual == tuple(ONE if k == i - 1 else 0 for k in range(a.dim))


def test_square_is_not_a_cocycle_on_mu1():
    assert not infinitesimal_obstruction_rule(load("mu1").algebra, 2).precondition


def test_square_cochain_shape():
    f = cocycle_of_square(3, 2)
    assert f.value((1, 1)) == (0, 1, 0)
    assert len(f.sparse()) == 1


def test_obstructed_metric_query_raises():
    a = load("diamond+C").algebra
    chi = load("diamond+C").cocycle("chi").cochain(5)
    with pytest.raises(ObstructedError):
        metric_of_deformation(deform(a, [(chi, 1)]), 1)
    with pytest.raises(ValueError):
        metric_of_deformation(deform(a, [(chi, 1)]), 0)


def test_polyalgebra_evaluation():
    a = load("mu1").algebra
    phi = Cochain.from_dict(2, 2, {(1, 2): {2: 1}})
    pa = deform(a, [(phi, 1)])
    assert pa.degree == 1
    assert pa.at(0) == a
    assert pa.at(Scalar(3)).structure[0][1] == (0, 3)


def test_record_for_marks_obstruction():
    a = load("lambda2").algebra
    bad = record_for("lambda2", a, cocycle_of_square(3, 2))
    assert bad.obstruction_order == 2 and not bad.metric
    assert bad.to_json()["obstruction_order"] == 2


# -- the scan against an exhaustive exact search --------------------------------


def exact_hits(a, grid, size):
    reps = cohomology(a, 2).representatives
    out = set()
    for idx in itertools.combinations(range(len(reps)), size):
        for cs in itertools.product(grid, repeat=size):
            f = Cochain(2, a.dim)
            for i, c in zip(idx, cs):
                f = f + reps[i].scale(c)
            pa = deform(a, [(f, 1)])
            if leibniz_defect(pa).unobstructed and is_metric(pa.at(1)).metric:
                out.add(tuple(zip(idx, cs)))
    return out


@pytest.mark.parametrize("id,grid,size", [
    ("lambda2", (ONE, -ONE, Scalar(2)), 1),
    ("mu1+mu1", (ONE, Scalar(0, 1)), 1),
    ("diamond", (ONE, -ONE, Scalar(0, 1)), 2),
    ("R20_0", (ONE, -ONE), 2),
])
def test_scan_agrees_with_exhaustive_search(id, grid, size):
    a = load(id).algebra
    rep = scan(a, grid, max_size=size)
    found = {h.combination for h in rep.hits if len(h.combination) == size}
    assert found == exact_hits(a, grid, size)
    for h in rep.hits:
        assert h.metric and h.obstruction_order is None


def test_diamond_hits_lie_in_the_named_classes():
    from leibniz.catalog.classify import catalog_scan

    e = load("diamond")
    a = e.algebra
    named = [class_coordinates(a, e.cocycle(n).cochain(4)) for n in ("phi1", "phi2")]
    span = Matrix(named)
    hits = catalog_scan("diamond").hits
    assert hits
    for h in hits:
        v = class_coordinates(a, h.cocycles[0][0])
        assert rank(Matrix(named + [v])) == rank(span)


def test_scan_needs_nonzero_t0():
    with pytest.raises(ValueError):
        scan(load("mu1").algebra, t0=0)


def test_hits_change_invariants():
    from leibniz.catalog.classify import catalog_scan

    base = invariants(load("diamond").algebra)
    for h in catalog_scan("diamond").hits:
        assert h.invariants != base or h.notes
