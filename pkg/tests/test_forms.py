import oracles
import pytest
from conftest import invertible_matrices
from hypothesis import given
from hypothesis import strategies as st

from leibniz import Algebra, Matrix, is_metric, transport, verify_form
from leibniz.catalog.store import all_entries, load
from leibniz.forms import BilinearForm, form_matrix, invariant_form_space

CATALOG = [e.id for e in all_entries()]


@pytest.mark.parametrize("id", CATALOG)
def test_form_space_dimension_matches_oracle(id):
    a = load(id).algebra
    assert len(invariant_form_space(a)) == oracles.invariant_form_dim(a)


@pytest.mark.parametrize("id", CATALOG)
def test_every_basis_form_is_invariant(id):
    a = load(id).algebra
    for f in invariant_form_space(a):
        r = verify_form(a, f)
        assert r.symmetric and r.invariant


@pytest.mark.parametrize("id", CATALOG)
def test_metric_verdict_matches_symbolic_determinant(id):
    a = load(id).algebra
    fast = is_metric(a)
    slow = is_metric(a, need_determinant=True)
    assert fast.metric == slow.metric
    if slow.determinant is not None:
        assert slow.metric == (not slow.determinant.is_zero())
    if fast.metric:
        assert verify_form(a, fast.witness).ok


@pytest.mark.parametrize("id", ["mu1", "lambda2", "diamond", "L2"])
@given(data=st.data())
def test_metric_survives_basis_change(id, data):
    a = load(id).algebra
    p = data.draw(invertible_matrices(a.dim))
    assert is_metric(transport(a, p)).metric


def test_abelian_is_metric_and_mu2_is_not():
    assert is_metric(Algebra.abelian(3)).metric
    assert not is_metric(load("mu2").algebra).metric
    assert not is_metric(load("r1").algebra).metric


def test_mu1_form():
    # [e1,e1] = e2 carries B(e1,e2) = 1
    a = load("mu1").algebra
    assert verify_form(a, form_matrix([[0, 1], [1, 0]])).ok
    r = verify_form(a, form_matrix([[1, 0], [0, 1]]))
    assert not r.invariant and (1, 1, 2) in r.violations


def test_degenerate_and_asymmetric_forms_are_reported():
    a = Algebra.abelian(2)
    assert not verify_form(a, Matrix([[1, 0], [0, 0]])).nondegenerate
    assert not verify_form(a, Matrix([[1, 1], [0, 1]])).symmetric


def test_size_mismatch():
    with pytest.raises(ValueError):
        verify_form(load("mu1").algebra, Matrix.identity(3))


def test_form_json_round_trip():
    f = form_matrix([[0, 1], [1, "i"]])
    assert BilinearForm.from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        BilinearForm.from_json({"matrix": [[1, 2]]})
