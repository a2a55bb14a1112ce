import pytest
from conftest import invertible_matrices
from hypothesis import given, settings
from hypothesis import strategies as st

from leibniz import I, ONE, Scalar, check_identity, is_metric, transport
from leibniz.catalog.classify import fingerprint, identify, separating
from leibniz.catalog.expr import ExprError, basis_env, scalar, vector
from leibniz.catalog.graph import deformation_graph
from leibniz.catalog.isos import evaluate_record
from leibniz.catalog.store import UnknownEntry, all_entries, isomorphisms, list_ids, load
from leibniz.catalog.verify import KINDS, TheoremRecord, check, jsonable, theorem_records

ISOS = {r["id"]: r for r in isomorphisms()}
METRIC = [e.id for e in all_entries() if e.metric]


# -- expressions ----------------------------------------------------------------


def test_scalar_expressions():
    assert scalar("-1/(2*t**3)", {"t": Scalar(2)}) == Scalar(-1) / 16
    assert scalar("i*i") == -ONE
    assert scalar(3) == Scalar(3)


def test_vector_expressions():
    assert vector("e1 - 2*e3", 3) == (1, 0, -2)
    assert vector("r*(e3 + i*e2)", 3, {"r": Scalar(2)}) == (0, 2 * I, 2)
    assert vector("0", 2) == (0, 0)


@pytest.mark.parametrize("bad", ["e1/e2", "t**(1/2)", "__import__('os')", "1/0", "e1 +", "x"])
def test_bad_expressions(bad):
    with pytest.raises(ExprError):
        vector(bad, 2, {"t": ONE})


def test_scalar_rejects_vectors():
    with pytest.raises(ExprError):
        scalar("2*e1", basis_env(2))


# -- store ----------------------------------------------------------------------


def test_listing():
    assert list_ids(dim=2) == ["C2", "mu1", "mu2", "r1"]
    assert list_ids(dim=5, metric=True) == [
        "L2+C", "R20_0+C", "W3", "W3tilde", "W3tilde_star", "diamond+C", "lambda2+C2", "mu1+mu1+C", "sl2+C2"]
    assert "sl2+mu1" in list_ids(dim=5, listed_only=False)


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        load("nope")


@pytest.mark.parametrize("id", [e.id for e in all_entries()])
def test_entries_are_right_leibniz(id):
    assert check_identity(load(id).algebra, "right").holds


def test_claim_records_are_unique():
    recs = theorem_records()
    assert len({r.claim for r in recs}) == len(recs)
    assert {r.kind for r in recs} == set(KINDS)


# -- basis changes ----------------------------------------------------------------


@pytest.mark.parametrize("rid", sorted(ISOS))
def test_iso_records_evaluate_as_recorded(rid):
    r = ISOS[rid]
    results = evaluate_record(r)
    assert len(results) >= 2
    if r["expect"] == "ok":
        assert all(x["ok"] for x in results), results
    else:
        assert not all(x["ok"] for x in results)
        assert any(x.get("mismatches") or x.get("reason") for x in results)


def test_printed_mismatch_names_pairs():
    bad = evaluate_record(ISOS["diamond-L2-printed"])[0]
    assert bad["reason"] == "bracket mismatch"
    assert all(len(m["pair"]) == 2 for m in bad["mismatches"])


def test_inconsistent_radical_is_reported_not_raised():
    r = dict(ISOS["diamond-L2-printed"], instantiations=[{"t": "2*i", "r": "2"}])
    assert evaluate_record(r)[0]["reason"] == "radical instantiation inconsistent"


# -- classification -----------------------------------------------------------------


@pytest.mark.parametrize("id", ["mu1+mu1", "R20_0", "diamond", "L2", "sl2+C", "lambda2+C"])
def test_identify_catalog_members(id):
    assert identify(load(id).algebra) == [id]


@settings(max_examples=10)
@given(st.sampled_from(["mu1+mu1", "R20_0", "L2"]).flatmap(lambda i: st.tuples(st.just(i), invertible_matrices(4))))
def test_identify_ignores_basis(pair):
    id, p = pair
    assert identify(transport(load(id).algebra, p)) == [id]


def test_r20_and_mu1_pair_are_told_apart():
    a, b = load("R20_0").algebra, load("mu1+mu1").algebra
    assert separating(a, b) == {"derivations": [7, 6]}
    assert fingerprint(a, full=True)["hl2"] == 9 and fingerprint(b, full=True)["hl2"] == 8


# -- graph --------------------------------------------------------------------------


def test_graph_dim4_edges():
    g = deformation_graph(4)
    assert g.edge_set() == {("R20_0", "mu1+mu1"), ("diamond", "L2"), ("diamond", "sl2+C"),
                            ("lambda2+C", "L2"), ("lambda2+C", "R20_0")}
    assert all(e.confirmed for e in g.edges)


def test_graph_small_dims():
    assert deformation_graph(1).edges == ()
    assert deformation_graph(2, verify=False).nodes == ("mu1",)
    with pytest.raises(ValueError):
        deformation_graph(9)


def test_graph_json_shape():
    g = deformation_graph(4, verify=False).to_json()
    assert g["dim"] == 4 and len(g["edges"]) == 5


# -- verification plumbing -------------------------------------------------------------


def test_check_never_raises():
    line = check(TheoremRecord("hl_dim", "broken", "nowhere", {"algebra": "missing"}))
    assert line["verdict"] == "discrepancy" and "error" in line["details"]


def test_identity_claims_confirm():
    for rec in theorem_records(("identity",)):
        assert check(rec)["verdict"] == "confirmed"


def test_jsonable():
    assert jsonable({1: (Scalar(1, 1), [I])}) == {"1": ["1+i", ["i"]]}


@pytest.mark.parametrize("id", METRIC)
def test_metric_labels(id):
    assert is_metric(load(id).algebra).metric
