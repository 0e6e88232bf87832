import json

import pytest
from hypothesis import given, settings, strategies as st

from clustersurf.basis import (
    Collection,
    CollectionError,
    DecompositionError,
    Report,
    collection_weight,
    complete_to_triangulation,
    decompose,
    decompose_auto,
    enumerate_collections,
    exchange_graph,
    format_collection,
    parse_collection,
    verify_atomicity_witness,
    verify_positive_basis,
)
from clustersurf.expansion import expand_collection, expand_loop
from clustersurf.laurent import LaurentPoly
from clustersurf.surface import INNER, OUTER, Annulus, Bridging, Chord, Peripheral, Polygon, crossing_number
from clustersurf.triangulation import standard_triangulation, validate

C11, C22 = Annulus(1, 1), Annulus(2, 2)


def test_collection_validation():
    with pytest.raises(CollectionError):
        Collection(Polygon(2), (Chord(1, 3), Chord(2, 4)))
    with pytest.raises(CollectionError):
        Collection(C22, (Bridging(1, 1, 0),), 1)
    with pytest.raises(CollectionError):
        Collection(Polygon(2), (), 1)
    with pytest.raises(CollectionError):
        Collection(C22, (Peripheral(INNER, 1, 3),))  # wraps past its own start
    c = Collection(C22, (Peripheral(OUTER, 2, 2), Peripheral(INNER, 1, 2), Peripheral(INNER, 1, 2)), 2)
    assert len(c) == 4
    assert c == Collection(C22, (Peripheral(INNER, 1, 2), Peripheral(INNER, 1, 2), Peripheral(OUTER, 2, 2)), 2)


def test_collection_notation_round_trip():
    for c in enumerate_collections(C22, 2):
        assert parse_collection(C22, format_collection(c)) == c
    assert format_collection(Collection(C11)) == "{}"
    with pytest.raises(CollectionError):
        parse_collection(C22, "z1; z2")


def test_enumerate_small_cases():
    c11 = [format_collection(c) for c in enumerate_collections(C11, 1)]
    # w0 and w1 form the standard cluster; w-1 and w2 each cross it once
    assert c11 == ["{}", "b i1 o1 w0", "b i1 o1 w1", "b i1 o1 w-1", "b i1 o1 w2", "z1"]
    # weight zero leaves only monomials in the fan cluster
    pentagon = [format_collection(c) for c in enumerate_collections(Polygon(2), 0, max_size=2)]
    assert pentagon == ["{}", "c 1-3", "c 1-4", "c 1-3; c 1-3", "c 1-3; c 1-4", "c 1-4; c 1-4"]
    assert all(not c.loop for c in enumerate_collections(C22, 3, allow_loops=False))


@given(st.integers(0, 3))
@settings(max_examples=4, deadline=None)
def test_enumerated_collections_respect_weight(w):
    for c in enumerate_collections(C22, w, max_loop=2):
        assert collection_weight(c) <= w
        arcs = set(c.arcs)
        assert all(crossing_number(C22, g, h) == 0 for g in arcs for h in arcs)


def test_decompose_known_products():
    t = standard_triangulation(C11)
    z1 = expand_loop(t, 1)
    d = decompose(z1 * z1, t, enumerate_collections(C11, 2))
    assert {format_collection(c): v for c, v in d.coefficients.items()} == {"z2": 1, "{}": 2}
    assert d.residual == 0
    d = decompose_auto(z1 * z1 * z1, t)
    assert {format_collection(c): v for c, v in d.coefficients.items()} == {"z3": 1, "z1": 3}


def test_decompose_rejects_outside_span():
    t = standard_triangulation(C11)
    y = LaurentPoly.variable(0, 2, -5)
    with pytest.raises(DecompositionError):
        decompose(y, t, enumerate_collections(C11, 1))
    with pytest.raises(DecompositionError):
        decompose(LaurentPoly.one(3), t, enumerate_collections(C11, 1))


@pytest.mark.parametrize("s,w", [(Polygon(3), 2), (C11, 3), (C22, 2), (Annulus(1, 2), 2)], ids=str)
def test_candidates_are_linearly_independent(s, w):
    t = standard_triangulation(s)
    cands = enumerate_collections(s, w, max_loop=3)
    for c in cands[:: max(1, len(cands) // 12)]:
        d = decompose(expand_collection(t, c), t, cands)
        assert d.coefficients == {c: 1}


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.data())
@settings(max_examples=40, deadline=None)
def test_decompose_recovers_integer_combinations(coeffs, data):
    s = data.draw(st.sampled_from([C11, C22, Polygon(3)]))
    t = standard_triangulation(s)
    cands = enumerate_collections(s, 2)
    chosen = data.draw(st.lists(st.sampled_from(cands), min_size=len(coeffs), max_size=len(coeffs), unique=True))
    want = {c: k for c, k in zip(chosen, coeffs) if k}
    y = sum((k * expand_collection(t, c) for c, k in want.items()), LaurentPoly.zero(t.nvars))
    assert decompose(y, t, cands).coefficients == want


def test_complete_to_triangulation():
    t = complete_to_triangulation(C22, [Peripheral(INNER, 1, 2), Bridging(1, 2, 3)])
    assert validate(t)
    assert Bridging(1, 2, 3) in t.arcs


def test_exchange_graph_counts():
    g = exchange_graph(Polygon(1))
    assert (len(g.vertices), len(g.edges)) == (2, 1)
    g = exchange_graph(Polygon(2))
    assert (len(g.vertices), len(g.edges)) == (5, 5)
    g = exchange_graph(Polygon(3))
    assert (len(g.vertices), len(g.edges)) == (14, 21)
    g = exchange_graph(C11, radius=3)
    assert (len(g.vertices), len(g.edges)) == (7, 6)
    data = json.loads(json.dumps(g.to_dict()))
    assert data["surface"] == "annulus:1,1"


def test_positivity_small():
    rep = verify_positive_basis(C11, 3, radius=3, wrap_range=2)
    assert rep.ok and rep.total > 0
    assert rep.details["collections"] == len(enumerate_collections(C11, 3))


@pytest.mark.parametrize("text", ["z1", "z2", "b i1 o1 w0", "{}"])
def test_atomicity_witnesses_on_kronecker(text):
    gamma = parse_collection(C11, text)
    rep = verify_atomicity_witness(C11, gamma, enumerate_collections(C11, 3))
    assert rep.ok, rep.failures
    assert "witness" in rep.details


def test_atomicity_with_peripherals_and_loop():
    s = Annulus(2, 1)
    gamma = Collection(s, (Peripheral(INNER, 1, 2),), 1)
    rep = verify_atomicity_witness(s, gamma, enumerate_collections(s, 2))
    assert rep.ok, rep.failures


def test_report_shape():
    rep = Report("demo", "polygon:2", {"k": 1})
    rep.check(True)
    rep.check(False, {"why": "x"})
    d = rep.to_dict()
    assert d["checks"] == {"total": 2, "passed": 1}
    assert d["failures"] == [{"why": "x"}]
    assert rep.summary() == "FAIL demo [polygon:2] 1/2"
    other = Report("demo", "polygon:2")
    other.check(True)
    rep.merge(other)
    assert (rep.total, rep.passed) == (3, 2)
