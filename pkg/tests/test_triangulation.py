import pytest
from hypothesis import given, settings, strategies as st

from clustersurf.surface import (
    INNER,
    OUTER,
    Annulus,
    Bridging,
    Chord,
    Loop,
    Peripheral,
    Polygon,
    crossing_number,
)
from clustersurf.triangulation import (
    Triangulation,
    TriangulationError,
    exchange_matrix,
    fan_triangulation,
    flip,
    flip_by_search,
    mutate_matrix,
    standard_triangulation,
    validate,
    wrap_triangulation,
)

SURFACES = [Polygon(1), Polygon(2), Polygon(3), Annulus(1, 1), Annulus(1, 2), Annulus(2, 2), Annulus(1, 3), Annulus(2, 3)]


@st.composite
def random_triangulation(draw):
    """A random walk of flips away from the standard triangulation."""
    s = draw(st.sampled_from(SURFACES))
    t = standard_triangulation(s)
    for k in draw(st.lists(st.integers(0, s.rank - 1), max_size=8)):
        t = flip(t, k)
    return t


def test_validate_examples():
    p2 = Polygon(2)
    assert validate(Triangulation(p2, (Chord(1, 3), Chord(1, 4))))
    bad = validate(Triangulation(p2, (Chord(1, 3), Chord(2, 4))))
    assert not bad and bad.pair == (Chord(1, 3), Chord(2, 4))
    assert not validate(Triangulation(p2, (Chord(1, 3),)))
    assert validate(Triangulation(Annulus(1, 1), (Bridging(1, 1, 0), Bridging(1, 1, 1))))
    assert not validate(Triangulation(Annulus(1, 1), (Bridging(1, 1, 0), Bridging(1, 1, 2))))
    assert not validate(Triangulation(Annulus(2, 1), (Peripheral(INNER, 1, 3), Bridging(1, 1, 0), Bridging(1, 1, 1))))


def test_named_triangulations():
    assert fan_triangulation(Polygon(1)).arcs == (Chord(1, 3),)
    assert fan_triangulation(Polygon(3)).arcs == (Chord(1, 3), Chord(1, 4), Chord(1, 5))
    assert standard_triangulation(Annulus(1, 1)).arcs == (Bridging(1, 1, 0), Bridging(1, 1, 1))
    for s in SURFACES:
        t = standard_triangulation(s)
        assert validate(t) and len(t) == s.rank
    with pytest.raises(TriangulationError):
        fan_triangulation(Annulus(1, 1))


def test_flip_examples():
    fan = fan_triangulation(Polygon(2))
    assert flip(fan, 0).arcs == (Chord(2, 4), Chord(1, 4))
    k = standard_triangulation(Annulus(1, 1))
    assert flip(k, 0).arcs == (Bridging(1, 1, 2), Bridging(1, 1, 1))
    assert flip(k, 1).arcs == (Bridging(1, 1, 0), Bridging(1, 1, -1))


@given(random_triangulation(), st.data())
@settings(max_examples=150, deadline=None)
def test_flip_properties(t, data):
    k = data.draw(st.integers(0, t.nvars - 1))
    u = flip(t, k)
    assert validate(u)
    assert [i for i in range(t.nvars) if u.arcs[i] != t.arcs[i]] == [k]
    assert flip(u, k).arcs == t.arcs
    assert u.arcs == flip_by_search(t, k).arcs


@given(random_triangulation(), st.data())
@settings(max_examples=150, deadline=None)
def test_exchange_matrix_mutates_with_flips(t, data):
    b = exchange_matrix(t)
    n = t.nvars
    assert all(b[i][j] == -b[j][i] for i in range(n) for j in range(n))
    assert all(abs(v) <= 2 for row in b for v in row)
    k = data.draw(st.integers(0, n - 1))
    assert exchange_matrix(flip(t, k)) == mutate_matrix(b, k)


def test_exchange_matrix_examples():
    assert exchange_matrix(standard_triangulation(Annulus(1, 1))) == [[0, 2], [-2, 0]]
    assert exchange_matrix(fan_triangulation(Polygon(2))) == [[0, -1], [1, 0]]
    # A~_{1,3}: arrows 1->2, 1->4, 2->3, 3->4
    b = exchange_matrix(standard_triangulation(Annulus(1, 3)))
    assert b == [[0, 1, 0, 1], [-1, 0, 1, 0], [0, -1, 0, 1], [-1, 0, -1, 0]]


def test_equality_ignores_order():
    a = Triangulation(Polygon(2), (Chord(1, 3), Chord(1, 4)))
    b = Triangulation(Polygon(2), (Chord(1, 4), Chord(1, 3)))
    assert a == b and hash(a) == hash(b) and a.arcs != b.arcs


def test_json_round_trip():
    t = standard_triangulation(Annulus(2, 3))
    assert Triangulation.from_dict(t.to_dict()).arcs == t.arcs


@pytest.mark.parametrize("r", range(-3, 4))
def test_wrap_triangulations(r):
    w = wrap_triangulation(Annulus(1, 1), (), r)
    assert validate(w.triangulation)
    assert w.triangulation.arcs[w.alpha] == Bridging(1, 1, r)
    assert w.triangulation.arcs[w.beta] == Bridging(1, 1, r + 1)
    s = Annulus(2, 2)
    w = wrap_triangulation(s, (Peripheral(INNER, 1, 2),), r)
    t = w.triangulation
    assert validate(t) and Peripheral(INNER, 1, 2) in t
    alpha = t.arcs[w.alpha]
    assert crossing_number(s, alpha, Loop(1)) == 1 and alpha.winding == r


def test_wrap_rejects_bad_input():
    s = Annulus(3, 1)
    with pytest.raises(TriangulationError):
        wrap_triangulation(s, (Peripheral(INNER, 1, 2), Peripheral(INNER, 2, 2)), 0)
    with pytest.raises(TriangulationError):
        wrap_triangulation(s, (Bridging(1, 1, 0),), 0)
    with pytest.raises(TriangulationError):
        wrap_triangulation(Polygon(2), (), 0)
