"""One test per acceptance criterion, each backed by a verification suite.

Run with ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

from clustersurf import suites
from clustersurf.basis import Collection, decompose_auto
from clustersurf.expansion import enumerate_arc_walks, enumerate_loop_walks, expand_curve, expand_loop
from clustersurf.laurent import LaurentPoly
from clustersurf.surface import Annulus
from clustersurf.triangulation import standard_triangulation


def failures(report, limit=3):
    return report.failures[:limit]


def test_criterion_01_kronecker_loops(verdict):
    rep = suites.kronecker()
    t = standard_triangulation(Annulus(1, 1))
    a, b = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    z = (1 + a * a + b * b).divide_exact(a * b)
    rep.check(len(enumerate_loop_walks(t, 1)) == 3 and expand_loop(t, 1) == z)
    rep.check(len(enumerate_loop_walks(t, 2)) == 7 and expand_loop(t, 2) == z * z - 2)
    ok = verdict(1, "Kronecker loop fixture", rep)
    assert ok, failures(rep)


def test_criterion_02_a13_tables(verdict):
    rep = suites.a13_tables()
    t = standard_triangulation(Annulus(1, 3))
    rep.check(len(enumerate_arc_walks(t, suites.A13_N1_CURVE)) == 2)
    rep.check(expand_curve(t, suites.A13_M1_CURVE) - expand_curve(t, suites.A13_N1_CURVE) == expand_loop(t, 1))
    ok = verdict(2, "A~(1,3) monomial tables and x_M1 - x_N1 = x_z", rep)
    assert ok, failures(rep)


def test_criterion_03_chebyshev(verdict):
    rep = suites.chebyshev_suite(max_m=4)
    ok = verdict(3, "Chebyshev identities for loops", rep)
    assert ok, failures(rep)


def test_criterion_04_oracle_equivalence(verdict):
    rep = suites.oracle(radius=3, max_weight=6)
    ok = verdict(4, "walk expansion equals mutation oracle", rep)
    assert ok, failures(rep)


def test_criterion_05_denominator_equals_crossing(verdict):
    rep = suites.denominators(radius=3, max_weight=6)
    ok = verdict(5, "denominator vector equals crossing vector", rep)
    assert ok, failures(rep)


def test_criterion_06_degree_lemmas(verdict):
    rep = suites.degree(radius=3, max_weight=6, max_m=3)
    ok = verdict(6, "per-term degree lemmas", rep)
    assert ok, failures(rep)


def test_criterion_07_positivity(verdict):
    rep = suites.positivity(max_weight=4, radius=3, wrap_range=2, max_loop=3)
    ok = verdict(7, "positivity of basis elements", rep)
    assert ok, failures(rep)


def test_criterion_08_atomicity(verdict):
    rep = suites.atomicity(max_weight=3)
    ok = verdict(8, "atomicity witnesses", rep)
    assert ok, failures(rep)


def test_criterion_09_decomposition(verdict):
    rep = suites.decomposition(cases=20, seed=1)
    k = Annulus(1, 1)
    t = standard_triangulation(k)
    z = expand_loop(t, 1)
    rep.check(decompose_auto(z * z, t).coefficients == {Collection(k, (), 2): 1, Collection(k): 2})
    ok = verdict(9, "decomposition fixtures and random products", rep)
    assert ok, failures(rep)


def test_criterion_10_counts(verdict):
    rep = suites.counts(radius=3)
    ok = verdict(10, "exchange graph counts and flip involution", rep)
    assert ok, failures(rep)
