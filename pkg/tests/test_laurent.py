import pytest
import sympy
from hypothesis import given, settings, strategies as st

from clustersurf.laurent import InexactDivision, LaurentPoly, format_fraction

N = 3
exps = st.tuples(*[st.integers(-3, 3)] * N)
polys = st.dictionaries(exps, st.integers(-5, 5), max_size=5).map(lambda d: LaurentPoly(N, d))
nonzero = polys.filter(bool)

SYMS = sympy.symbols("a b c")


def to_sympy(p):
    return sum((c * sympy.Mul(*[s**e for s, e in zip(SYMS, ex)]) for ex, c in p.items()), sympy.Integer(0))


def x(i, power=1):
    return LaurentPoly.variable(i, N, power)


def test_zero_terms_are_dropped():
    p = LaurentPoly(2, {(1, 0): 2, (0, 1): 0})
    assert p.terms == {(1, 0): 2}
    assert LaurentPoly(2, {(0, 0): 0}).is_zero()


def test_integer_comparison():
    assert LaurentPoly.constant(3, 2) == 3
    assert LaurentPoly.zero(2) == 0


def test_variable_count_mismatch():
    with pytest.raises(ValueError):
        LaurentPoly.one(2) + LaurentPoly.one(3)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@given(polys, polys)
@settings(max_examples=60)
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys, nonzero)
@settings(max_examples=80)
def test_divide_exact_inverts_multiplication(a, b):
    assert (a * b).divide_exact(b) == a


def test_divide_exact_rejects_non_divisors():
    a, b = x(0), x(1)
    with pytest.raises(InexactDivision):
        (a + 1).divide_exact(a + b)
    with pytest.raises(InexactDivision):
        (2 * a + 1).divide_exact(LaurentPoly.constant(2, N))
    with pytest.raises(ZeroDivisionError):
        a.divide_exact(LaurentPoly.zero(N))


def test_exchange_relation_division():
    # (1 + x2^2) / x1 is the mutation of x1 in the Kronecker seed
    a, b = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    q = (b * b + 1).divide_exact(a)
    assert q * a == b * b + 1
    assert q.terms == {(-1, 2): 1, (-1, 0): 1}


def test_negative_powers_only_for_monomials():
    assert x(0) ** -2 == x(0, -2)
    assert (x(0) * x(1, -1)) ** -1 == x(0, -1) * x(1)
    with pytest.raises(InexactDivision):
        (x(0) + 1) ** -1


@given(polys)
def test_denominator_vector_clears_denominators(a):
    if not a:
        return
    d = a.denominator_vector()
    cleared = a.shift(d)
    assert all(min(e) >= 0 for e in cleared.terms)
    assert all(v >= 0 for v in d)


@given(nonzero, nonzero)
def test_denominator_of_positive_products_adds(a, b):
    a = LaurentPoly(N, {e: abs(c) for e, c in a.items()})
    b = LaurentPoly(N, {e: abs(c) for e, c in b.items()})
    da, db, dab = a.denominator_vector(), b.denominator_vector(), (a * b).denominator_vector()
    assert all(k <= i + j for i, j, k in zip(da, db, dab))
    # no cancellation, so equality once no variable is forced positive
    if all(min(e[i] for e in p.terms) <= 0 for p in (a, b) for i in range(N)):
        assert dab == tuple(i + j for i, j in zip(da, db))


def test_denominator_of_zero():
    with pytest.raises(ValueError):
        LaurentPoly.zero(2).denominator_vector()


def test_degree_wrt():
    p = LaurentPoly(3, {(1, -2, 5): 1, (0, 1, 0): 3})
    degs, hi, lo = p.degree_wrt([0, 1])
    assert degs == {(1, -2, 5): -1, (0, 1, 0): 1}
    assert (hi, lo) == (1, -1)
    assert LaurentPoly.zero(3).degree_wrt([0])[1:] == (None, None)


def test_subtraction_free():
    assert (x(0) + x(1, -1)).is_subtraction_free()
    assert not (x(0) - 1).is_subtraction_free()


@given(polys)
@settings(max_examples=40)
def test_substitute_identity(a):
    assert a.substitute([x(i) for i in range(N)]) == a


def test_substitute_into_cluster():
    # x1 -> (1 + x2^2)/x1 applied to x1 * x1' gives the exchange binomial
    a, b = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    mutated = (b * b + 1).divide_exact(a)
    p = LaurentPoly(2, {(1, 0): 1})
    assert p.substitute([mutated, b]) == mutated
    assert LaurentPoly(2, {(2, -1): 1}).substitute([mutated, b]) == mutated * mutated * b ** -1
    # x1 / (1 + x2^2) is not a Laurent polynomial
    with pytest.raises(InexactDivision):
        LaurentPoly(2, {(-1, 0): 1}).substitute([mutated, b])


@given(polys)
def test_json_round_trip(a):
    assert LaurentPoly.from_json(a.to_json()) == a


def test_json_shape_is_sorted_and_string_coefficients():
    p = LaurentPoly(2, {(1, 0): 2, (-1, 3): -1})
    d = p.to_dict()
    assert d["numVars"] == 2
    assert [t["exponents"] for t in d["terms"]] == [[-1, 3], [1, 0]]
    assert d["terms"][0]["coeff"] == "-1"


def test_format_fraction():
    a, b = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    z = (a * a + b * b + 1).divide_exact(a * b)
    assert format_fraction(z) == "(1 + x1^2 + x2^2) / (x1 x2)"
    assert format_fraction((b + 1).divide_exact(a)) == "(1 + x2) / x1"
    assert format_fraction(a * 2 - 3) == "-3 + 2 x1"
    assert format_fraction(LaurentPoly.zero(2)) == "0"
    assert format_fraction(a.shift((0, -1))) == "x1 / x2"
