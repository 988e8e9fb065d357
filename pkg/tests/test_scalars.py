from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilherm.scalars import (
    EMPTY_SPACE,
    GaussianRational,
    ParamSpace,
    PolyScalar,
    RatScalar,
    ScalarError,
    format_gaussian,
    parse_gaussian,
    solve_linear,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)

SPACE = ParamSpace.declare(["x", "y"], ["A"])


@st.composite
def polys(draw, max_terms=4):
    p = PolyScalar(SPACE)
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, 2)) for _ in range(len(SPACE)))
        p = p + PolyScalar(SPACE, {e: draw(gaussians)})
    return p


assignments = st.fixed_dictionaries({"x": fractions, "y": fractions, "A": gaussians})


# -- Gaussian rationals -------------------------------------------------------


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if b:
        assert (a / b) * b == a


@given(gaussians, gaussians)
def test_conjugation_is_ring_involution(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert a * a.conjugate() == a.norm2()


@given(gaussians)
def test_format_parse_roundtrip(z):
    assert parse_gaussian(format_gaussian(z)) == z


@pytest.mark.parametrize(
    "z, text",
    [
        (GaussianRational(3), "3"),
        (GaussianRational(Fraction(-1, 2)), "-1/2"),
        (GaussianRational(0, 1), "i"),
        (GaussianRational(0, Fraction(1, 2)), "(1/2)i"),
        (GaussianRational(2, -3), "(2-3i)"),
    ],
)
def test_format_gaussian(z, text):
    assert format_gaussian(z) == text


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / 0


def test_parse_rejects_garbage():
    for bad in ["", "1/0", "(1+2", "2x", "i i +"]:
        with pytest.raises(ScalarError):
            parse_gaussian(bad)


# -- polynomials ---------------------------------------------------------------


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_polynomial_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == PolyScalar(SPACE)


@settings(max_examples=60)
@given(polys(), polys(), assignments)
def test_substitution_is_a_ring_homomorphism(p, q, values):
    full = dict(values)
    full["Abar"] = values["A"].conjugate()
    assert (p + q).substitute(full) == p.substitute(full) + q.substitute(full)
    assert (p * q).substitute(full) == p.substitute(full) * q.substitute(full)


@settings(max_examples=60)
@given(polys(), assignments)
def test_conjugation_commutes_with_substitution(p, values):
    full = dict(values)
    full["Abar"] = values["A"].conjugate()
    assert p.conjugate().conjugate() == p
    assert p.conjugate().substitute(full) == p.substitute(full).conjugate()


def test_complex_symbol_has_partner():
    A = SPACE.var("A")
    assert A.conjugate() == SPACE.var("Abar")
    assert str(A.conjugate()) == "conj(A)"
    assert (A * A.conjugate()).is_real()
    assert not A.is_real()


def test_substitute_requires_consistent_values():
    A = SPACE.var("A")
    with pytest.raises(ScalarError):
        A.substitute({})
    with pytest.raises(ScalarError):
        SPACE.var("x").substitute({"x": GaussianRational(0, 1)})
    with pytest.raises(ScalarError):
        (A + A.conjugate()).substitute({"A": 1, "Abar": 2})


def test_partial_substitution():
    x, y = SPACE.var("x"), SPACE.var("y")
    p = x * x * y + 3 * y
    q = p.subs({"x": 2})
    assert q == 7 * y
    assert q.substitute({"y": Fraction(1, 7)}) == 1


def test_constant_promotes_into_parametric_space():
    c = PolyScalar.constant(5)
    assert c.space is EMPTY_SPACE
    s = c + SPACE.var("x")
    assert s.space == SPACE
    assert s.substitute({"x": 1}) == 6


# -- rational functions and linear solving -------------------------------------


@settings(max_examples=50)
@given(fractions.filter(bool), fractions, fractions.filter(bool))
def test_solve_linear_recovers_root(a, b, yval):
    x, y = SPACE.var("x"), SPACE.var("y")
    p = x * a * y + b
    root = solve_linear(p, "x")
    assert isinstance(root, RatScalar)
    assert root.substitute({"y": yval}) == -b / (a * yval)
    assert p.subs({"y": yval}).substitute({"x": root.substitute({"y": yval})}) == 0


def test_solve_linear_rejects_nonlinear():
    x = SPACE.var("x")
    with pytest.raises(ScalarError):
        solve_linear(x * x + 1, "x")
    with pytest.raises(ScalarError):
        solve_linear(SPACE.var("y") + 1, "x")


def test_ratscalar_equality_by_cross_multiplication():
    x = SPACE.var("x")
    assert RatScalar(x * 2, x * 4) == RatScalar(1, 2)
    assert RatScalar(1, 2).value() == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        RatScalar(x, PolyScalar(SPACE))
