"""Sparse multivariate polynomials: arithmetic, calculus helpers, and
the CLI parser (including operator precedence)."""

import pytest
from hypothesis import given, settings, strategies as st

from mixedsym.exact import qq, ZERO
from mixedsym.poly import (Poly, PolyParseError, VarTable, jet_vartable,
                           parse_poly)

TBL = jet_vartable(2, 3)


def P(text):
    return parse_poly(text, TBL)


class TestArithmetic:
    def test_ring_identities(self):
        x, y1 = Poly.var(TBL, "x"), Poly.var(TBL, "y1")
        assert (x + y1) * (x - y1) == x ** 2 - y1 ** 2
        assert x * Poly.zero(TBL) == Poly.zero(TBL)
        assert (x + 1) - x == Poly.const(TBL, 1)

    def test_scalar_coercion(self):
        x = Poly.var(TBL, "x")
        assert 2 * x == x + x
        assert x * qq(1, 2) + x * qq(1, 2) == x

    def test_partial_and_degree(self):
        p = P("x^3*y1 + 2*z2")
        assert p.partial("x") == P("3*x^2*y1")
        assert p.total_degree() == 4
        assert p.degree_in("x") == 3
        assert p.depends_on("z2") and not p.depends_on("z0")

    def test_coefficient_of(self):
        p = P("3*x*z1 + z1^2 + 5")
        assert p.coefficient_of("z1") == P("3*x")
        assert p.coefficient_of("z1", 2) == P("1")

    def test_substitute_zero(self):
        assert P("x*y1 + z0").substitute_zero("y1") == P("z0")


class TestParser:
    def test_unary_minus_binds_looser_than_power(self):
        assert P("-y1^2") == -(P("y1") ** 2)
        assert P("-y1^2") != (-P("y1")) ** 2
        assert P("2 - y1^2") == P("2") - P("y1") ** 2

    def test_precedence_and_parens(self):
        assert P("x + 2*z1^2") == P("x") + 2 * P("z1") ** 2
        assert P("(x + z1)^2") == P("x") ** 2 + 2 * P("x*z1") + P("z1") ** 2

    def test_rational_coefficients(self):
        assert P("1/2*x + 1/2*x") == P("x")
        assert P("-3/4") == Poly.const(TBL, qq(-3, 4))

    def test_errors(self):
        with pytest.raises(PolyParseError):
            P("q7 + 1")
        with pytest.raises(PolyParseError):
            P("x +* y1")

    def test_str_parse_roundtrip(self):
        for text in ("0", "x^2*z1 + -1/3*y1", "y0*z3 + 7"):
            p = P(text)
            assert parse_poly(str(p), TBL) == p


@st.composite
def polys(draw):
    terms = draw(st.lists(
        st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
                  st.integers(-3, 3)),
        max_size=4))
    p = Poly.zero(TBL)
    for ex, ey, ez, c in terms:
        p = p + Poly.var(TBL, "x", ex) * Poly.var(TBL, "y1", ey) \
            * Poly.var(TBL, "z2", ez) * qq(c)
    return p


class TestProperties:
    @settings(max_examples=50, deadline=None)
    @given(polys(), polys(), polys())
    def test_distributivity(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=50, deadline=None)
    @given(polys(), polys())
    def test_leibniz_rule(self, a, b):
        assert (a * b).partial("x") == a.partial("x") * b + a * b.partial("x")

    @settings(max_examples=50, deadline=None)
    @given(polys())
    def test_str_roundtrip(self, p):
        assert parse_poly(str(p), TBL) == p
