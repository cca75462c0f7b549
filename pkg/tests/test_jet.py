"""Jet charts: total derivative, brackets, contact prolongation, and the
g polynomial family with its flat solution spaces."""

import pytest
from hypothesis import given, settings, strategies as st

from mixedsym.exact import qq, ONE, ZERO
from mixedsym.jet import (JetSpace, VectorField, flat_solution_space,
                          g_function, g_identity_residual, prolong,
                          poly_span_subspace)
from mixedsym.poly import Poly, parse_poly

J12 = JetSpace(1, 2)


def P(text, space=J12):
    return parse_poly(text, space.table)


def F(space=J12, **coeffs):
    return VectorField(space, {n: P(p, space) for n, p in coeffs.items()})


class TestTotalDerivative:
    def test_shifts_jet_coordinates(self):
        assert J12.total_derivative(P("y0")) == P("y1")
        assert J12.total_derivative(P("x*z1")) == P("z1 + x*z2")

    def test_needs_successor_unless_truncated(self):
        with pytest.raises(ValueError):
            J12.total_derivative(P("z2"))
        assert J12.total_derivative(P("z2"), truncate=True) == P("0")

    def test_leibniz(self):
        a, b = P("x*y0"), P("z0 + z1^2")
        D = J12.total_derivative
        assert D(a * b) == D(a) * b + a * D(b)


class TestVectorField:
    def test_apply(self):
        v = F(x="1", y0="y1")
        assert v.apply(P("x^2*y0")) == P("2*x*y0 + x^2*y1")

    def test_bracket_antisymmetry(self):
        a = F(x="y0", z1="x*z2")
        b = F(y0="z0", z2="1")
        assert (a.bracket(b) + b.bracket(a)).is_zero()

    def test_bracket_jacobi(self):
        a = F(x="y0")
        b = F(y0="x^2")
        c = F(z0="y1", y1="z1")
        total = (a.bracket(b).bracket(c) + b.bracket(c).bracket(a)
                 + c.bracket(a).bracket(b))
        assert total.is_zero()


class TestProlong:
    def test_translation_prolongs_to_itself(self):
        base = JetSpace(0, 0)
        dx = VectorField(base, {"x": Poly.const(base.table, 1)})
        assert prolong(dx, J12) == F(x="1")

    def test_contact_prolongation_of_scaling(self):
        base = JetSpace(0, 0)
        v = VectorField(base, {"x": Poly.var(base.table, "x")})
        lifted = prolong(v, J12)
        assert lifted == F(x="x", y1="-y1", z1="-z1", z2="-2*z2")

    def test_prolongation_respects_brackets(self):
        base = JetSpace(0, 0)
        tbl = base.table
        a = VectorField(base, {"x": parse_poly("x^2", tbl),
                               "y0": parse_poly("x*y0", tbl)})
        b = VectorField(base, {"x": parse_poly("1", tbl)})
        left = prolong(a, J12).bracket(prolong(b, J12))
        right = prolong(a.bracket(b), J12)
        assert left == right


class TestGFamily:
    def test_small_values(self):
        g01 = g_function(0, 1)
        assert g01 == parse_poly("z0", g01.table)
        g11 = g_function(1, 1)
        assert g11 == parse_poly("1/2*x*z1 + -1/2*z0", g11.table)

    def test_derivative_vanishes_above_order(self):
        assert g_function(2, 1, 3).is_zero()
        assert not g_function(2, 1, 2).is_zero()

    def test_identity_residual_zero(self):
        for i in range(1, 5):
            for j in range(1, 5):
                assert g_identity_residual(i, j).is_zero()


class TestFlatSolutions:
    def test_kernel_dimension(self):
        for r in (2, 3, 4):
            sub, _, _ = flat_solution_space(1, 0, r)
            assert sub.dim == r + 3

    def test_solution_vectors_are_solutions(self):
        sub, monos, space = flat_solution_space(1, 0, 2)
        tbl = space.table
        for vec in sub.basis.entries:
            f = Poly.zero(tbl)
            for mono, c in zip(monos, vec):
                f = f + Poly.monomial(tbl, mono, c)
            ddf = space.total_derivative(
                space.total_derivative(f, truncate=True), truncate=True)
            assert ddf.is_zero()
            assert not f.depends_on("z3")

    def test_poly_span_subspace(self):
        sub, monos, space = flat_solution_space(1, 0, 2)
        tbl = space.table
        one = Poly.const(tbl, 1)
        x = Poly.var(tbl, "x")
        gs = [g_function(2, 2, s).embed(tbl) for s in range(3)]
        span = poly_span_subspace([one, x] + gs, monos)
        assert span.dim == 5
        assert span == sub
