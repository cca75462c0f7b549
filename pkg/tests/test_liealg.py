"""Structure-constant Lie algebras: Jacobi checking, invariants, the
basis-independence of invariants, and construction from vector fields."""

import random

import pytest

from mixedsym.exact import ExactMatrix, qq, ZERO, ONE
from mixedsym.jet import JetSpace, VectorField
from mixedsym.liealg import (InvariantTuple, LieAlgebraSC, NotClosedError,
                             compare, from_vector_fields)
from mixedsym.poly import Poly, parse_poly


def sl2():
    # basis h, e, f with [h,e]=2e, [h,f]=-2f, [e,f]=h
    return LieAlgebraSC(3, {
        (0, 1): {1: qq(2)},
        (0, 2): {2: qq(-2)},
        (1, 2): {0: qq(1)},
    })


def heisenberg():
    return LieAlgebraSC(3, {(0, 1): {2: qq(1)}})


class TestConstruction:
    def test_jacobi_violation_rejected(self):
        with pytest.raises(ValueError):
            LieAlgebraSC(3, {(0, 1): {2: ONE}, (0, 2): {1: ONE},
                             (1, 2): {1: ONE}})

    def test_antisymmetric_normalization(self):
        a = LieAlgebraSC(2, {(1, 0): {0: ONE}})
        assert a.bracket_basis(0, 1) == {0: qq(-1)}


class TestInvariants:
    def test_sl2(self):
        inv = sl2().invariants()
        assert inv.dim == 3
        assert inv.killing_rank == 3
        assert inv.center_dim == 0
        assert inv.derived_series == (3,)
        assert inv.lower_central == (3,)

    def test_heisenberg(self):
        inv = heisenberg().invariants()
        assert inv.killing_rank == 0
        assert inv.center_dim == 1
        assert inv.derived_series == (3, 1, 0)
        assert inv.lower_central == (3, 1, 0)

    def test_compare_separates(self):
        verdict, details = compare(sl2(), heisenberg())
        assert verdict == "distinct"
        verdict, _ = compare(sl2(), sl2())
        assert verdict == "compatible"


def change_basis(alg, mat):
    """Structure constants of the same algebra in the basis given by the
    columns of an invertible rational matrix."""
    n = alg.dim
    rref, pivots = mat.rref()
    assert len(pivots) == n, "basis change must be invertible"
    cols = [mat.col(j) for j in range(n)]
    sc = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = alg.bracket(cols[i], cols[j])
            # express w in the new basis by solving mat * c = w
            aug = ExactMatrix([list(mat.row(r)) + [w[r]] for r in range(n)])
            red, piv = aug.rref()
            coeffs = {}
            for r, p in enumerate(piv):
                if p == n:
                    raise AssertionError("bracket left the span")
                if red.entries[r][n]:
                    coeffs[p] = red.entries[r][n]
            if coeffs:
                sc[(i, j)] = coeffs
    return LieAlgebraSC(n, sc)


def random_invertible(n, rng):
    while True:
        m = ExactMatrix([[qq(rng.randint(-3, 3)) for _ in range(n)]
                         for _ in range(n)])
        if m.rank() == n:
            return m


class TestBasisIndependence:
    def test_invariants_stable_under_basis_change(self):
        rng = random.Random(7)
        for alg in (sl2(), heisenberg()):
            base = alg.invariants()
            for _ in range(5):
                other = change_basis(alg, random_invertible(alg.dim, rng))
                assert other.invariants() == base


class TestFromVectorFields:
    def test_closed_family(self):
        space = JetSpace(0, None)
        tbl = space.table

        def f(**coeffs):
            return VectorField(space, {n: parse_poly(p, tbl)
                                       for n, p in coeffs.items()})

        # projective action on the line: d/dx, x d/dx, x^2 d/dx
        fields = [f(x="1"), f(x="x"), f(x="x^2")]
        alg = from_vector_fields(fields, grading={0: -1, 1: 0, 2: 1})
        assert alg.dim == 3
        assert alg.invariants().killing_rank == 3
        assert alg.graded_dims() == ((-1, 1), (0, 1), (1, 1))

    def test_not_closed_rejected(self):
        space = JetSpace(0, None)
        tbl = space.table
        fields = [VectorField(space, {"x": parse_poly("1", tbl)}),
                  VectorField(space, {"x": parse_poly("x^3", tbl)})]
        with pytest.raises(NotClosedError):
            from_vector_fields(fields)
