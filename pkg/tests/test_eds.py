"""Shift structures on the equation chart: the determining solver, the
closed-form bases, and derived flags of perturbed systems."""

import pytest

from mixedsym.eds import (NonlinearSystem, TableauSpec, UncoveredCaseError,
                          build_eds, derived_flag, is_symmetry, known_basis,
                          solve_determining)
from mixedsym.exact import Subspace, ZERO
from mixedsym.jet import JetSpace
from mixedsym.poly import parse_poly

# spot-check dimensions frozen from independent runs of all three methods
FROZEN_DIMS = {
    (2, 2, 0): 15,
    (2, 3, 0): 15, (2, 3, 1): 15,
    (2, 4, 0): 19, (2, 4, 1): 11, (2, 4, 2): 14,
    (2, 5, 0): 24, (2, 5, 1): 12, (2, 5, 3): 16,
    (3, 3, -1): 21, (3, 3, 0): 13, (3, 3, 1): 21,
    (3, 4, -1): 31, (3, 4, 0): 14, (3, 4, 2): 24,
    (4, 4, -2): 44, (4, 4, 0): 15,
}


def span_of(fields):
    keys = sorted({(c, m) for f in fields
                   for c, p in f.coeffs.items() for m in p.terms})
    index = {key: i for i, key in enumerate(keys)}
    vecs = []
    for f in fields:
        v = [ZERO] * len(keys)
        for c, p in f.coeffs.items():
            for m, coef in p.terms.items():
                v[index[(c, m)]] = coef
        vecs.append(v)
    return Subspace.from_vectors(len(keys), vecs)


class TestTableauSpec:
    def test_shift_range_enforced(self):
        with pytest.raises(ValueError):
            TableauSpec(2, 3, 2)
        with pytest.raises(ValueError):
            TableauSpec(3, 3, -2)
        with pytest.raises(ValueError):
            TableauSpec(1, 3, 0)

    def test_kind_labels(self):
        assert TableauSpec(2, 3, 0).kind == "first"
        assert TableauSpec(2, 3, 1).kind == "second"

    def test_projection_chain(self):
        assert TableauSpec(2, 3, 1).projection_chain() == [(1, 2), (0, 1)]
        assert TableauSpec(3, 4, 2).projection_chain() == [(1, 3), (0, 2)]

    def test_tableau_rows(self):
        art = TableauSpec(2, 3, 1).ascii_tableau()
        lines = art.splitlines()
        assert len(lines) == 2
        assert lines[0].count("[ ]") == 3
        assert lines[1].count("[ ]") == 2


class TestDeterminingSolver:
    @pytest.mark.parametrize("k,l,d", sorted(FROZEN_DIMS))
    def test_frozen_dimensions(self, k, l, d):
        sol = solve_determining(TableauSpec(k, l, d))
        assert sol.dim == FROZEN_DIMS[(k, l, d)]

    def test_headline_graded_dims(self):
        sol = solve_determining(TableauSpec(2, 3, 0))
        assert sol.graded_dims() == {-3: 2, -2: 2, -1: 2, 0: 4,
                                     1: 2, 2: 1, 3: 2}

    def test_solutions_are_symmetries(self):
        for spec in (TableauSpec(2, 3, 0), TableauSpec(2, 4, 1),
                     TableauSpec(3, 3, -1)):
            eds = build_eds(spec)
            sol = solve_determining(spec)
            for f in sol.fields:
                ok, why = is_symmetry(f, eds)
                assert ok, why

    def test_closes_as_lie_algebra(self):
        alg = solve_determining(TableauSpec(2, 4, 2)).to_lie_algebra()
        assert alg.dim == 14


class TestKnownBasis:
    @pytest.mark.parametrize("spec", [
        TableauSpec(2, 3, 0), TableauSpec(2, 3, 1),
        TableauSpec(2, 5, 0), TableauSpec(2, 5, 2), TableauSpec(2, 5, 3),
        TableauSpec(3, 3, -1), TableauSpec(3, 3, 1),
        TableauSpec(3, 4, 0), TableauSpec(3, 4, 1),
        TableauSpec(4, 5, -2),
    ], ids=repr)
    def test_fields_are_independent_symmetries(self, spec):
        fields = known_basis(spec)
        eds = build_eds(spec)
        for f in fields:
            ok, why = is_symmetry(f, eds)
            assert ok, why
        assert span_of(fields).dim == len(fields)

    @pytest.mark.parametrize("spec", [
        TableauSpec(2, 3, 0), TableauSpec(2, 3, 1), TableauSpec(2, 4, 2),
        TableauSpec(3, 3, 1), TableauSpec(3, 4, -1),
    ], ids=repr)
    def test_spans_the_full_symmetry_algebra(self, spec):
        fields = known_basis(spec)
        sol = solve_determining(spec)
        assert len(fields) == sol.dim
        assert span_of(fields + sol.fields).dim == sol.dim

    def test_equal_order_mirror(self):
        # swapping the towers maps shift +1 onto shift -1
        assert len(known_basis(TableauSpec(3, 3, 1))) == \
            len(known_basis(TableauSpec(3, 3, -1))) == 21

    def test_uncovered_case_raises(self):
        with pytest.raises(UncoveredCaseError):
            known_basis(TableauSpec(3, 3, 0))


class TestDerivedFlag:
    def ranks(self, k, l, f_text, g_text="0"):
        space = JetSpace(k - 1, l - 1)
        f = parse_poly(f_text, space.table)
        g = parse_poly(g_text, space.table)
        return [r for r, _ in derived_flag(NonlinearSystem(k, l, f=f, g=g))]

    def test_trivial_system(self):
        assert self.ranks(2, 4, "0") == [4, 2, 1]

    def test_branching_on_top_derivative(self):
        assert self.ranks(2, 4, "z3^2") == [4, 2, 0]

    def test_lower_order_perturbation(self):
        assert self.ranks(2, 4, "y1*z2") == [4, 2, 1]
