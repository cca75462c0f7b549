"""Graded nilpotent symbols and their prolongation with the degree-0
part prescribed as the stabilizer of the line through D."""

import pytest

from mixedsym.eds import TableauSpec, solve_determining
from mixedsym.tanaka import (GradedNilpotent, build_gnla, der0, stab,
                             tanaka_prolong)


def prolongation(spec):
    m = build_gnla(spec)
    return tanaka_prolong(m, stab(m, [m.d_line()]))


class TestSymbol:
    def test_first_kind_23_layers(self):
        m = build_gnla(TableauSpec(2, 3, 0))
        assert m.layer_dims() == {-3: 2, -2: 2, -1: 2}
        assert not m.is_fundamental()

    def test_second_kind_23_layers(self):
        m = build_gnla(TableauSpec(2, 3, 1))
        assert m.layer_dims() == {-3: 1, -2: 2, -1: 3}
        assert m.is_fundamental()

    def test_depth(self):
        assert build_gnla(TableauSpec(2, 5, 0)).depth == 5
        assert build_gnla(TableauSpec(3, 4, 1)).depth == 4


class TestProlongation:
    def test_first_kind_23_graded_dims(self):
        g = prolongation(TableauSpec(2, 3, 0))
        assert g.layer_dims() == {-3: 2, -2: 2, -1: 2, 0: 4, 1: 2, 2: 1, 3: 2}
        assert g.dim == 15

    def test_second_kind_23_graded_dims(self):
        g = prolongation(TableauSpec(2, 3, 1))
        assert g.layer_dims() == {-3: 1, -2: 2, -1: 3, 0: 4, 1: 3, 2: 1, 3: 1}
        assert g.dim == 15

    @pytest.mark.parametrize("k,l,d", [
        (2, 4, 0), (2, 4, 1), (2, 4, 2),
        (3, 3, -1), (3, 4, 0), (3, 5, 2), (4, 4, -2),
    ])
    def test_matches_determining_solver(self, k, l, d):
        spec = TableauSpec(k, l, d)
        sol = solve_determining(spec)
        g = prolongation(spec)
        assert g.dim == sol.dim
        assert g.layer_dims() == sol.graded_dims()

    def test_algebra_assembles(self):
        alg = prolongation(TableauSpec(2, 3, 1)).algebra()
        assert alg.dim == 15
        assert alg.invariants().killing_rank == 11

    def test_stabilizer_strictly_smaller_than_derivations(self):
        m = build_gnla(TableauSpec(2, 3, 0))
        assert len(stab(m, [m.d_line()])) < len(der0(m))
