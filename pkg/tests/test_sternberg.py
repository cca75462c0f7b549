"""Matrix-algebra prolongation: the flag-symbol algebra, its explicit
description for (2,3), the polynomial-field prolongation, the transpose
phenomenon, and the intersection-formula cross-check."""

import pytest

from mixedsym.eds import StabilizationError, TableauSpec, solve_determining
from mixedsym.exact import ExactMatrix, Subspace, ZERO, qq
from mixedsym.sternberg import (build_symbol, flag_symbol_prolong,
                                intersection_layer, sternberg_prolong,
                                transpose_algebra)
from mixedsym.tanaka import build_gnla, stab, tanaka_prolong


def flag(spec):
    return flag_symbol_prolong(build_symbol(spec))


class TestSymbol:
    def test_shift_operator_degree(self):
        sym = build_symbol(TableauSpec(2, 3, 0))
        assert sym.degrees == (-3, -2) + (-3, -2, -1)

    def test_second_kind_degrees(self):
        sym = build_symbol(TableauSpec(2, 3, 1))
        assert sym.degrees == (-2, -1) + (-3, -2, -1)


class TestFlagSymbolProlong:
    def test_dimensions_23(self):
        assert flag(TableauSpec(2, 3, 0)).dim() == 7
        assert flag(TableauSpec(2, 3, 1)).dim() == 7

    def test_negative_part_is_the_shift_line(self):
        a = flag(TableauSpec(2, 3, 0))
        assert a.layer_dims()[-1] == 1

    def test_explicit_family_for_second_kind_23(self):
        """The degree-graded matrix algebra of the (2,3) second-kind flag
        equals the 7-parameter block family (sl2 in both blocks, two
        scalings, and an off-diagonal intertwiner), after reversing the
        within-tower basis order and rescaling the middle coordinate."""
        a = flag(TableauSpec(2, 3, 1))

        def family(s, b, c, e1, e2, p, q):
            rows = [[s + e1, c, p, q, 0],
                    [b, -s + e1, 0, p, q],
                    [0, 0, 2 * s + e2, 2 * c, 0],
                    [0, 0, b, e2, c],
                    [0, 0, 0, 2 * b, -2 * s + e2]]
            return ExactMatrix([[qq(v) for v in r] for r in rows])

        perm = [1, 0, 4, 3, 2]
        d = [qq(1), qq(1), qq(1, 2), qq(1), qq(1)]
        T = ExactMatrix([[d[i] if perm[i] == j else ZERO
                          for j in range(5)] for i in range(5)])
        Tinv = ExactMatrix([[qq(1) / d[j] if perm[j] == i else ZERO
                             for j in range(5)] for i in range(5)])
        gens = []
        for t in range(7):
            params = [0] * 7
            params[t] = 1
            gens.append(T.matmul(family(*params)).matmul(Tinv))
        # every family generator lies in the computed algebra ...
        for g in gens:
            assert a.contains(g)
        # ... and the computed algebra lies in the family span
        def flat(m):
            return [m.entries[i][j] for i in range(5) for j in range(5)]
        span = Subspace.from_vectors(25, [flat(g) for g in gens])
        assert span.dim == 7
        for _, mat in a.basis_matrices():
            assert span.contains(flat(mat))


class TestSternbergProlong:
    def test_layer_dims_23(self):
        p = sternberg_prolong(flag(TableauSpec(2, 3, 0)))
        assert p.layer_dims() == {-1: 5, 0: 7, 1: 3}
        assert p.dim() == 15

    def test_graded_dims_match_tanaka(self):
        for spec in (TableauSpec(2, 3, 0), TableauSpec(2, 3, 1),
                     TableauSpec(2, 4, 2)):
            p = sternberg_prolong(flag(spec))
            m = build_gnla(spec)
            g = tanaka_prolong(m, stab(m, [m.d_line()]))
            assert p.graded_dims() == g.layer_dims()

    @pytest.mark.parametrize("l", [3, 4, 5])
    def test_vanishing_degree_for_k2(self, l):
        p = sternberg_prolong(flag(TableauSpec(2, l, 0)))
        dims = p.layer_dims()
        assert dims.get(l - 2, 0) > 0
        assert dims.get(l - 1, 0) == 0
        assert p.terminated

    def test_divergent_input_raises(self):
        # gl(V) prolongs indefinitely: the cap must trip
        n = 2
        vecs = []
        for p in range(n):
            for q in range(n):
                v = [ZERO] * (n * n)
                v[p * n + q] = qq(1)
                vecs.append(v)
        from mixedsym.sternberg import GradedMatrixAlgebra
        gl = GradedMatrixAlgebra(
            n, {0: Subspace.from_vectors(n * n, vecs)}, v_degrees=(0, 0))
        with pytest.raises(StabilizationError):
            sternberg_prolong(gl, max_degree=3)

    def test_algebra_matches_solver(self):
        spec = TableauSpec(2, 4, 1)
        p = sternberg_prolong(flag(spec))
        assert p.dim() == solve_determining(spec).dim
        assert p.to_lie_algebra().dim == p.dim()


class TestTranspose:
    def test_same_dimension_different_invariants(self):
        a = flag(TableauSpec(2, 3, 0))
        p = sternberg_prolong(a)
        pt = sternberg_prolong(transpose_algebra(a))
        assert p.dim() == pt.dim() == 15
        ia = p.to_lie_algebra().invariants()
        ib = pt.to_lie_algebra().invariants()
        assert ia != ib
        assert {ia.killing_rank, ib.killing_rank} == {9, 11}


class TestIntersectionFormula:
    @pytest.mark.parametrize("spec", [TableauSpec(2, 3, 0),
                                      TableauSpec(2, 4, 2)])
    def test_agrees_with_layer_recursion(self, spec):
        a = flag(spec)
        p = sternberg_prolong(a)
        for i in (1, 2):
            assert intersection_layer(a, i) == p.layer_dims().get(i, 0)
