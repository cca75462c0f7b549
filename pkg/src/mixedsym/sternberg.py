"""Graded symbol (V, X), its flag prolongation inside gl(V), matrix
transposition, and the prolongation to polynomial vector fields on V.

The symbol space V carries the tableau grading of a mixed-order system:
one basis vector per tableau box, with the shift operator X moving every
box one column to the left.  The largest graded subalgebra of gl(V) with
negative part <X> prolongs, inside the algebra of polynomial vector
fields on V, to a finite-dimensional Lie algebra that can be compared
against the other two computation routes.
"""

from __future__ import annotations

from functools import lru_cache

from .exact import (ExactMatrix, Subspace, ZERO, ONE, qq)
from .poly import Poly, VarTable
from .jet import VectorField
from .eds import TableauSpec, StabilizationError
from .liealg import LieAlgebraSC, from_vector_fields


class AffineChart:
    """Plain affine coordinates (no jet structure) for vector fields."""

    __slots__ = ("table",)

    def __init__(self, names):
        self.table = VarTable(tuple(names))

    def __eq__(self, other):
        return isinstance(other, AffineChart) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "Chart(%s)" % ", ".join(self.table.names)


class GradedSymbol:
    """V = <e_0..e_{k-1}, f_0..f_{l-1}> with tableau degrees and the
    degree -1 shift X: e_i -> e_{i-1}, f_j -> f_{j-1} (e_0, f_0 -> 0)."""

    __slots__ = ("spec", "n", "names", "degrees", "X")

    def __init__(self, spec: TableauSpec):
        k, l = spec.k, spec.l
        self.spec = spec
        self.n = k + l
        self.names = tuple(["e%d" % i for i in range(k)]
                           + ["f%d" % j for j in range(l)])
        self.degrees = tuple(spec.y_degrees() + spec.z_degrees())
        rows = [[ZERO] * self.n for _ in range(self.n)]
        for i in range(1, k):
            rows[i - 1][i] = ONE
        for j in range(1, l):
            rows[k + j - 1][k + j] = ONE
        self.X = ExactMatrix(rows)
        for p in range(self.n):
            for q in range(self.n):
                if rows[p][q] and self.degrees[p] != self.degrees[q] - 1:
                    raise AssertionError("shift operator is not degree -1")
        power = self.X
        for _ in range(max(k, l) - 1):
            power = power.matmul(self.X)
        if any(any(row) for row in power.entries):
            raise AssertionError("shift operator is not nilpotent")

    def __repr__(self):
        return "GradedSymbol(%r)" % (self.spec,)


def build_symbol(spec: TableauSpec) -> GradedSymbol:
    return GradedSymbol(spec)


def _flat(matrix: ExactMatrix):
    return [v for row in matrix.entries for v in row]


def _unflat(vec, n) -> ExactMatrix:
    return ExactMatrix([list(vec[r * n:(r + 1) * n]) for r in range(n)])


def _comm(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    ab = a.matmul(b).entries
    ba = b.matmul(a).entries
    return ExactMatrix([[x - y for x, y in zip(r1, r2)]
                        for r1, r2 in zip(ab, ba)])


class GradedMatrixAlgebra:
    """Graded subalgebra of gl(n): degree -> Subspace of flattened
    matrices.  Closure [a_i, a_j] <= a_{i+j} is verified on build."""

    def __init__(self, n, layers, v_degrees=None, names=None, check=True):
        self.n = n
        self.layers = {d: s for d, s in layers.items() if s.dim}
        self.v_degrees = tuple(v_degrees) if v_degrees is not None else None
        self.names = tuple(names) if names is not None else None
        if check:
            self._check_closure()

    def _check_closure(self):
        items = sorted(self.layers.items())
        for di, si in items:
            for dj, sj in items:
                if dj < di:
                    continue
                target = self.layers.get(di + dj)
                for u in si.basis.entries:
                    for v in sj.basis.entries:
                        c = _flat(_comm(_unflat(u, self.n),
                                        _unflat(v, self.n)))
                        if any(c):
                            if target is None or not target.contains(c):
                                raise AssertionError(
                                    "matrix layers %d, %d not closed"
                                    % (di, dj))

    def dim(self):
        return sum(s.dim for s in self.layers.values())

    def layer_dims(self):
        return {d: s.dim for d, s in sorted(self.layers.items())}

    def basis_matrices(self):
        """List of (degree, ExactMatrix) over all layers."""
        out = []
        for d, s in sorted(self.layers.items()):
            for v in s.basis.entries:
                out.append((d, _unflat(v, self.n)))
        return out

    def contains(self, matrix: ExactMatrix):
        """Membership of an arbitrary matrix in the sum of all layers."""
        vecs = []
        for s in self.layers.values():
            vecs.extend(s.basis.entries)
        total = Subspace.from_vectors(self.n * self.n, vecs)
        return total.contains(_flat(matrix))

    def __repr__(self):
        return "GradedMatrixAlgebra(n=%d, dims=%r)" % (self.n,
                                                       self.layer_dims())


def flag_symbol_prolong(sym: GradedSymbol) -> GradedMatrixAlgebra:
    """Largest graded subalgebra of gl(V) with negative part <X>:
    a_{-1} = <X>, a_i = {u in gl_i(V) | [u, X] in a_{i-1}} for i >= 0."""
    n = sym.n
    deg = sym.degrees
    nn = n * n
    layers = {-1: Subspace.from_vectors(nn, [_flat(sym.X)])}
    top = max(deg) - min(deg)
    for d in range(0, top + 1):
        slots = [(p, q) for p in range(n) for q in range(n)
                 if deg[p] - deg[q] == d]
        if not slots:
            continue
        prev = layers.get(d - 1)
        resid = (prev.membership_residual_rows() if prev is not None
                 else [r for r in ExactMatrix.identity(nn).entries])
        # columns: commutator [E_pq, X] flattened, one per slot
        cols = []
        for (p, q) in slots:
            u = [[ZERO] * n for _ in range(n)]
            u[p][q] = ONE
            cols.append(_flat(_comm(ExactMatrix(u), sym.X)))
        rows = []
        for er in resid:
            row = [sum((er[t] * col[t] for t in range(nn) if er[t] and col[t]),
                       ZERO) for col in cols]
            if any(row):
                rows.append(row)
        if rows:
            ker = ExactMatrix(rows).kernel()
        else:
            ker = Subspace.full(len(slots))
        if not ker.dim:
            continue
        vecs = []
        for kv in ker.basis.entries:
            v = [ZERO] * nn
            for c, (p, q) in zip(kv, slots):
                v[p * n + q] = c
            vecs.append(v)
        layers[d] = Subspace.from_vectors(nn, vecs)
    return GradedMatrixAlgebra(n, layers, v_degrees=deg, names=sym.names)


def transpose_algebra(a: GradedMatrixAlgebra) -> GradedMatrixAlgebra:
    """Entrywise transpose of every layer; the grading negates."""
    n = a.n
    layers = {}
    for d, s in a.layers.items():
        vecs = [_flat(_unflat(v, n).transpose()) for v in s.basis.entries]
        layers[-d] = Subspace.from_vectors(n * n, vecs)
    return GradedMatrixAlgebra(n, layers, v_degrees=a.v_degrees,
                               names=a.names)


# ---------------------------------------------------------------------------
# prolongation to polynomial vector fields on V
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _weighted_monos(degs, total, wsum):
    """Exponent tuples m (over len(degs) variables) with sum(m) == total
    and sum(m_q * degs_q) == wsum."""
    if not degs:
        return ((),) if total == 0 and wsum == 0 else ()
    out = []
    d0 = degs[0]
    rest = degs[1:]
    for e in range(total + 1):
        for tail in _weighted_monos(rest, total - e, wsum - e * d0):
            out.append((e,) + tail)
    return tuple(out)


@lru_cache(maxsize=None)
def _layer_keys(degs, polydeg, weight):
    """Canonical (component, monomial) pairs for fields of the given
    polynomial degree and weight.  Field weight of m*d/dx_p is
    deg(p) - sum_q m_q deg(q)."""
    keys = []
    for p, dp in enumerate(degs):
        for m in _weighted_monos(degs, polydeg, dp - weight):
            keys.append((p, m))
    return tuple(keys)


class SternbergProlongation:
    """Layers of the prolongation, realized as polynomial vector fields."""

    def __init__(self, algebra, chart, degs, layers, fields, terminated):
        self.algebra = algebra
        self.chart = chart
        self.v_degrees = degs
        self.layers = layers          # layer index -> {weight: Subspace}
        self.fields = fields          # list of (layer, weight, VectorField)
        self.terminated = terminated

    def dim(self):
        return len(self.fields)

    def layer_dims(self):
        out = {}
        for d, comp in sorted(self.layers.items()):
            out[d] = sum(s.dim for s in comp.values())
        return {d: v for d, v in out.items() if v}

    def graded_dims(self):
        """Dimensions by field weight (the grading shared with the
        nilpotent-symbol route)."""
        out = {}
        for _, w, _f in self.fields:
            out[w] = out.get(w, 0) + 1
        return dict(sorted(out.items()))

    def to_lie_algebra(self) -> LieAlgebraSC:
        grading = {i: w for i, (_, w, _f) in enumerate(self.fields)}
        return from_vector_fields([f for _, _, f in self.fields],
                                  grading=grading)

    def __repr__(self):
        return "SternbergProlongation(dim=%d, layers=%r)" % (
            self.dim(), self.layer_dims())


def _field_from_keyvec(chart, keys, vec) -> VectorField:
    tbl = chart.table
    coeffs = {}
    for c, (p, m) in zip(vec, keys):
        if c:
            name = tbl.names[p]
            coeffs.setdefault(name, {})[m] = (
                coeffs.get(name, {}).get(m, ZERO) + c)
    return VectorField(chart, {name: Poly(tbl, terms)
                               for name, terms in coeffs.items()})


def sternberg_prolong(a: GradedMatrixAlgebra, max_degree=None,
                      v_degrees=None) -> SternbergProlongation:
    """Prolong g_{-1} = V, g_0 = a inside polynomial vector fields:
    g_{i+1} = fields of degree i+2 whose partial derivative in every
    coordinate direction lies in g_i.

    Each layer splits by field weight (additive under brackets), so the
    linear systems stay small.  Stops at the first zero layer -- all
    higher layers then vanish -- and reports divergence if the cap is
    reached first.
    """
    n = a.n
    degs = tuple(v_degrees if v_degrees is not None
                 else (a.v_degrees if a.v_degrees is not None
                       else (0,) * n))
    if len(degs) != n:
        raise ValueError("v_degrees length mismatch")
    names = a.names if a.names is not None else tuple(
        "v%d" % i for i in range(n))
    chart = AffineChart(names)
    cap = max_degree if max_degree is not None else n

    layers = {}
    # degree -1: the constant fields, one weight class per V degree
    comp = {}
    for w in sorted(set(degs)):
        keys = _layer_keys(degs, 0, w)
        vecs = []
        for p, dp in enumerate(degs):
            if dp != w:
                continue
            v = [ZERO] * len(keys)
            v[keys.index((p, (0,) * n))] = ONE
            vecs.append(v)
        comp[w] = Subspace.from_vectors(len(keys), vecs)
    layers[-1] = comp

    # degree 0: the matrix algebra as linear fields
    comp = {}
    for d, s in sorted(a.layers.items()):
        keys = _layer_keys(degs, 1, d)
        kindex = {key: t for t, key in enumerate(keys)}
        vecs = []
        for mv in s.basis.entries:
            v = [ZERO] * len(keys)
            for p in range(n):
                for q in range(n):
                    c = mv[p * n + q]
                    if not c:
                        continue
                    mono = tuple(1 if t == q else 0 for t in range(n))
                    if (p, mono) not in kindex:
                        raise ValueError(
                            "matrix layer %d not homogeneous for the "
                            "V grading" % d)
                    v[kindex[(p, mono)]] = c
            vecs.append(v)
        if vecs:
            comp[d] = Subspace.from_vectors(len(keys), vecs)
    layers[0] = comp

    i = 1
    while True:
        comp = _prolong_layer(n, degs, layers[i - 1], i)
        if not comp:
            terminated = True
            break
        if i > cap:
            raise StabilizationError(
                "prolongation still nonzero at degree %d (cap %d); "
                "layer dims so far: %r"
                % (i, cap, {d: sum(s.dim for s in c.values())
                            for d, c in sorted(layers.items())}))
        layers[i] = comp
        i += 1

    fields = []
    for d, comp in sorted(layers.items()):
        for w, s in sorted(comp.items()):
            keys = _layer_keys(degs, d + 1, w)
            for vec in s.basis.entries:
                fields.append((d, w, _field_from_keyvec(chart, keys, vec)))
    return SternbergProlongation(a, chart, degs, layers, fields, terminated)


def _prolong_layer(n, degs, prev, i):
    """Weight components of layer i from layer i-1: fields T of
    polynomial degree i+1 with dT/dx_q in the previous layer for all q."""
    polydeg = i + 1
    candidates = sorted({w - degs[q] for w in prev for q in range(n)})
    comp = {}
    for w in candidates:
        keys = _layer_keys(degs, polydeg, w)
        if not keys:
            continue
        kpos = {key: t for t, key in enumerate(keys)}
        rows = []
        ok = True
        for q in range(n):
            wt = w + degs[q]
            pkeys = _layer_keys(degs, polydeg - 1, wt)
            ppos = {key: t for t, key in enumerate(pkeys)}
            # derivative map: columns over keys, rows over pkeys
            dmat = [[ZERO] * len(keys) for _ in pkeys]
            nonzero = False
            for t, (p, m) in enumerate(keys):
                if m[q]:
                    tgt = (p, tuple(e - 1 if u == q else e
                                    for u, e in enumerate(m)))
                    dmat[ppos[tgt]][t] = qq(m[q])
                    nonzero = True
            if not nonzero:
                continue
            sub = prev.get(wt)
            if sub is None or not sub.dim:
                rows.extend(r for r in dmat if any(r))
                continue
            for er in sub.membership_residual_rows():
                row = [sum((er[s] * dmat[s][t] for s in range(len(pkeys))
                            if er[s] and dmat[s][t]), ZERO)
                       for t in range(len(keys))]
                if any(row):
                    rows.append(row)
        if rows:
            ker = ExactMatrix(rows).kernel()
        else:
            ker = Subspace.full(len(keys))
        if ker.dim:
            comp[w] = ker
    return comp


def intersection_layer(a: GradedMatrixAlgebra, i, v_degrees=None):
    """Layer i of the prolongation by the intersection formula
    S^{i+1}(V*) (x) V  with  S^i(V*) (x) a, met inside polynomial
    matrices of degree i; computed with Subspace.intersect as an
    independent cross-check of the layer recursion.  Returns the
    dimension."""
    n = a.n
    if i < 1:
        raise ValueError("the intersection formula applies to layers >= 1")
    degs = tuple(v_degrees if v_degrees is not None
                 else (a.v_degrees if a.v_degrees is not None
                       else (0,) * n))
    monos = _weighted_monos((0,) * n, i, 0)
    mpos = {m: t for t, m in enumerate(monos)}
    amb = len(monos) * n * n

    def slot(m, p, q):
        return (mpos[m] * n + p) * n + q

    # Jacobians of polynomial fields of degree i+1
    jvecs = []
    for p in range(n):
        for m in _weighted_monos((0,) * n, i + 1, 0):
            v = [ZERO] * amb
            for q in range(n):
                if m[q]:
                    mm = tuple(e - 1 if u == q else e for u, e in enumerate(m))
                    v[slot(mm, p, q)] = qq(m[q])
            jvecs.append(v)
    jac = Subspace.from_vectors(amb, jvecs)

    # monomial multiples of the matrix algebra
    avecs = []
    for _, mat in a.basis_matrices():
        flat = _flat(mat)
        for m in monos:
            v = [ZERO] * amb
            for p in range(n):
                for q in range(n):
                    c = flat[p * n + q]
                    if c:
                        v[slot(m, p, q)] = c
            avecs.append(v)
    asub = Subspace.from_vectors(amb, avecs)
    return jac.intersect(asub).dim
