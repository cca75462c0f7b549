"""Finite-dimensional Lie algebras over Q given by structure constants,
construction from a closed family of polynomial vector fields, and
isomorphism-grade invariants."""

from __future__ import annotations

from .exact import (ExactMatrix, NOT_IN_SPAN, Subspace, ZERO, qq,
                    solve_in_span)


class LieAlgebraSC:
    """Lie algebra on basis e_0..e_{n-1} with sparse structure constants.

    sc maps (i, j) with i < j to a dict {m: coefficient} so that
    [e_i, e_j] = sum_m c_m e_m.  Antisymmetry is implicit; the Jacobi
    identity is verified at construction.
    """

    def __init__(self, dim, sc, grading=None, check=True):
        self.dim = dim
        self.sc = {}
        for (i, j), row in sc.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError("basis index out of range")
            if i == j:
                if any(row.values()):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            if i > j:
                i, j = j, i
                row = {m: -c for m, c in row.items()}
            clean = {m: qq(c) for m, c in row.items() if c}
            if clean:
                self.sc[(i, j)] = clean
        self.grading = dict(grading) if grading else None
        if check:
            self._check_jacobi()

    def bracket_basis(self, i, j):
        if i == j:
            return {}
        if i < j:
            return dict(self.sc.get((i, j), {}))
        return {m: -c for m, c in self.sc.get((j, i), {}).items()}

    def bracket(self, u, v):
        """Bracket of coefficient vectors (length-dim lists)."""
        out = [ZERO] * self.dim
        for (i, j), row in self.sc.items():
            w = u[i] * v[j] - u[j] * v[i]
            if w:
                for m, c in row.items():
                    out[m] += w * c
        return out

    def _check_jacobi(self):
        for i in range(self.dim):
            ei = self._unit(i)
            for j in range(i + 1, self.dim):
                ej = self._unit(j)
                bij = self.bracket(ei, ej)
                for m in range(j + 1, self.dim):
                    em = self._unit(m)
                    acc = self.bracket(bij, em)
                    for a, c in enumerate(self.bracket(self.bracket(ej, em), ei)):
                        acc[a] += c
                    for a, c in enumerate(self.bracket(self.bracket(em, ei), ej)):
                        acc[a] += c
                    if any(acc):
                        raise ValueError(
                            "Jacobi identity fails on basis triple (%d,%d,%d)"
                            % (i, j, m))

    def _unit(self, i):
        v = [ZERO] * self.dim
        v[i] = qq(1)
        return v

    # -- derived data ------------------------------------------------------

    def bracket_subspaces(self, a: Subspace, b: Subspace) -> Subspace:
        vecs = [self.bracket(u, v)
                for u in a.basis.entries for v in b.basis.entries]
        return Subspace.from_vectors(self.dim, vecs)

    def derived_series_dims(self):
        cur = Subspace.full(self.dim)
        dims = [cur.dim]
        while True:
            nxt = self.bracket_subspaces(cur, cur)
            if nxt.dim == cur.dim:
                break
            cur = nxt
            dims.append(cur.dim)
        return tuple(dims)

    def lower_central_dims(self):
        full = Subspace.full(self.dim)
        cur = full
        dims = [cur.dim]
        while True:
            nxt = self.bracket_subspaces(full, cur)
            if nxt.dim == cur.dim:
                break
            cur = nxt
            dims.append(cur.dim)
        return tuple(dims)

    def center_dim(self):
        rows = []
        for i in range(self.dim):
            row_block = [[ZERO] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                for m, c in self.bracket_basis(i, j).items():
                    row_block[m][j] = c
            rows.extend(row_block)
        return ExactMatrix(rows).kernel().dim

    def killing_rank(self):
        ad = [self._ad_matrix(i) for i in range(self.dim)]
        kill = [[_trace_product(ad[i], ad[j]) for j in range(self.dim)]
                for i in range(self.dim)]
        return ExactMatrix(kill).rank()

    def _ad_matrix(self, i):
        m = [[ZERO] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for a, c in self.bracket_basis(i, j).items():
                m[a][j] = c
        return m

    def graded_dims(self):
        if self.grading is None:
            return None
        out = {}
        for i in range(self.dim):
            d = self.grading.get(i, 0)
            out[d] = out.get(d, 0) + 1
        return tuple(sorted(out.items()))

    def invariants(self):
        return InvariantTuple(
            dim=self.dim,
            derived_series=self.derived_series_dims(),
            lower_central=self.lower_central_dims(),
            center_dim=self.center_dim(),
            killing_rank=self.killing_rank(),
            graded=self.graded_dims(),
        )

    def __repr__(self):
        return "LieAlgebraSC(dim=%d)" % self.dim


def _trace_product(a, b):
    n = len(a)
    t = ZERO
    for i in range(n):
        for m in range(n):
            if a[i][m] and b[m][i]:
                t += a[i][m] * b[m][i]
    return t


class InvariantTuple:
    """Isomorphism-grade invariants; equality is necessary, not sufficient."""

    __slots__ = ("dim", "derived_series", "lower_central", "center_dim",
                 "killing_rank", "graded")

    def __init__(self, dim, derived_series, lower_central, center_dim,
                 killing_rank, graded):
        self.dim = dim
        self.derived_series = derived_series
        self.lower_central = lower_central
        self.center_dim = center_dim
        self.killing_rank = killing_rank
        self.graded = graded

    def _key(self):
        return (self.dim, self.derived_series, self.lower_central,
                self.center_dim, self.killing_rank)

    def __eq__(self, other):
        return isinstance(other, InvariantTuple) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def as_dict(self):
        d = {
            "dim": self.dim,
            "derived_series": list(self.derived_series),
            "lower_central": list(self.lower_central),
            "center_dim": self.center_dim,
            "killing_rank": self.killing_rank,
        }
        if self.graded is not None:
            d["graded_dims"] = {str(k): v for k, v in self.graded}
        return d

    def __repr__(self):
        return ("InvariantTuple(dim=%d, derived=%s, lower_central=%s, "
                "center=%d, killing_rank=%d)"
                % (self.dim, self.derived_series, self.lower_central,
                   self.center_dim, self.killing_rank))


def compare(a: LieAlgebraSC, b: LieAlgebraSC):
    """Return (verdict, details).  'distinct' certifies non-isomorphism;
    'compatible' only means no computed invariant separates them."""
    ia, ib = a.invariants(), b.invariants()
    verdict = "compatible" if ia == ib else "distinct"
    return verdict, {"left": ia.as_dict(), "right": ib.as_dict()}


class NotClosedError(ValueError):
    def __init__(self, i, j, residual):
        super().__init__(
            "bracket of generators %d and %d is outside the span" % (i, j))
        self.pair = (i, j)
        self.residual = residual


def from_vector_fields(fields, grading=None):
    """Structure constants of the span of the given vector fields.

    The fields must be linearly independent and closed under bracket;
    raises NotClosedError otherwise.  `grading` optionally maps basis
    index to an integer degree.
    """
    if not fields:
        raise ValueError("empty generating family")
    space = fields[0].space
    monomials = sorted({(name, mono)
                        for f in fields
                        for name, p in f.coeffs.items()
                        for mono in p.terms})
    index = {nm: i for i, nm in enumerate(monomials)}

    def coords(field):
        v = [ZERO] * len(monomials)
        for name, p in field.coeffs.items():
            for mono, c in p.terms.items():
                v[index[(name, mono)]] = c
        return v

    gen_matrix = ExactMatrix([coords(f) for f in fields])
    if gen_matrix.rank() != len(fields):
        raise ValueError("generating fields are linearly dependent")
    sc = {}
    for i, fi in enumerate(fields):
        for j in range(i + 1, len(fields)):
            br = fi.bracket(fields[j])
            tgt = [ZERO] * len(monomials)
            for name, p in br.coeffs.items():
                for mono, c in p.terms.items():
                    key = (name, mono)
                    if key not in index:
                        raise NotClosedError(i, j, br)
                    tgt[index[key]] = c
            sol = solve_in_span(tgt, gen_matrix)
            if sol is NOT_IN_SPAN:
                raise NotClosedError(i, j, br)
            row = {m: c for m, c in enumerate(sol) if c}
            if row:
                sc[(i, j)] = row
    return LieAlgebraSC(len(fields), sc, grading=grading)
