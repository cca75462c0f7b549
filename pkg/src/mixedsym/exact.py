"""Exact rational scalars and dense linear algebra over them.

Scalars are arbitrary-precision rationals (gmpy2.mpq when available,
fractions.Fraction otherwise).  Everything here is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is normally installed
    QQ = Fraction

ZERO = QQ(0)
ONE = QQ(1)


def qq(value, den=None):
    """Coerce to the rational scalar type. Accepts ints, 'p/q' strings."""
    if den is not None:
        return QQ(value, den)
    if isinstance(value, str):
        if "/" in value:
            p, q = value.split("/")
            return QQ(int(p), int(q))
        return QQ(int(value))
    return QQ(value)


def qq_str(value) -> str:
    """Render as 'p' or 'p/q' (lossless round-trip via qq)."""
    return str(value)


def _height(value) -> int:
    """Bit-size heuristic used for pivot selection."""
    return value.numerator.bit_length() + value.denominator.bit_length()


class ExactMatrix:
    """Dense matrix of exact rationals. Rows are lists; treat as immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [[QQ(e) for e in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def __repr__(self):
        return "ExactMatrix(%d x %d)" % (self.rows, self.cols)

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self):
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)]
                            for j in range(self.cols)])

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        ot = other.entries
        for row in self.entries:
            new = []
            for j in range(other.cols):
                acc = ZERO
                for c, a in enumerate(row):
                    if a:
                        acc += a * ot[c][j]
                new.append(acc)
            out.append(new)
        return ExactMatrix(out)

    def apply(self, vec):
        """Matrix-vector product."""
        if self.cols != len(vec):
            raise ValueError("shape mismatch")
        return [sum((a * v for a, v in zip(row, vec) if a), ZERO)
                for row in self.entries]

    def rref(self):
        """Reduced row echelon form.  Returns (ExactMatrix, pivot_columns).

        Within each column the pivot row is chosen by a bit-size height
        heuristic to damp coefficient growth.
        """
        m = [list(row) for row in self.entries]
        return _rref_inplace(m)

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Null space as a canonical Subspace of R^cols."""
        red, pivots = self.rref()
        red = red.entries
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        basis = []
        for f in free:
            vec = [ZERO] * self.cols
            vec[f] = ONE
            for r, p in enumerate(pivots):
                vec[p] = -red[r][f]
            basis.append(vec)
        return Subspace.from_vectors(self.cols, basis)


def _rref_inplace(m):
    """RREF of a list-of-lists matrix (consumed). Returns (ExactMatrix, pivots)."""
    if not m:
        return ExactMatrix([]), []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        best = -1
        best_h = None
        for i in range(r, n_rows):
            e = m[i][c]
            if e:
                h = _height(e)
                if best_h is None or h < best_h:
                    best, best_h = i, h
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        piv = m[r][c]
        if piv != ONE:
            inv = 1 / piv
            m[r] = [e * inv for e in m[r]]
        row_r = m[r]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                mi = m[i]
                for j in range(c, n_cols):
                    if row_r[j]:
                        mi[j] = mi[j] - f * row_r[j]
        pivots.append(c)
        r += 1
    return ExactMatrix(m[:r] + [[ZERO] * n_cols for _ in range(n_rows - r)]), pivots


def sparse_kernel(rows, ncols):
    """Null space of a sparse system; rows are {column: coefficient} dicts.

    Maintains a mutually reduced set of pivot rows (each pivot row has
    zeros in every other pivot column), so an incoming row is cleared in
    one pass over its pivot columns.  Pivot columns are chosen to touch
    as few existing rows as possible, which keeps fill-in low on the
    nearly disjoint systems produced by the determining equations.
    Returns a Subspace of R^ncols.
    """
    pivrows = {}   # pivot col -> reduced row dict (coefficient 1 at col)
    where = {}     # col -> set of pivot cols whose rows touch it
    seen = set()
    for row in rows:
        if not row:
            continue
        key = frozenset(row.items())
        if key in seen:
            continue
        seen.add(key)
        row = dict(row)
        for c in [c for c in row if c in pivrows]:
            f = row.pop(c, None)
            if not f:
                continue
            for j, v in pivrows[c].items():
                if j == c:
                    continue
                w = row.get(j)
                w = -f * v if w is None else w - f * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        row = {c: v for c, v in row.items() if v}
        if not row:
            continue
        piv = min(row, key=lambda c: (len(where.get(c, ())),
                                      _height(row[c]), c))
        inv = 1 / row[piv]
        row = {c: v * inv for c, v in row.items()}
        for other in list(where.get(piv, ())):
            orow = pivrows[other]
            f = orow.pop(piv, None)
            if not f:
                continue
            for j, v in row.items():
                if j == piv:
                    continue
                w = orow.get(j)
                w = -f * v if w is None else w - f * v
                if w:
                    orow[j] = w
                    where.setdefault(j, set()).add(other)
                else:
                    orow.pop(j, None)
                    s = where.get(j)
                    if s:
                        s.discard(other)
            s = where.get(piv)
            if s:
                s.discard(other)
        pivrows[piv] = row
        for j in row:
            where.setdefault(j, set()).add(piv)
    free = [c for c in range(ncols) if c not in pivrows]
    basis = []
    for f in free:
        vec = [ZERO] * ncols
        vec[f] = ONE
        for p, prow in pivrows.items():
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return Subspace.from_vectors(ncols, basis)


class Subspace:
    """Linear subspace of R^n with a canonical RREF basis.

    Two equal subspaces have identical representations, so equality is a
    plain data comparison.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis):
        self.ambient_dim = ambient_dim
        self.basis = basis  # ExactMatrix in RREF, no zero rows

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        if not vectors:
            return cls(ambient_dim, ExactMatrix.zero(0, ambient_dim))
        red, pivots = _rref_inplace([[QQ(e) for e in v] for v in vectors])
        return cls(ambient_dim, ExactMatrix(red.entries[:len(pivots)]))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, ExactMatrix.identity(ambient_dim))

    @property
    def dim(self):
        return self.basis.rows

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Subspace(dim %d of R^%d)" % (self.dim, self.ambient_dim)

    def contains(self, vec):
        return self.reduce(vec) is None

    def reduce(self, vec):
        """Reduce vec by the basis; None if it lies in the subspace,
        otherwise the nonzero residual."""
        vec = [QQ(e) for e in vec]
        rows = self.basis.entries
        pivots = _pivot_columns(rows)
        for row, p in zip(rows, pivots):
            if vec[p]:
                f = vec[p]
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        vec[j] = vec[j] - f * row[j]
        return None if all(e == 0 for e in vec) else vec

    def add(self, other):
        self._check(other)
        return Subspace.from_vectors(
            self.ambient_dim, self.basis.entries + other.basis.entries)

    def intersect(self, other):
        """Canonical intersection, via the kernel of [A^T | -B^T]."""
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.from_vectors(self.ambient_dim, [])
        a, b = self.basis.entries, other.basis.entries
        n = self.ambient_dim
        m = [[a[i][r] for i in range(len(a))] + [-b[j][r] for j in range(len(b))]
             for r in range(n)]
        ker = ExactMatrix(m).kernel()
        vecs = []
        for coeffs in ker.basis.entries:
            v = [ZERO] * n
            for i, c in enumerate(coeffs[:len(a)]):
                if c:
                    for j in range(n):
                        v[j] += c * a[i][j]
            vecs.append(v)
        return Subspace.from_vectors(n, vecs)

    def membership_residual_rows(self):
        """Rows E such that v in subspace  <=>  E v == 0."""
        rows = self.basis.entries
        pivots = _pivot_columns(rows)
        pivset = set(pivots)
        out = []
        n = self.ambient_dim
        for c in range(n):
            if c in pivset:
                continue
            row = [ZERO] * n
            row[c] = ONE
            for r, p in enumerate(pivots):
                row[p] = -rows[r][c]
            out.append(row)
        return out

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch: %d vs %d"
                             % (self.ambient_dim, other.ambient_dim))


def _pivot_columns(rref_rows):
    pivots = []
    for row in rref_rows:
        for j, e in enumerate(row):
            if e:
                pivots.append(j)
                break
    return pivots


NOT_IN_SPAN = object()


def kernel(matrix: ExactMatrix) -> Subspace:
    return matrix.kernel()


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def solve_in_span(target, generators: ExactMatrix):
    """Exact coefficients c with generators^T c == target, or NOT_IN_SPAN.

    Rows of `generators` are the spanning vectors.
    """
    n = generators.cols
    if len(target) != n:
        raise ValueError("dimension mismatch")
    g = generators.entries
    k = len(g)
    aug = [[g[i][r] for i in range(k)] + [QQ(target[r])] for r in range(n)]
    red, pivots = _rref_inplace(aug)
    red = red.entries
    if k in pivots:
        return NOT_IN_SPAN
    sol = [ZERO] * k
    for r, p in enumerate(pivots):
        sol[p] = red[r][k]
    return sol
