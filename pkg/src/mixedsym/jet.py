"""Jet charts, vector fields, brackets, the total derivative, contact
prolongation and the g_{i,j} polynomial family."""

from __future__ import annotations

from functools import lru_cache

from . import _kernel as K
from .exact import QQ, ONE
from .poly import Poly, VarTable, jet_vartable


class JetSpace:
    """Chart x, y0..y_a, z0..z_b.  Either tower may be absent (order None).

    truncate_top=True models an equation chart where the successor of each
    top coordinate is identically zero (y_{a+1} = z_{b+1} = 0).
    """

    __slots__ = ("order_y", "order_z", "table", "_succ_plain", "_succ_trunc")

    def __init__(self, order_y, order_z):
        self.order_y = order_y
        self.order_z = order_z
        self.table = jet_vartable(order_y, order_z)
        self._succ_plain = self._successors(truncate=False)
        self._succ_trunc = self._successors(truncate=True)

    def _successors(self, truncate):
        succ = []
        for name in self.table.names:
            if name == "x":
                succ.append(-1)
                continue
            fam, idx = name[0], int(name[1:])
            nxt = "%s%d" % (fam, idx + 1)
            if nxt in self.table.index:
                succ.append(self.table.index[nxt])
            else:
                succ.append(-2 if truncate else -1)
        return succ

    def __eq__(self, other):
        return (isinstance(other, JetSpace) and self.order_y == other.order_y
                and self.order_z == other.order_z)

    def __hash__(self):
        return hash((self.order_y, self.order_z))

    def __repr__(self):
        def part(o):
            return "-" if o is None else str(o)
        return "J^{%s,%s}" % (part(self.order_y), part(self.order_z))

    def extends(self, other):
        def geq(a, b):
            if b is None:
                return True
            return a is not None and a >= b
        return geq(self.order_y, other.order_y) and geq(self.order_z, other.order_z)

    def zero(self):
        return Poly.zero(self.table)

    def const(self, v):
        return Poly.const(self.table, v)

    def var(self, name):
        return Poly.var(self.table, name)

    def total_derivative(self, p: Poly, truncate=False):
        """D p with D = d/dx + sum y_{i+1} d/dy_i + sum z_{j+1} d/dz_j.

        Errors when p depends on a top coordinate with no successor, unless
        truncate is set (equation chart: the successor is zero).
        """
        if p.table != self.table:
            raise ValueError("vartable mismatch")
        succ = self._succ_trunc if truncate else self._succ_plain
        try:
            return Poly(self.table, K.dict_total_deriv(p.terms, succ))
        except KeyError as exc:
            raise ValueError(
                "total derivative needs the successor of %s"
                % self.table.names[exc.args[0]]) from None


class VectorField:
    """Derivation on a chart: coordinate name -> Poly coefficient."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: JetSpace, coeffs):
        self.space = space
        table = space.table
        self.coeffs = {}
        for name, p in coeffs.items():
            if name not in table.index:
                raise ValueError("unknown coordinate %r" % name)
            if p.table != table:
                raise ValueError("coefficient vartable mismatch")
            if p:
                self.coeffs[name] = p

    def coeff(self, name) -> Poly:
        return self.coeffs.get(name, Poly.zero(self.space.table))

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.space == other.space
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for n, p in other.coeffs.items():
            out[n] = out.get(n, Poly.zero(self.space.table)) + p
        return VectorField(self.space, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        return VectorField(self.space, {n: p * scalar
                                        for n, p in self.coeffs.items()})

    __rmul__ = __mul__

    def apply(self, p: Poly) -> Poly:
        """Derivation applied to a polynomial."""
        acc = {}
        for name, c in self.coeffs.items():
            dp = K.dict_diff(p.terms, self.space.table.index[name])
            if dp:
                K.dict_iadd_scaled(acc, K.dict_mul(c.terms, dp), ONE)
        return Poly(self.space.table, acc)

    def bracket(self, other: "VectorField") -> "VectorField":
        if self.space != other.space:
            raise ValueError("jetspace mismatch")
        out = {}
        names = set(self.coeffs) | set(other.coeffs)
        for name in names:
            p = self.apply(other.coeff(name)) - other.apply(self.coeff(name))
            if p:
                out[name] = p
        return VectorField(self.space, out)

    def embed(self, space: JetSpace) -> "VectorField":
        return VectorField(space, {n: p.embed(space.table)
                                   for n, p in self.coeffs.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for name in self.space.table.names:
            p = self.coeffs.get(name)
            if p is None:
                continue
            s = str(p)
            if s == "1":
                parts.append("d/d%s" % name)
            elif ("+" in s or (s.count("-") and not s.startswith("-"))
                  or (s.startswith("-") and ("+" in s[1:] or "-" in s[1:]))):
                parts.append("(%s)*d/d%s" % (s, name))
            else:
                parts.append("%s*d/d%s" % (s, name))
        return " + ".join(parts)

    __repr__ = __str__


def bracket(v: VectorField, w: VectorField) -> VectorField:
    return v.bracket(w)


def prolong(base_field: VectorField, target: JetSpace,
            truncate=True) -> VectorField:
    """Contact-preserving prolongation of a field to a higher jet chart.

    Tower recursion: next = D(cur) - u_next * D(A), with A the d/dx
    coefficient, applied independently in the y and z towers starting from
    the top coordinates present on the base chart.  With truncate=True the
    target is treated as an equation chart (top successors vanish), which
    matches prolong-then-restrict through y_{a+1} = z_{b+1} = 0.
    """
    base = base_field.space
    if not target.extends(base):
        raise ValueError("target %r does not extend base %r" % (target, base))
    tbl = target.table
    coeffs = {n: p.embed(tbl) for n, p in base_field.coeffs.items()}
    dA = target.total_derivative(coeffs.get("x", Poly.zero(tbl)),
                                 truncate=truncate)
    for fam, base_order, target_order in (
            ("y", base.order_y, target.order_y),
            ("z", base.order_z, target.order_z)):
        if target_order is None:
            continue
        start = base_order if base_order is not None else 0
        if base_order is None and ("%s0" % fam) not in coeffs:
            coeffs["%s0" % fam] = Poly.zero(tbl)
        cur = coeffs.get("%s%d" % (fam, start), Poly.zero(tbl))
        for m in range(start, target_order):
            nxt_name = "%s%d" % (fam, m + 1)
            cur = (target.total_derivative(cur, truncate=truncate)
                   - Poly.var(tbl, nxt_name) * dA)
            coeffs[nxt_name] = cur
    return VectorField(target, coeffs)


@lru_cache(maxsize=None)
def _g_chart(i):
    return JetSpace(None, i)


@lru_cache(maxsize=None)
def g_function(i, j, s=0) -> Poly:
    """g_{i,j}^{(s)}: the s-th x-derivative of x^(i+j)/(i+j)! D^i(z0 x^-j).

    Polynomial in x, z_{i-s}..z_i on the chart (x, z0..z_i); zero when
    s > i.  The x^(i+j) prefactor clears every pole (asserted).
    """
    if i < 0 or j < 1 or s < 0:
        raise ValueError("invalid g indices (i >= 0, j >= 1, s >= 0)")
    space = _g_chart(max(i, 1))
    if s > i:
        return space.zero()
    tbl = space.table
    cur = Poly.monomial(tbl, _expo(tbl, x=-j, z0=1))
    for _ in range(i):
        cur = space.total_derivative(cur)
    fact = 1
    for m in range(2, i + j + 1):
        fact *= m
    g = cur * Poly.monomial(tbl, _expo(tbl, x=i + j), QQ(1, fact))
    assert not g.has_negative_exponents(), "g_{i,j} kept a pole"
    for _ in range(s):
        g = g.partial("x")
    return g


def _expo(tbl, **named):
    e = [0] * len(tbl)
    for n, v in named.items():
        e[tbl.index[n]] = v
    return tuple(e)


# ---------------------------------------------------------------------------
# solution spaces of D^{p+1} f = 0 with top z-derivatives removed
# ---------------------------------------------------------------------------

def g_identity_residual(i, j):
    """g_{i,j} - (x/i) g^{(1)}_{i,j} + j g_{i-1,j+1}, embedded on one chart."""
    if i < 1 or j < 1:
        raise ValueError("identity needs i, j >= 1")
    space = _g_chart(i)
    tbl = space.table
    a = g_function(i, j).embed(tbl)
    b = g_function(i, j, 1).embed(tbl)
    c = g_function(i - 1, j + 1).embed(tbl)
    return a - Poly.var(tbl, "x") * b * QQ(1, i) + j * c


def flat_solution_space(p, q, r):
    """Solutions of D^{p+1} f = 0 with f independent of z_{r-q+1}..z_{r+1}.

    Works on the chart (x, z0..z_{r+1}) with D the truncated total
    derivative (z_{r+2} identified with zero).  The ansatz is every
    monomial with x-degree <= p(r+2) and total degree at most p in
    z_0..z_{r-q}.  Returns (subspace, monomial_list, chart).
    """
    if p < 1 or q < 0 or r < q:
        raise ValueError("need p >= 1, 0 <= q <= r")
    top = r - q
    space = JetSpace(None, r + 1)
    tbl = space.table
    monos = []
    zs = ["z%d" % m for m in range(top + 1)]

    def gen(prefix, remaining, start):
        monos.append(tuple(prefix))
        if remaining == 0:
            return
        for idx in range(start, len(zs)):
            e = list(prefix)
            e[tbl.index[zs[idx]]] += 1
            gen(e, remaining - 1, idx)

    for xdeg in range(p * (r + 2) + 1):
        base = [0] * len(tbl)
        base[0] = xdeg
        gen(base, p, 0)
    monos = sorted(set(monos))
    from .exact import ExactMatrix, Subspace, ZERO
    cols = []
    for mono in monos:
        f = Poly.monomial(tbl, mono)
        for _ in range(p + 1):
            f = space.total_derivative(f, truncate=True)
        cols.append(f.terms)
    constraint_monos = sorted({k for c in cols for k in c})
    cindex = {m: i for i, m in enumerate(constraint_monos)}
    if not constraint_monos:
        return Subspace.full(len(monos)), monos, space
    mat = [[ZERO] * len(monos) for _ in range(len(constraint_monos))]
    for jcol, terms in enumerate(cols):
        for k, v in terms.items():
            mat[cindex[k]][jcol] = v
    return ExactMatrix(mat).kernel(), monos, space


def poly_span_subspace(polys, monos):
    """Subspace of the coefficient space spanned by the given polynomials."""
    from .exact import Subspace, ZERO
    index = {m: i for i, m in enumerate(monos)}
    vecs = []
    for p in polys:
        v = [ZERO] * len(monos)
        for k, c in p.terms.items():
            v[index[k]] = c
        vecs.append(v)
    return Subspace.from_vectors(len(monos), vecs)
