"""Shift-delta exterior differential systems for y^(k) = z^(l) = 0:
symmetry verification, the determining-equation solver, closed-form bases,
and the derived flag of nonlinear perturbations."""

from __future__ import annotations

from .exact import ExactMatrix, Subspace, ZERO, qq, sparse_kernel
from .jet import JetSpace, VectorField, g_function, prolong
from .poly import Poly, parse_poly, ratfunc_matrix_kernel


class StabilizationError(RuntimeError):
    """The solution dimension kept growing past the allowed bound."""


class UncoveredCaseError(ValueError):
    """No closed-form basis is implemented for this (k, l, delta)."""


class TableauSpec:
    """Orders (k, l) with 2 <= k <= l and shift delta in [-k+2, l-2].

    Encodes the two-row skew tableau: a z-row of l boxes and a y-row of
    k boxes, right-aligned for delta = 0 and shifted by delta.  The rows
    overlap in at least two columns exactly when delta is in range.
    """

    __slots__ = ("k", "l", "delta")

    def __init__(self, k, l, delta):
        if not (2 <= k <= l):
            raise ValueError("orders must satisfy 2 <= k <= l")
        if not (-k + 2 <= delta <= l - 2):
            raise ValueError(
                "shift %d out of range [%d, %d]" % (delta, -k + 2, l - 2))
        self.k = k
        self.l = l
        self.delta = delta

    def __eq__(self, other):
        return (isinstance(other, TableauSpec) and
                (self.k, self.l, self.delta) ==
                (other.k, other.l, other.delta))

    def __hash__(self):
        return hash((self.k, self.l, self.delta))

    def __repr__(self):
        return "TableauSpec(k=%d, l=%d, delta=%d)" % (
            self.k, self.l, self.delta)

    @property
    def kind(self):
        if self.delta == 0:
            return "first"
        if self.delta == self.l - self.k:
            return "second"
        return "shift %d" % self.delta

    # -- charts ------------------------------------------------------------

    def equation_space(self):
        return JetSpace(self.k - 1, self.l - 1)

    def base_space(self):
        if self.delta >= 0:
            return JetSpace(0, self.delta)
        return JetSpace(-self.delta, 0)

    def base_names(self):
        return list(self.base_space().table.names)

    def f_names(self):
        names = []
        if self.delta >= 0:
            names += ["y%d" % i for i in range(1, self.k)]
            names += ["z%d" % j for j in range(self.delta + 1, self.l)]
        else:
            names += ["y%d" % i for i in range(-self.delta + 1, self.k)]
            names += ["z%d" % j for j in range(1, self.l)]
        return names

    # -- tableau geometry ----------------------------------------------------

    def row_starts(self):
        """Leftmost column (1-based) of the z-row and the y-row."""
        s_z = 1
        s_y = 1 + (self.l - self.k - self.delta)
        shift = min(s_z, s_y) - 1
        return s_z - shift, s_y - shift

    def z_degrees(self):
        """Tableau degree of f_j (the z-row box j steps from the right
        end), for j = 0..l-1; the leftmost column has degree -1."""
        s_z, _ = self.row_starts()
        return [-(s_z + self.l - 1 - j) for j in range(self.l)]

    def y_degrees(self):
        _, s_y = self.row_starts()
        return [-(s_y + self.k - 1 - i) for i in range(self.k)]

    def depth(self):
        """Largest column index; the degree -1..-depth range of V."""
        return -min(self.z_degrees() + self.y_degrees())

    def projection_chain(self):
        """Jet orders (a, a+delta) of the preserved projections, from the
        deepest chart down to the base."""
        hi = min(self.k - 1, self.l - 1 - self.delta)
        lo = max(0, -self.delta)
        return [(a, a + self.delta) for a in range(hi, lo - 1, -1)]

    def ascii_tableau(self):
        s_z, s_y = self.row_starts()
        def row(start, boxes):
            return "   " * (start - 1) + "[ ]" * boxes
        return row(s_z, self.l) + "\n" + row(s_y, self.k)

    def weights(self):
        """Chart-variable weights making the total derivative homogeneous
        of weight -1, aligned with the tableau grading: x -> 1,
        y_i -> -deg e_i, z_j -> -deg f_j."""
        out = {"x": 1}
        for i, d in enumerate(self.y_degrees()):
            out["y%d" % i] = -d
        for j, d in enumerate(self.z_degrees()):
            out["z%d" % j] = -d
        return out


class Distribution:
    """A finite generating set of vector fields on one chart."""

    def __init__(self, space, generators):
        self.space = space
        self.generators = list(generators)
        for g in self.generators:
            if g.space != space:
                raise ValueError("generator on a different chart")
        if self.rank_at_origin() != len(self.generators):
            raise ValueError("generators dependent at the origin")

    @property
    def rank(self):
        return len(self.generators)

    def rank_at_origin(self):
        names = self.space.table.names
        rows = []
        for g in self.generators:
            row = []
            for n in names:
                p = g.coeff(n)
                c = p.terms.get(tuple([0] * len(names)), ZERO)
                row.append(c)
            rows.append(row)
        return ExactMatrix(rows).rank() if rows else 0


class ShiftEDS:
    def __init__(self, spec: TableauSpec, E: Distribution, F: Distribution):
        self.spec = spec
        self.E = E
        self.F = F


def e_generator(spec: TableauSpec) -> VectorField:
    """X = d/dx + y1 d/dy0 + ... + z_{l-1} d/dz_{l-2} on the equation
    chart (top coordinates have derivative zero there)."""
    space = spec.equation_space()
    tbl = space.table
    coeffs = {"x": Poly.const(tbl, 1)}
    for i in range(spec.k - 1):
        coeffs["y%d" % i] = Poly.var(tbl, "y%d" % (i + 1))
    for j in range(spec.l - 1):
        coeffs["z%d" % j] = Poly.var(tbl, "z%d" % (j + 1))
    return VectorField(space, coeffs)


def build_eds(spec: TableauSpec) -> ShiftEDS:
    space = spec.equation_space()
    tbl = space.table
    one = Poly.const(tbl, 1)
    E = Distribution(space, [e_generator(spec)])
    F = Distribution(space, [VectorField(space, {n: one})
                             for n in spec.f_names()])
    return ShiftEDS(spec, E, F)


def is_symmetry(S: VectorField, eds) -> tuple:
    """(flag, certificate): S preserves the line E and the foliation F.

    The E condition is [S,X] == lam * X with lam the d/dx component of
    [S,X]; the F condition is that [S, d/du] has no component along any
    non-F coordinate, for every F coordinate u.
    """
    spec = eds.spec if isinstance(eds, ShiftEDS) else eds
    space = spec.equation_space()
    if S.space != space:
        raise ValueError("field not on the equation chart %r" % space)
    X = e_generator(spec)
    R = S.bracket(X)
    lam = R.coeff("x")
    residual = R - X * lam
    cert = {"lambda": str(lam), "violations": []}
    for name, p in residual.coeffs.items():
        cert["violations"].append(("E", name, str(p)))
    non_f = set(spec.base_names())
    for u in spec.f_names():
        for c in non_f:
            d = S.coeff(c).partial(u)
            if d:
                cert["violations"].append(("F", "d(S_%s)/d%s" % (c, u),
                                           str(d)))
    ok = not cert["violations"]
    return ok, cert


# ---------------------------------------------------------------------------
# determining-equation solver
# ---------------------------------------------------------------------------

def _tower(spec, A, B, C):
    """Components of the unique E-compatible field with d/dx component A,
    d/dy0 component B and d/dz0 component C, together with the residual
    conditions that must vanish for it to be a symmetry.

    Recursion: P_{u_{m+1}} = X(P_{u_m}) - u_{m+1} X(A) in both towers,
    where X is the truncated total derivative.  Conditions: X applied to
    the top component of each tower vanishes, and for every coordinate
    that survives on the base chart the component involves only base
    variables.
    """
    space = spec.equation_space()
    tbl = space.table
    XA = space.total_derivative(A, truncate=True)
    coeffs = {"x": A}
    conds = []
    base_idx = {tbl.index[n] for n in spec.base_names()}
    dz = max(spec.delta, 0)
    dy = max(-spec.delta, 0)
    for fam, order, bottom, depth in (("y", spec.k, B, dy),
                                      ("z", spec.l, C, dz)):
        cur = bottom
        coeffs[fam + "0"] = cur
        for m in range(1, order):
            cur = (space.total_derivative(cur, truncate=True)
                   - Poly.var(tbl, "%s%d" % (fam, m)) * XA)
            coeffs["%s%d" % (fam, m)] = cur
            if m <= depth:
                # this component must project to the base chart
                stray = {mono: c for mono, c in cur.terms.items()
                         if any(e and i not in base_idx
                                for i, e in enumerate(mono))}
                conds.append(("proj_%s%d" % (fam, m), Poly(tbl, stray)))
        conds.append(("top_" + fam,
                      space.total_derivative(cur, truncate=True)))
    return coeffs, conds


def _weighted_monomials(names, weights, target, table):
    """All exponent tuples over `names` with weighted degree == target."""
    out = []
    idx = [table.index[n] for n in names]
    wts = [weights[n] for n in names]
    expo = [0] * len(table)

    def rec(pos, remaining):
        if remaining == 0:
            out.append(tuple(expo))
            return
        if pos == len(idx):
            return
        w = wts[pos]
        for e in range(remaining // w + 1):
            expo[idx[pos]] = e
            rec(pos + 1, remaining - e * w)
        expo[idx[pos]] = 0

    rec(0, target)
    return out


class SymmetrySolution:
    """Basis of the symmetry algebra found by the determining solver,
    graded by the weight of each field."""

    def __init__(self, spec, fields, field_weights):
        self.spec = spec
        self.fields = fields
        self.field_weights = field_weights

    @property
    def dim(self):
        return len(self.fields)

    def graded_dims(self):
        out = {}
        for w in self.field_weights:
            out[w] = out.get(w, 0) + 1
        return dict(sorted(out.items()))

    def to_lie_algebra(self):
        from .liealg import from_vector_fields
        grading = {i: w for i, w in enumerate(self.field_weights)}
        return from_vector_fields(self.fields, grading=grading)


def _solve_weight_layer(spec, mu):
    """Symmetry fields homogeneous of weight mu; each component P_c has
    weighted degree mu + weight(c)."""
    space = spec.equation_space()
    tbl = space.table
    weights = spec.weights()
    base = spec.base_names()
    slots = [("x", mu + 1), ("y0", mu + weights["y0"]),
             ("z0", mu + weights["z0"])]
    unknowns = []
    for s, (slot, w) in enumerate(slots):
        if w < 0:
            continue
        for mono in _weighted_monomials(base, weights, w, tbl):
            unknowns.append((s, mono))
    if not unknowns:
        return []
    zero = Poly.zero(tbl)
    columns = []
    for s, mono in unknowns:
        abc = [zero, zero, zero]
        abc[s] = Poly.monomial(tbl, mono)
        _, conds = _tower(spec, *abc)
        col = {}
        for tag, p in conds:
            for cm, c in p.terms.items():
                col[(tag, cm)] = c
        columns.append(col)
    rows = {}
    for jcol, col in enumerate(columns):
        for key, c in col.items():
            rows.setdefault(key, {})[jcol] = c
    if rows:
        ker = sparse_kernel(rows.values(), len(unknowns))
    else:
        ker = Subspace.full(len(unknowns))
    fields = []
    for vec in ker.basis.entries:
        abc = [Poly.zero(tbl) for _ in range(3)]
        for (s, mono), c in zip(unknowns, vec):
            if c:
                abc[s] = abc[s] + Poly.monomial(tbl, mono) * c
        coeffs, _ = _tower(spec, *abc)
        fields.append(VectorField(space, coeffs))
    return fields


def solve_determining(spec: TableauSpec, degree_bound=None):
    """Solve the determining equations layer by layer in the weight
    grading (x -> 1, y_i -> k-i, z_j -> l-j), under which the symmetry
    conditions are homogeneous.

    Layers run from weight -depth upward, depth being the column count of
    the tableau.  With degree_bound=None, iteration stops after k+l
    consecutive empty layers; otherwise layers up to weight degree_bound
    are computed and layer degree_bound+1 must be empty (stabilization
    check), else StabilizationError.
    """
    mu_min = -spec.depth()
    window = spec.k + spec.l
    cap = 6 * (spec.k + spec.l)
    fields, field_weights = [], []
    if degree_bound is not None:
        for mu in range(mu_min, degree_bound + 1):
            layer = _solve_weight_layer(spec, mu)
            fields += layer
            field_weights += [mu] * len(layer)
        if _solve_weight_layer(spec, degree_bound + 1):
            raise StabilizationError(
                "nonempty layer just above weight bound %d" % degree_bound)
        return SymmetrySolution(spec, fields, field_weights)
    empty_run = 0
    mu = mu_min
    while empty_run < window:
        if mu > cap:
            raise StabilizationError(
                "no stabilization up to weight %d for %r" % (cap, spec))
        layer = _solve_weight_layer(spec, mu)
        if layer:
            fields += layer
            field_weights += [mu] * len(layer)
            empty_run = 0
        else:
            empty_run += 1
        mu += 1
    return SymmetrySolution(spec, fields, field_weights)


# ---------------------------------------------------------------------------
# closed-form bases
# ---------------------------------------------------------------------------

def _field(space, **components):
    tbl = space.table
    coeffs = {}
    for name, val in components.items():
        coeffs[name] = parse_poly(val, tbl) if isinstance(val, str) else val
    return VectorField(space, coeffs)


def _xpow(tbl, i):
    e = [0] * len(tbl)
    e[0] = i
    return Poly.monomial(tbl, tuple(e))


def _scalar_fields(space, k, l):
    """d/dx, x d/dx, the squared dilation, and the two tower scalings,
    given on the chart of y0, z0 (other components via prolongation)."""
    return [
        _field(space, x="1"),
        _field(space, x="x"),
        _field(space, x="x^2", y0="%d*x*y0" % (k - 1), z0="%d*x*z0" % (l - 1)),
        _field(space, y0="y0"),
        _field(space, z0="z0"),
    ]


def _second_kind_23_fields():
    space = JetSpace(0, 1)
    F = lambda **kw: _field(space, **kw)
    return [
        F(x="1/2*x^2*z1 - x*z0", y0="1/2*x*y0*z1 - y0*z0",
          z0="1/4*x^2*z1^2 - z0^2", z1="1/2*x*z1^2 - z0*z1"),
        F(x="2*x*z1 - 2*z0", y0="y0*z1", z0="x*z1^2", z1="z1^2"),
        F(x="z1", z0="1/2*z1^2"),
        F(x="x^2", y0="x*y0", z0="2*x*z0", z1="2*z0"),
        F(x="x", z1="-z1"),
        F(z0="z0", z1="z1"),
        F(z0="x^2", z1="2*x"),
        F(z0="x", z1="1"),
        F(x="1"),
        F(z0="1"),
        F(y0="y0"),
        F(y0="x*z1 - 2*z0"),
        F(y0="x"),
        F(y0="z1"),
        F(y0="1"),
    ]


def _csp4_neg_shift_fields(l):
    """The eleven non-ideal generators for k=3, shift -1 (chart
    x, y0, y1, z0), dependent on l only through the z0 scaling."""
    space = JetSpace(1, 0)
    F = lambda **kw: _field(space, **kw)
    c = l - 1
    return [
        F(x="2*x*y0 - x^2*y1", y0="2*y0^2 - 1/2*x^2*y1^2",
          y1="2*y0*y1 - x*y1^2", z0="%d*y0*z0 - %d*x*y1*z0" % (2 * c, c)),
        F(x="2*y0 - 2*x*y1", y0="-x*y1^2", y1="-y1^2",
          z0="-%d*y1*z0" % c),
        F(x="x^2", y0="2*x*y0", y1="2*y0", z0="%d*x*z0" % c),
        F(x="x", y1="-y1"),
        F(y0="y0", y1="y1"),
        F(z0="z0"),
        F(x="y1", y0="1/2*y1^2"),
        F(x="1"),
        F(y0="1"),
        F(y0="x", y1="1"),
        F(y0="x^2", y1="2*x"),
    ]


def _g_products(i, j, max_i_coeff, step, tbl):
    """Fields x^a * (product of g_{i,j}^{(s_m)} over m=1..t) with
    a + step * t <= max_i_coeff, as polynomials in the given table."""
    import itertools
    gs = [g_function(i, j, s).embed(tbl) for s in range(i + 1)]
    out = []
    t = 0
    while step * t <= max_i_coeff:
        for combo in itertools.combinations_with_replacement(range(len(gs)),
                                                             t):
            prod = Poly.const(tbl, 1)
            for s in combo:
                prod = prod * gs[s]
            for a in range(max_i_coeff - step * t + 1):
                out.append(prod * _xpow(tbl, a))
        t += 1
    return out


def known_basis(spec: TableauSpec):
    """The closed-form spanning fields for the covered cases, prolonged
    to the equation chart."""
    k, l, d = spec.k, spec.l, spec.delta
    if k == l and d > 0:
        # The two towers have equal order, so swapping them maps the
        # shift-d problem onto the shift-(-d) problem on the same chart.
        mirrored = known_basis(TableauSpec(k, l, -d))
        tbl = spec.equation_space().table
        swap = {"y%d" % m: "z%d" % m for m in range(k)}
        swap.update({"z%d" % m: "y%d" % m for m in range(l)})
        return [VectorField(f.space,
                            {swap.get(c, c): p.rename(swap, tbl)
                             for c, p in f.coeffs.items()})
                for f in mirrored]
    point = JetSpace(0, 0)
    fields = []
    if d == 0:
        if k == 2 and l > 2:
            F = lambda **kw: _field(point, **kw)
            fields = [
                F(x="1"), F(y0="1"),
                F(x="x"), F(y0="x"), F(x="y0"), F(y0="y0"), F(z0="z0"),
                F(x="x^2", y0="x*y0", z0="%d*x*z0" % (l - 1)),
                F(x="x*y0", y0="y0^2", z0="%d*y0*z0" % (l - 1)),
            ]
            tbl = point.table
            for i in range(l):
                for j in range(l - i):
                    mono = [0] * len(tbl)
                    mono[tbl.index["x"]] = i
                    mono[tbl.index["y0"]] = j
                    fields.append(VectorField(
                        point, {"z0": Poly.monomial(tbl, tuple(mono))}))
        elif 2 < k < l:
            fields = _scalar_fields(point, k, l)
            tbl = point.table
            for i in range(k):
                fields.append(VectorField(point, {"y0": _xpow(tbl, i)}))
            for j in range(l):
                if (k - 1) * j > l - 1:
                    break
                for i in range(l - (k - 1) * j):
                    mono = [0] * len(tbl)
                    mono[tbl.index["x"]] = i
                    mono[tbl.index["y0"]] = j
                    fields.append(VectorField(
                        point, {"z0": Poly.monomial(tbl, tuple(mono))}))
        else:
            raise UncoveredCaseError(
                "no closed-form basis for k = l with shift 0")
    elif d == l - k and (k, l) == (2, 3):
        fields = _second_kind_23_fields()
    elif d == l - k:
        fields = _scalar_fields(point, k, l)
        tbl = point.table
        for j in range(l):
            fields.append(VectorField(point, {"z0": _xpow(tbl, j)}))
        for i in range(k):
            fields.append(VectorField(point, {"y0": _xpow(tbl, i)}))
        gspace = JetSpace(0, l - k)
        for s in range(l - k + 1):
            fields.append(VectorField(
                gspace, {"y0": g_function(l - k, k, s).embed(gspace.table)}))
    elif 0 < d < l - k:
        fields = _scalar_fields(point, k, l)
        tbl = point.table
        for i in range(k):
            fields.append(VectorField(point, {"y0": _xpow(tbl, i)}))
        for j in range(l):
            fields.append(VectorField(point, {"z0": _xpow(tbl, j)}))
    elif d > l - k and k >= 3:
        fields = _scalar_fields(point, k, l)
        tbl = point.table
        for i in range(l):
            fields.append(VectorField(point, {"z0": _xpow(tbl, i)}))
        gspace = JetSpace(0, d)
        for p in _g_products(d, l - d, k - 1, l - d - 1, gspace.table):
            fields.append(VectorField(gspace, {"y0": p}))
    elif d < 0 and k == 3:
        if d != -1:
            raise UncoveredCaseError("k = 3 admits only shift -1 below 0")
        fields = _csp4_neg_shift_fields(l)
        space = JetSpace(1, 0)
        tbl = space.table
        ix, iy0, iy1 = tbl.index["x"], tbl.index["y0"], tbl.index["y1"]
        w = parse_poly("x*y1 - 2*y0", tbl)
        for i in range(l):
            for j0 in range(l - i):
                for j1 in range(l - i - j0):
                    mono = [0] * len(tbl)
                    mono[ix], mono[iy1] = i, j1
                    p = Poly.monomial(tbl, tuple(mono))
                    for _ in range(j0):
                        p = p * w
                    fields.append(VectorField(space, {"z0": p}))
    elif d < 0 and k >= 4:
        fields = _scalar_fields(point, k, l)
        tbl = point.table
        for i in range(k):
            fields.append(VectorField(point, {"y0": _xpow(tbl, i)}))
        hspace = JetSpace(-d, 0)
        gtbl = JetSpace(None, -d).table
        rename = {"z%d" % m: "y%d" % m for m in range(-d + 1)}
        for p in _g_products(-d, k + d, l - 1, k + d - 1, gtbl):
            fields.append(VectorField(
                hspace, {"z0": p.rename(rename, hspace.table)}))
    else:
        raise UncoveredCaseError("no closed-form basis for %r" % spec)
    target = spec.equation_space()
    return [prolong(f, target, truncate=True) for f in fields]


# ---------------------------------------------------------------------------
# nonlinear systems and the derived flag
# ---------------------------------------------------------------------------

class NonlinearSystem:
    """y^(k) = f, z^(l) = g with polynomial right-hand sides on the
    chart (x, y0..y_{k-1}, z0..z_{l-1})."""

    def __init__(self, k, l, f=None, g=None):
        if not (2 <= k <= l):
            raise ValueError("orders must satisfy 2 <= k <= l")
        self.k = k
        self.l = l
        self.space = JetSpace(k - 1, l - 1)
        tbl = self.space.table
        self.f = f if f is not None else Poly.zero(tbl)
        self.g = g if g is not None else Poly.zero(tbl)
        if self.f.table != tbl or self.g.table != tbl:
            raise ValueError("right-hand sides on the wrong chart")

    def e_generator(self):
        tbl = self.space.table
        coeffs = {"x": Poly.const(tbl, 1)}
        for i in range(self.k - 1):
            coeffs["y%d" % i] = Poly.var(tbl, "y%d" % (i + 1))
        coeffs["y%d" % (self.k - 1)] = self.f
        for j in range(self.l - 1):
            coeffs["z%d" % j] = Poly.var(tbl, "z%d" % (j + 1))
        coeffs["z%d" % (self.l - 1)] = self.g
        return VectorField(self.space, coeffs)


def derived_flag(sys: NonlinearSystem):
    """Ranks and generators of F1 > F2 > ... with
    F_{i+1} = { Y in F_i : [Y, E] in F_i }.

    Each step is a kernel computation over the rational-function field:
    function coefficients c_m of the F_i generators G_m must make
    sum c_m [G_m, X] vanish modulo the F_i module (the X(c_m) G_m terms
    already lie in it).  Generators are cleared to polynomial fields.
    """
    space = sys.space
    tbl = space.table
    one = Poly.const(tbl, 1)
    X = sys.e_generator()
    gens = [VectorField(space, {"y%d" % i: one})
            for i in range(1, sys.k)]
    gens += [VectorField(space, {"z%d" % j: one})
             for j in range(1, sys.l)]
    flag = [(len(gens), gens)]
    names = list(tbl.names)
    # the flag F_1 > F_2 > ... has l-1 members; stop early on stabilization
    while gens and len(flag) < sys.l - 1:
        brackets = [g.bracket(X) for g in gens]
        rows = []
        for n in names:
            row = [b.coeff(n) for b in brackets]
            row += [g.coeff(n) for g in gens]
            if any(p for p in row):
                rows.append(row)
        kernel_vecs = ratfunc_matrix_kernel(rows)
        new_gens = []
        for vec in kernel_vecs:
            acc = VectorField(space, {})
            for c, g in zip(vec[:len(gens)], gens):
                if c:
                    acc = acc + VectorField(
                        space, {n: c * p for n, p in g.coeffs.items()})
            if not acc.is_zero():
                new_gens.append(acc)
        if len(new_gens) == len(gens):
            break
        flag.append((len(new_gens), new_gens))
        gens = new_gens
    return flag
