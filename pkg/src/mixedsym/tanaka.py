"""Graded nilpotent symbol algebras of shift-delta systems, their graded
derivations and stabilizers, and Tanaka prolongation of a pair (m, g0)."""

from __future__ import annotations

from .exact import (ExactMatrix, NOT_IN_SPAN, Subspace, ZERO, qq,
                    solve_in_span)
from .liealg import LieAlgebraSC


class GradedNilpotent:
    """The nilpotent algebra spanned by D, Y_0..Y_{k-1}, Z_0..Z_{l-1} with
    [Y_i, D] = Y_{i-1}, [Z_j, D] = Z_{j-1}, graded by the tableau columns
    (deg D = -1).  Basis order: D, Y_0..Y_{k-1}, Z_0..Z_{l-1}."""

    def __init__(self, spec):
        self.spec = spec
        k, l = spec.k, spec.l
        self.dim = 1 + k + l
        self.names = (["D"] + ["Y%d" % i for i in range(k)]
                      + ["Z%d" % j for j in range(l)])
        self.degrees = [-1] + spec.y_degrees() + spec.z_degrees()
        sc = {}
        for i in range(1, k):
            sc[(0, 1 + i)] = {1 + i - 1: qq(-1)}
        for j in range(1, l):
            sc[(0, 1 + k + j)] = {1 + k + j - 1: qq(-1)}
        self.algebra = LieAlgebraSC(self.dim, sc,
                                    grading=dict(enumerate(self.degrees)))
        if self.algebra.lower_central_dims()[-1] != 0:
            raise ValueError("symbol algebra is not nilpotent")

    @property
    def depth(self):
        return -min(self.degrees)

    def layer_indices(self, d):
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def layer_dims(self):
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def d_line(self):
        """The line through D, as a subspace of the algebra."""
        v = [ZERO] * self.dim
        v[0] = qq(1)
        return Subspace.from_vectors(self.dim, [v])

    def is_fundamental(self):
        """Whether m is generated by its degree -1 layer."""
        alg = self.algebra
        one = Subspace.from_vectors(
            self.dim, [alg._unit(i) for i in self.layer_indices(-1)])
        cur = one
        while True:
            nxt = cur.add(alg.bracket_subspaces(one, cur))
            if nxt.dim == cur.dim:
                return cur.dim == self.dim
            cur = nxt


def build_gnla(spec) -> GradedNilpotent:
    return GradedNilpotent(spec)


def _derivation_rows(m: GradedNilpotent, var_index):
    """Linear conditions phi[u,v] = [phi u, v] + [u, phi v] on the matrix
    entries listed in var_index (a dict (row, col) -> unknown index)."""
    alg = m.algebra
    n = m.dim
    rows = []
    nvars = len(var_index)
    for i in range(n):
        for j in range(i + 1, n):
            br = alg.bracket_basis(i, j)
            for target in range(n):
                row = [ZERO] * nvars
                # phi([e_i, e_j]) component `target`
                for s, c in br.items():
                    key = (target, s)
                    if key in var_index:
                        row[var_index[key]] += c
                # -[phi e_i, e_j]: phi e_i = sum_a phi[a][i] e_a
                for a in range(n):
                    key = (a, i)
                    if key in var_index:
                        c = alg.bracket_basis(a, j).get(target)
                        if c:
                            row[var_index[key]] -= c
                # -[e_i, phi e_j]
                for a in range(n):
                    key = (a, j)
                    if key in var_index:
                        c = alg.bracket_basis(i, a).get(target)
                        if c:
                            row[var_index[key]] -= c
                if any(row):
                    rows.append(row)
    return rows


def _matrices_from_kernel(kernel, var_index, n):
    out = []
    for vec in kernel.basis.entries:
        mat = [[ZERO] * n for _ in range(n)]
        for (a, b), u in var_index.items():
            mat[a][b] = vec[u]
        out.append(ExactMatrix(mat))
    return out


def der0(m: GradedNilpotent):
    """Basis of the degree-preserving derivations of m, as matrices."""
    return stab(m, [])


def stab(m: GradedNilpotent, subspaces):
    """Degree-0 derivations preserving each subspace in the list."""
    n = m.dim
    var_index = {}
    for a in range(n):
        for b in range(n):
            if m.degrees[a] == m.degrees[b]:
                var_index[(a, b)] = len(var_index)
    rows = _derivation_rows(m, var_index)
    for sub in subspaces:
        res_rows = sub.membership_residual_rows()
        for vec in sub.basis.entries:
            # phi(vec) must stay inside sub
            for res in res_rows:
                row = [ZERO] * len(var_index)
                for (a, b), u in var_index.items():
                    if vec[b]:
                        row[u] += res[a] * vec[b]
                if any(row):
                    rows.append(row)
    if rows:
        kernel = ExactMatrix(rows).kernel()
    else:
        kernel = Subspace.full(len(var_index))
    mats = _matrices_from_kernel(kernel, var_index, n)
    for p in mats:
        for q in mats:
            comm = _matrix_comm(p, q)
            if not _in_matrix_span(comm, mats):
                raise AssertionError("derivation family not closed")
    return mats


def _matrix_comm(p, q):
    return ExactMatrix([[sum((p.entries[i][t] * q.entries[t][j]
                              - q.entries[i][t] * p.entries[t][j])
                             for t in range(p.cols)) for j in range(p.cols)]
                        for i in range(p.rows)])


def _in_matrix_span(mat, mats):
    if not mats:
        return all(not e for row in mat.entries for e in row)
    flat = [e for row in mat.entries for e in row]
    gens = ExactMatrix([[e for row in mm.entries for e in row]
                        for mm in mats])
    return solve_in_span(flat, gens) is not NOT_IN_SPAN


class _PElem:
    """Element of a non-negative prolongation layer, stored by its action
    on the m basis: action[u] is the coordinate vector of phi(e_u) in the
    layer of degree (own degree + deg e_u), or None when that layer is
    trivial."""

    __slots__ = ("degree", "action")

    def __init__(self, degree, action):
        self.degree = degree
        self.action = action


class GradedProlongation:
    """Tanaka prolongation of (m, g0): per-degree layers and, once
    complete, the assembled Lie algebra."""

    def __init__(self, m, layer_elems):
        self.m = m
        self.layers = layer_elems  # degree >= 0 -> list of _PElem
        self._algebra = None

    def layer_dims(self):
        out = dict(m_dims := self.m.layer_dims())
        for d, elems in sorted(self.layers.items()):
            if elems:
                out[d] = len(elems)
        return dict(sorted(out.items()))

    @property
    def dim(self):
        return sum(self.layer_dims().values())

    def algebra(self) -> LieAlgebraSC:
        if self._algebra is None:
            self._algebra = _assemble(self.m, self.layers)
        return self._algebra


def _layer_basis_size(m, layers, d):
    if d < 0:
        return len(m.layer_indices(d))
    return len(layers.get(d, []))


def _action_of_m_element(m, coords, layer_d, v):
    """Bracket [w, e_v] of w = sum coords * (m-basis of degree layer_d)
    with the m basis element e_v, as coordinates in degree layer_d+deg v."""
    alg = m.algebra
    idxs = m.layer_indices(layer_d)
    target = m.layer_indices(layer_d + m.degrees[v])
    tpos = {t: a for a, t in enumerate(target)}
    out = [ZERO] * len(target)
    for c, u in zip(coords, idxs):
        if not c:
            continue
        for t, b in alg.bracket_basis(u, v).items():
            out[tpos[t]] += c * b
    return out


def _bracket_with_m(m, layers, degree, coords, v):
    """[w, e_v] for w in layer `degree` (>= 0 or < 0) given by coords."""
    if degree < 0:
        return _action_of_m_element(m, coords, degree, v)
    elems = layers.get(degree, [])
    d_target = degree + m.degrees[v]
    size = _layer_basis_size(m, layers, d_target)
    out = [ZERO] * size
    for c, el in zip(coords, elems):
        if not c:
            continue
        av = el.action[v]
        if av is None:
            continue
        for a, b in enumerate(av):
            out[a] += c * b
    return out


def tanaka_prolong(m: GradedNilpotent, g0) -> GradedProlongation:
    """Prolong (m, g0) degree by degree.

    Layer i >= 1 consists of the maps phi sending each m basis element
    e_u to the layer of degree i + deg(e_u), subject to
    phi([u,v]) = [phi(u), v] + [u, phi(v)] for all u, v in m.  Iteration
    stops after depth(m) consecutive empty layers; with the whole of m in
    the negative part, a further nonzero layer would need a nonzero
    bracket into one of those.
    """
    n = m.dim
    layers = {0: [_PElem(0, [
        [mat.entries[a][b] for a in m.layer_indices(m.degrees[b])]
        for b in range(n)]) for mat in g0]}
    depth = m.depth
    empty_run = 0
    i = 1
    cap = 12 * n
    while empty_run < depth:
        if i > cap:
            raise RuntimeError("prolongation did not terminate by degree %d"
                               % cap)
        elems = _prolong_layer(m, layers, i)
        layers[i] = elems
        empty_run = 0 if elems else empty_run + 1
        i += 1
    layers = {d: e for d, e in layers.items() if e or d == 0}
    return GradedProlongation(m, layers)


def _prolong_layer(m, layers, i):
    n = m.dim
    # unknown coordinates: phi(e_u) in layer i + deg(e_u)
    offsets = {}
    nvars = 0
    for u in range(n):
        size = _layer_basis_size(m, layers, i + m.degrees[u])
        offsets[u] = (nvars, size)
        nvars += size
    if nvars == 0:
        return []
    alg = m.algebra
    rows = []
    for u in range(n):
        for v in range(u + 1, n):
            d_t = i + m.degrees[u] + m.degrees[v]
            size_t = _layer_basis_size(m, layers, d_t)
            if size_t == 0:
                continue
            block = [[ZERO] * nvars for _ in range(size_t)]
            # phi([u, v]) = sum c * phi(e_s), whose coordinates are the
            # unknown block of e_s (same target layer: deg s = deg u+v)
            for s, c in alg.bracket_basis(u, v).items():
                off, size = offsets[s]
                if size != size_t:
                    raise AssertionError("layer size mismatch")
                for a in range(size):
                    block[a][off + a] += c
            # -[phi(u), v]: phi(u) = sum_t x_{u,t} b_t, b_t in layer i+deg u
            for (w, other, sign) in ((u, v, 1), (v, u, -1)):
                off, size = offsets[w]
                d1 = i + m.degrees[w]
                for t in range(size):
                    unit = [ZERO] * size
                    unit[t] = qq(1)
                    vec = _bracket_with_m(m, layers, d1, unit, other)
                    for a, c in enumerate(vec):
                        if c:
                            block[a][off + t] -= sign * c
            for row in block:
                if any(row):
                    rows.append(row)
    if rows:
        kernel = ExactMatrix(rows).kernel()
    else:
        kernel = Subspace.full(nvars)
    elems = []
    for vec in kernel.basis.entries:
        action = []
        for u in range(n):
            off, size = offsets[u]
            action.append(list(vec[off:off + size]) if size else None)
        elems.append(_PElem(i, action))
    return elems


def _flatten_action(action):
    out = []
    for av in action:
        if av:
            out.extend(av)
    return out


def _assemble(m, layers):
    """Total Lie algebra of m plus the non-negative layers, with brackets
    of non-negative pairs reconstructed from their action on m."""
    n = m.dim
    pos_degrees = sorted(d for d in layers if layers[d])
    index = {}  # ("m", u) or (d, t) -> global index
    degrees = []
    for u in range(n):
        index[("m", u)] = len(degrees)
        degrees.append(m.degrees[u])
    for d in pos_degrees:
        for t in range(len(layers[d])):
            index[(d, t)] = len(degrees)
            degrees.append(d)
    N = len(degrees)

    def layer_to_global(d, coords):
        out = {}
        if d < 0:
            for c, u in zip(coords, m.layer_indices(d)):
                if c:
                    out[index[("m", u)]] = c
        else:
            for t, c in enumerate(coords):
                if c:
                    out[index[(d, t)]] = c
        return out

    memo = {}

    def bracket_nonneg(d1, t1, d2, t2):
        """[b, c] for layer elements, as coords in layer d1 + d2."""
        key = (d1, t1, d2, t2)
        if key in memo:
            return memo[key]
        b = layers[d1][t1]
        c = layers[d2][t2]
        target = d1 + d2
        size_t_of = lambda u: _layer_basis_size(m, layers,
                                                target + m.degrees[u])
        action = []
        for u in range(n):
            # [ [b,c], e_u ] = [b, c(e_u)] - [c, b(e_u)]
            acc = [ZERO] * size_t_of(u)
            for first, second, sign in ((b, c, qq(1)), (c, b, qq(-1))):
                av = second.action[u]
                if av is None:
                    continue
                d_mid = second.degree + m.degrees[u]
                if d_mid < 0:
                    res = _bracket_of_elem_with_m_vec(
                        m, layers, first, d_mid, av)
                else:
                    res = [ZERO] * len(acc)
                    for s, cs in enumerate(av):
                        if cs:
                            sub = bracket_nonneg(first.degree,
                                                 _index_of(first, layers),
                                                 d_mid, s)
                            for a, e in enumerate(sub):
                                res[a] += cs * e
                for a, e in enumerate(res):
                    acc[a] += sign * e
            action.append(acc)
        gens = []
        for el in layers.get(target, []):
            gens.append(_flatten_action(el.action))
        flat = _flatten_action(action)
        if not gens:
            if any(flat):
                raise AssertionError("bracket lands outside built layers")
            memo[key] = []
            return memo[key]
        sol = solve_in_span(flat, ExactMatrix(gens))
        if sol is NOT_IN_SPAN:
            raise AssertionError("bracket not reconstructible in layer %d"
                                 % target)
        memo[key] = list(sol)
        return memo[key]

    def _index_of(el, layers):
        for t, cand in enumerate(layers[el.degree]):
            if cand is el:
                return t
        raise AssertionError("element not in its own layer")

    def _bracket_of_elem_with_m_vec(m2, layers2, el, d_mid, coords):
        """[el, w] for w in the m layer d_mid with the given coords,
        returned in layer el.degree + d_mid coordinates."""
        idxs = m2.layer_indices(d_mid)
        size = _layer_basis_size(m2, layers2, el.degree + d_mid)
        out = [ZERO] * size
        for c, u in zip(coords, idxs):
            if not c:
                continue
            av = el.action[u]
            if av is None:
                continue
            for a, b in enumerate(av):
                out[a] += c * b
        return out

    sc = {}
    alg = m.algebra
    # m x m
    for u in range(n):
        for v in range(u + 1, n):
            br = alg.bracket_basis(u, v)
            if br:
                sc[(index[("m", u)], index[("m", v)])] = {
                    index[("m", s)]: c for s, c in br.items()}
    # layer x m and layer x layer
    for d1 in pos_degrees:
        for t1, el in enumerate(layers[d1]):
            gi = index[(d1, t1)]
            for u in range(n):
                av = el.action[u]
                if av is None or not any(av):
                    continue
                row = layer_to_global(d1 + m.degrees[u], av)
                a, b = sorted((gi, index[("m", u)]))
                if (a, b) == (gi, index[("m", u)]):
                    sc[(a, b)] = row
                else:
                    sc[(a, b)] = {s: -c for s, c in row.items()}
            for d2 in pos_degrees:
                for t2 in range(len(layers[d2])):
                    gj = index[(d2, t2)]
                    if gj <= gi:
                        continue
                    coords = bracket_nonneg(d1, t1, d2, t2)
                    row = layer_to_global(d1 + d2, coords)
                    if row:
                        sc[(gi, gj)] = row
    return LieAlgebraSC(N, sc, grading=dict(enumerate(degrees)))
