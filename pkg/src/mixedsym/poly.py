"""Multivariate polynomials over exact rationals.

Coordinates are named; on jet charts the variable in slot 0 is x and is
the only one allowed negative (Laurent) exponents.  Rational functions are
plain numerator/denominator pairs compared by cross-multiplication.
"""

from __future__ import annotations

import re

from . import _kernel as K
from .exact import QQ, ZERO, ONE, qq


class VarTable:
    """Ordered coordinate names.  laurent_index marks the one slot (if any)
    where negative exponents are legal."""

    __slots__ = ("names", "index", "laurent_index")

    def __init__(self, names, laurent_index=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate coordinate names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.laurent_index = laurent_index

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, VarTable) and self.names == other.names
                and self.laurent_index == other.laurent_index)

    def __hash__(self):
        return hash((self.names, self.laurent_index))

    def __repr__(self):
        return "VarTable(%s)" % ", ".join(self.names)


def jet_vartable(order_y, order_z):
    """Chart x, y0..y_a, z0..z_b; either tower may be absent (None)."""
    names = ["x"]
    if order_y is not None:
        names += ["y%d" % i for i in range(order_y + 1)]
    if order_z is not None:
        names += ["z%d" % j for j in range(order_z + 1)]
    return VarTable(names, laurent_index=0)


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero rational coefficient."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms):
        self.table = table
        self.terms = terms
        li = table.laurent_index
        for k in terms:
            for i, e in enumerate(k):
                if e < 0 and i != li:
                    raise ValueError(
                        "negative exponent in %s" % table.names[i])

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def const(cls, table, value):
        value = qq(value)
        if not value:
            return cls(table, {})
        return cls(table, {(0,) * len(table): value})

    @classmethod
    def var(cls, table, name, power=1):
        k = [0] * len(table)
        k[table.index[name]] = power
        return cls(table, {tuple(k): ONE})

    @classmethod
    def monomial(cls, table, expo, coeff=ONE):
        coeff = qq(coeff)
        if not coeff:
            return cls(table, {})
        return cls(table, {tuple(expo): coeff})

    # -- predicates ----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.table == other.table and self.terms == other.terms
        if isinstance(other, int):
            return self == Poly.const(self.table, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.table != self.table:
                raise ValueError("vartable mismatch")
            return other
        return Poly.const(self.table, other)

    def __add__(self, other):
        other = self._coerce(other)
        return Poly(self.table, K.dict_add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.table, K.dict_neg(self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            if other.table != self.table:
                raise ValueError("vartable mismatch")
            return Poly(self.table, K.dict_mul(self.terms, other.terms))
        return Poly(self.table, K.dict_scale(self.terms, qq(other)))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus / substitution ---------------------------------------
    def partial(self, name):
        if name not in self.table.index:
            raise KeyError("unknown variable %r" % name)
        return Poly(self.table, K.dict_diff(self.terms, self.table.index[name]))

    def substitute_zero(self, name):
        idx = self.table.index[name]
        out = {}
        for k, v in self.terms.items():
            e = k[idx]
            if e < 0:
                raise ZeroDivisionError(
                    "substituting 0 into a pole in %s" % name)
            if e == 0:
                out[k] = v
        return Poly(self.table, out)

    def coefficient_of(self, name, power=1):
        """Coefficient polynomial of name**power (other exponents kept)."""
        idx = self.table.index[name]
        out = {}
        for k, v in self.terms.items():
            if k[idx] == power:
                out[k[:idx] + (0,) + k[idx + 1:]] = v
        return Poly(self.table, out)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(k) for k in self.terms)

    def degree_in(self, name):
        idx = self.table.index[name]
        if not self.terms:
            return -1
        return max(k[idx] for k in self.terms)

    def depends_on(self, name):
        idx = self.table.index[name]
        return any(k[idx] for k in self.terms)

    def has_negative_exponents(self):
        li = self.table.laurent_index
        return li is not None and any(k[li] < 0 for k in self.terms)

    def embed(self, table):
        """Re-express on a larger vartable (matching names)."""
        if table == self.table:
            return self
        pos = [table.index[n] for n in self.table.names]
        n = len(table)
        out = {}
        for k, v in self.terms.items():
            nk = [0] * n
            for p, e in zip(pos, k):
                nk[p] = e
            out[tuple(nk)] = v
        return Poly(table, out)

    def rename(self, mapping, table):
        """Rename variables via mapping {old: new} into the given table."""
        pos = [table.index[mapping.get(n, n)] for n in self.table.names]
        n = len(table)
        out = {}
        for k, v in self.terms.items():
            nk = [0] * n
            for p, e in zip(pos, k):
                nk[p] = e
            out[tuple(nk)] = v
        return Poly(table, out)

    # -- printing --------------------------------------------------------
    def sorted_terms(self):
        """Graded lexicographic order over the vartable order."""
        return sorted(self.terms.items(),
                      key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.sorted_terms():
            mono = "*".join(
                (n if e == 1 else "%s^%d" % (n, e))
                for n, e in zip(self.table.names, k) if e)
            if not mono:
                s = str(v)
            elif v == 1:
                s = mono
            elif v == -1:
                s = "-" + mono
            else:
                s = "%s*%s" % (v, mono)
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


class RatFunc:
    """Quotient of two polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        if den is None:
            den = Poly.const(num.table, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_scalar(cls, table, value):
        return cls(Poly.const(table, value))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(self.num._coerce(other))
        return (self.num * other.den) == (other.num * self.den)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(self.num._coerce(other))
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(self.num._coerce(other))
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(self.num._coerce(other))
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(self.num._coerce(other))
        return RatFunc(self.num * other.den, self.den * other.num)

    def __str__(self):
        if self.den == Poly.const(self.den.table, 1):
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def integer_content_cleared(polys):
    """Scale a list of Polys by a common rational so all coefficients are
    integers with overall content 1 and the leading one is positive."""
    from math import gcd
    dens = []
    for p in polys:
        for v in p.terms.values():
            dens.append(v.denominator)
    if not dens:
        return polys
    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    nums = []
    for p in polys:
        for v in p.terms.values():
            nums.append(abs(int(v.numerator * (lcm // v.denominator))))
    g = 0
    for n in nums:
        g = gcd(g, n)
    scale = QQ(lcm, g if g else 1)
    lead = None
    for p in polys:
        if p.terms:
            lead = p.sorted_terms()[0][1]
            break
    if lead is not None and lead * scale < 0:
        scale = -scale
    return [p * scale for p in polys]


def ratfunc_matrix_kernel(rows):
    """Kernel of a matrix with Poly entries, over the fraction field.

    Rows are lists of Polys.  Returns a list of kernel vectors with Poly
    entries, denominators cleared and integer content removed; each vector
    satisfies M . v == 0 symbolically.
    """
    if not rows:
        return []
    table = rows[0][0].table
    ncols = len(rows[0])
    m = [[RatFunc(p) for p in row] for row in rows]
    nrows = len(m)
    # fraction-field Gaussian elimination, recording pivot columns
    piv_of_row = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_of_row.append(c)
        r += 1
        if r == nrows:
            break
    pivset = set(piv_of_row)
    free = [c for c in range(ncols) if c not in pivset]
    out = []
    one = RatFunc(Poly.const(table, 1))
    for f in free:
        vec = [RatFunc(Poly.zero(table)) for _ in range(ncols)]
        vec[f] = one
        for i, p in enumerate(piv_of_row):
            vec[p] = -(m[i][f] / m[i][p])
        # clear denominators: multiply entry i by the product of the other
        # entries' denominators
        polys = []
        for idx, e in enumerate(vec):
            other = Poly.const(table, 1)
            for jdx, e2 in enumerate(vec):
                if jdx != idx:
                    other = other * e2.den
            polys.append(e.num * other)
        polys = integer_content_cleared(polys)
        # symbolic verification
        for row in rows:
            acc = Poly.zero(table)
            for a, v in zip(row, polys):
                acc = acc + a * v
            if not acc.is_zero():
                raise AssertionError("kernel vector fails symbolic check")
        out.append(polys)
    return out


# ---------------------------------------------------------------------------
# text syntax:  integers or a/b rationals, variables x / y<digits> / z<digits>,
# operators + - * ^ and parentheses; juxtaposition is not allowed.
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz]\d*)|([()+\-*^/]))")


class PolyParseError(ValueError):
    pass


def parse_poly(text, table):
    """Parse the CLI polynomial syntax into a Poly on the given vartable."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolyParseError("bad token at %r" % text[pos:])
            break
        pos = m.end()
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("var", m.group(2)))
        else:
            tokens.append(("op", m.group(3)))
    state = {"i": 0}

    def peek():
        return tokens[state["i"]] if state["i"] < len(tokens) else (None, None)

    def take():
        tok = peek()
        state["i"] += 1
        return tok

    def atom():
        kind, val = take()
        if kind == "int":
            k2, v2 = peek()
            if (k2, v2) == ("op", "/"):
                take()
                k3, v3 = take()
                if k3 != "int":
                    raise PolyParseError("expected integer denominator")
                return Poly.const(table, QQ(val, v3))
            return Poly.const(table, val)
        if kind == "var":
            name = {"y": "y0", "z": "z0"}.get(val, val)
            if name not in table.index:
                raise PolyParseError("unknown variable %r" % val)
            return Poly.var(table, name)
        if (kind, val) == ("op", "("):
            p = expr()
            k2, v2 = take()
            if (k2, v2) != ("op", ")"):
                raise PolyParseError("missing )")
            return p
        raise PolyParseError("unexpected token %r" % (val,))

    def factor():
        # unary minus binds looser than ^: -y1^2 means -(y1^2)
        if peek() == ("op", "-"):
            take()
            return -factor()
        p = atom()
        while peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "int":
                raise PolyParseError("exponent must be an integer")
            p = p ** val
        return p

    def term():
        p = factor()
        while peek() == ("op", "*"):
            take()
            p = p * factor()
        return p

    def expr():
        p = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            _, op = take()
            q = term()
            p = p + q if op == "+" else p - q
        return p

    p = expr()
    if state["i"] != len(tokens):
        raise PolyParseError("trailing input")
    return p
