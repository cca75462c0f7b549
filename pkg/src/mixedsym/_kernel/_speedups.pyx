# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-dict kernels for sparse polynomial arithmetic.

Same API as _pure: polynomials are dicts mapping exponent tuples to
nonzero rational coefficients.
"""

IMPLEMENTATION = "cython"


def dict_add(dict d1, dict d2):
    if not d2:
        return dict(d1)
    if not d1:
        return dict(d2)
    cdef dict out = dict(d1)
    cdef object k, v, c
    for k, v in d2.items():
        c = out.get(k)
        if c is None:
            out[k] = v
        else:
            c = c + v
            if c:
                out[k] = c
            else:
                del out[k]
    return out


def dict_iadd_scaled(dict acc, dict d, scale):
    """acc += scale * d, in place."""
    if not scale:
        return acc
    cdef object k, v, c
    for k, v in d.items():
        c = acc.get(k)
        v = v * scale
        if c is None:
            acc[k] = v
        else:
            c = c + v
            if c:
                acc[k] = c
            else:
                del acc[k]
    return acc


def dict_neg(dict d):
    cdef dict out = {}
    cdef object k, v
    for k, v in d.items():
        out[k] = -v
    return out


def dict_scale(dict d, scale):
    if not scale:
        return {}
    cdef dict out = {}
    cdef object k, v
    for k, v in d.items():
        out[k] = v * scale
    return out


cdef inline tuple _tuple_add(tuple k1, tuple k2):
    cdef Py_ssize_t n = len(k1)
    cdef Py_ssize_t i
    cdef list res = [0] * n
    for i in range(n):
        res[i] = k1[i] + k2[i]
    return tuple(res)


def dict_mul(dict d1, dict d2):
    if not d1 or not d2:
        return {}
    if len(d1) > len(d2):
        d1, d2 = d2, d1
    cdef dict out = {}
    cdef object k1, v1, k2, v2, v, c
    cdef tuple k
    for k1, v1 in d1.items():
        for k2, v2 in d2.items():
            k = _tuple_add(<tuple>k1, <tuple>k2)
            v = v1 * v2
            c = out.get(k)
            if c is None:
                out[k] = v
            else:
                c = c + v
                if c:
                    out[k] = c
                else:
                    del out[k]
    return out


def dict_mul_term(dict d, tuple expo, coeff):
    """Multiply by the single term coeff * x^expo."""
    if not coeff or not d:
        return {}
    cdef dict out = {}
    cdef object k, v
    for k, v in d.items():
        out[_tuple_add(<tuple>k, expo)] = v * coeff
    return out


def dict_diff(dict d, Py_ssize_t idx):
    """Formal partial derivative in variable idx (Laurent exponents ok)."""
    cdef dict out = {}
    cdef object k, v, e, nv, c
    cdef tuple kt, nk
    for k, v in d.items():
        kt = <tuple>k
        e = kt[idx]
        if e:
            nk = kt[:idx] + (e - 1,) + kt[idx + 1:]
            nv = v * e
            c = out.get(nk)
            if c is None:
                out[nk] = nv
            else:
                c = c + nv
                if c:
                    out[nk] = c
                else:
                    del out[nk]
    return out


def dict_total_deriv(dict d, succ):
    """Apply D = d/dx + sum_i x_{succ[i]} * d/dx_i.

    succ[i] is the index of the successor variable of variable i, -1 when
    the i-term is absent (either no successor exists, or i is the x slot
    which contributes the plain d/dx term), -2 when the successor is to be
    truncated to zero (top jet coordinate on an equation chart).
    d/dx is the derivative in slot 0.
    """
    cdef dict out = {}
    cdef list succ_l = list(succ)
    cdef Py_ssize_t nv = len(succ_l)
    cdef Py_ssize_t i, s
    cdef object k, v, e, w, c
    cdef tuple kt, nk
    cdef list lk
    for k, v in d.items():
        kt = <tuple>k
        e = kt[0]
        if e:
            nk = (e - 1,) + kt[1:]
            w = v * e
            c = out.get(nk)
            if c is None:
                out[nk] = w
            else:
                c = c + w
                if c:
                    out[nk] = c
                else:
                    del out[nk]
        for i in range(1, nv):
            e = kt[i]
            if not e:
                continue
            s = succ_l[i]
            if s == -1:
                raise KeyError(i)
            if s == -2:
                continue
            lk = list(kt)
            lk[i] = e - 1
            lk[s] = lk[s] + 1
            nk = tuple(lk)
            w = v * e
            c = out.get(nk)
            if c is None:
                out[nk] = w
            else:
                c = c + w
                if c:
                    out[nk] = c
                else:
                    del out[nk]
    return out
