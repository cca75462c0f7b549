"""Pure-Python term-dict kernels for sparse polynomial arithmetic.

A polynomial is a dict mapping exponent tuples to nonzero rational
coefficients.  These functions are the hot inner loop of the determining
equation solver; a Cython build of the same API lives in _speedups.
"""

from ..exact import QQ

IMPLEMENTATION = "python"


def dict_add(d1, d2):
    if not d2:
        return dict(d1)
    if not d1:
        return dict(d2)
    out = dict(d1)
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


def dict_iadd_scaled(acc, d, scale):
    """acc += scale * d, in place."""
    if not scale:
        return acc
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


def dict_neg(d):
    return {k: -v for k, v in d.items()}

def dict_scale(d, scale):
    if not scale:
        return {}
    return {k: v * scale for k, v in d.items()}


def dict_mul(d1, d2):
    if not d1 or not d2:
        return {}
    if len(d1) > len(d2):
        d1, d2 = d2, d1
    out = {}
    for k1, v1 in d1.items():
        for k2, v2 in d2.items():
            k = tuple(a + b for a, b in zip(k1, k2))
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


def dict_mul_term(d, expo, coeff):
    """Multiply by the single term coeff * x^expo."""
    if not coeff or not d:
        return {}
    return {tuple(a + b for a, b in zip(k, expo)): v * coeff
            for k, v in d.items()}


def dict_diff(d, idx):
    """Formal partial derivative in variable idx (Laurent exponents ok)."""
    out = {}
    for k, v in d.items():
        e = k[idx]
        if e:
            nk = k[:idx] + (e - 1,) + k[idx + 1:]
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


def dict_total_deriv(d, succ):
    """Apply D = d/dx + sum_i x_{succ[i]} * d/dx_i.

    succ[i] is the index of the successor variable of variable i, -1 when
    the i-term is absent (either no successor exists, or i is the x slot
    which contributes the plain d/dx term), -2 when the successor is to be
    truncated to zero (top jet coordinate on an equation chart).
    d/dx is the derivative in slot 0.
    """
    out = {}
    nv = len(succ)
    for k, v in d.items():
        e0 = k[0]
        if e0:
            nk = (e0 - 1,) + k[1:]
            w = v * e0
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
            e = k[i]
            if not e:
                continue
            s = succ[i]
            if s == -1:
                raise KeyError(i)
            if s == -2:
                continue
            lk = list(k)
            lk[i] = e - 1
            lk[s] += 1
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
