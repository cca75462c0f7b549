"""Kernel selection: compiled extension when available, pure Python otherwise.

Set MIXEDSYM_PURE=1 to force the pure-Python implementation.
"""

import os

if os.environ.get("MIXEDSYM_PURE"):
    from . import _pure as kernel
else:
    try:
        from . import _speedups as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as kernel

IMPLEMENTATION = kernel.IMPLEMENTATION
dict_add = kernel.dict_add
dict_iadd_scaled = kernel.dict_iadd_scaled
dict_neg = kernel.dict_neg
dict_scale = kernel.dict_scale
dict_mul = kernel.dict_mul
dict_mul_term = kernel.dict_mul_term
dict_diff = kernel.dict_diff
dict_total_deriv = kernel.dict_total_deriv
