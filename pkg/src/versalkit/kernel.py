"""Kernel selection: compiled term-dict ops when available, else pure Python.

Set VERSAL_KIT_PURE=1 to force the pure-Python kernel.
"""

import os

if os.environ.get("VERSAL_KIT_PURE"):
    from . import _kernel_py as impl
else:
    try:
        from . import _speedups as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as impl

add_terms = impl.add_terms
sub_terms = impl.sub_terms
neg_terms = impl.neg_terms
scale_terms = impl.scale_terms
mul_terms = impl.mul_terms
axpy_terms = impl.axpy_terms
lead_term = impl.lead_term


def backend_name():
    return impl.BACKEND


ORDER_CODES = {"degrevlex": 0, "lex": 1, "negdegrevlex": 2}
