"""Backend selection for the integer kernels.

The compiled module is used when it imports; otherwise the pure-Python
fallback is used.  Setting ``HECKEXT_PURE_PYTHON=1`` forces the fallback.
:func:`use_backend` switches at runtime (tests and benchmarks use it).
"""

import os
from contextlib import contextmanager

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

__all__ = ["BACKEND", "available_backends", "use_backend", "set_backend",
           "int_matmul", "int_rref", "int_det"]

_IMPLS = {"python": _pykernels}
if _compiled is not None:
    _IMPLS["cython"] = _compiled


def available_backends():
    return sorted(_IMPLS)


def set_backend(name):
    global BACKEND, int_matmul, int_rref, int_det
    try:
        impl = _IMPLS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}") from None
    BACKEND = name
    int_matmul = impl.int_matmul
    int_rref = impl.int_rref
    int_det = impl.int_det


@contextmanager
def use_backend(name):
    previous = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


BACKEND = "python"
if _compiled is not None and not os.environ.get("HECKEXT_PURE_PYTHON"):
    set_backend("cython")
else:
    set_backend("python")
