"""Backend selection for the elimination kernel.

The compiled kernel is used when it imports and ``QUADALG_PURE`` is unset.  It
works on dense int64 storage and signals overflow, in which case the call is
transparently redone by the unbounded pure-Python kernel.  Both backends return
identical canonical output.
"""

import os

from . import _elim_py

try:
    if os.environ.get("QUADALG_PURE"):
        raise ImportError("pure backend forced")
    from . import _elim_c
except ImportError:
    _elim_c = None

BACKEND = "cython" if _elim_c is not None else "python"

# Dense storage is wasteful on very wide, very sparse inputs.
_DENSE_LIMIT = 12_000_000


def _use_dense(rows, ncols):
    return _elim_c is not None and rows and len(rows) * max(ncols, 1) <= _DENSE_LIMIT


def rref_int(rows, ncols):
    rows = list(rows)
    if _use_dense(rows, ncols):
        try:
            return _elim_c.rref_int(rows, ncols)
        except OverflowError:
            pass
    return _elim_py.rref_int(rows, ncols)


def rank_int(rows, ncols):
    rows = list(rows)
    if _use_dense(rows, ncols):
        try:
            return _elim_c.rank_int(rows, ncols)
        except OverflowError:
            pass
    return _elim_py.rank_int(rows, ncols)
