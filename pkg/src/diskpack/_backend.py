"""Kernel backend selection.

The numeric hot loops in :mod:`diskpack.kernels` are written as plain
scalar/ndarray float64 code, so the same source runs either through numba's
nopython compiler or as ordinary Python over numpy scalars.

Set ``DISKPACK_BACKEND=numpy`` in the environment before import to disable
numba (useful for debugging and as a dependency-light fallback).  The default
is ``numba``; if numba is not importable we fall back to numpy silently.
"""

import os

BACKEND = os.environ.get("DISKPACK_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ValueError(
        f"DISKPACK_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}"
    )

USING_NUMBA = BACKEND == "numba"

if USING_NUMBA:
    try:
        from numba import njit  # noqa: F401
    except ImportError:  # pragma: no cover
        USING_NUMBA = False

if not USING_NUMBA:

    def njit(*args, **kwargs):  # noqa: F811
        """No-op replacement for numba.njit."""
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap
