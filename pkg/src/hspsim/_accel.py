"""Numba detection and the environment switch for the pure-numpy fallback.

Set ``HSPSIM_DISABLE_NUMBA=1`` to force every kernel in :mod:`hspsim.kernels`
onto its numpy implementation.
"""
import os

_FLAG = os.environ.get("HSPSIM_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _FLAG in ("1", "true", "yes", "on")

try:
    import numba
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn

USE_NUMBA = NUMBA_AVAILABLE and not DISABLED_BY_ENV
