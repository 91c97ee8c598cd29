"""Optional numba acceleration.

Set ``LENSRING_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
The kernels are written in the numba-compatible subset either way, so both
paths execute the same algorithm.
"""
import os

_DISABLED = os.environ.get("LENSRING_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _numba_njit
except ImportError:
    _numba_njit = None

NUMBA_ENABLED = _numba_njit is not None


def njit(func=None, **kwargs):
    if _numba_njit is None:
        if callable(func):
            return func
        return lambda f: f
    if callable(func):
        return _numba_njit(cache=True, **kwargs)(func)
    return _numba_njit(cache=True, **kwargs)
