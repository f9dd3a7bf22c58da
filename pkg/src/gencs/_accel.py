"""Backend switch for the hot kernels.

Set ``GENCS_DISABLE_NUMBA=1`` to force the pure-numpy implementations.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("GENCS_DISABLE_NUMBA", "0").lower() in ("", "0", "false", "no")


def njit(fn):
    """``numba.njit(cache=True)`` when available, identity otherwise."""
    if NUMBA_AVAILABLE:
        return numba.njit(cache=True)(fn)
    return fn


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
