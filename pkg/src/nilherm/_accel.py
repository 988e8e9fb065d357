"""Optional numba acceleration.

Set ``NILHERM_DISABLE_NUMBA=1`` in the environment (before import) to force
the pure-numpy code path even when numba is installed.
"""

import os

_DISABLED = os.environ.get("NILHERM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled by NILHERM_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    njit = None
    HAS_NUMBA = False


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"
