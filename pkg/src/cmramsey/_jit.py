"""JIT selection for the hot kernels.

Set ``CM_RAMSEY_DISABLE_JIT=1`` before import to run every kernel as plain
Python over numpy arrays (slow, but handy for debugging and for checking
that both paths agree).
"""

import os

DISABLE_JIT = os.environ.get("CM_RAMSEY_DISABLE_JIT", "").strip() not in ("", "0")

try:
    if DISABLE_JIT:
        raise ImportError("numba disabled by CM_RAMSEY_DISABLE_JIT")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
