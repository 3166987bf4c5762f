"""Backend selection for the hot inner loops.

The pair-sum and pair-binning kernels dominate runtime.  They are compiled
with numba when it is importable, unless ``RIESZLAB_NO_NUMBA=1`` forces the
pure-numpy fallback (used by ``benchmarks/bench_accel.py`` to compare the
two paths, and on machines without an LLVM toolchain).
"""

import os

NUMBA_DISABLED = os.environ.get("RIESZLAB_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled by RIESZLAB_NO_NUMBA")
    from numba import njit  # noqa: F401

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


BACKEND = "numba" if HAVE_NUMBA else "numpy"
