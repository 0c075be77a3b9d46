"""Numba acceleration toggle.

The hot grid kernels are JIT-compiled when numba is importable and the
environment variable ``MCOM_NUMBA`` is not set to ``0``/``false``/``off``.
Otherwise the same source runs as plain numpy/Python, so every code path
stays exercisable without a compiler.
"""

import os
from contextlib import contextmanager

_FLAG = os.environ.get("MCOM_NUMBA", "1").strip().lower()
USE_NUMBA = _FLAG not in ("0", "false", "off", "no")

if USE_NUMBA:
    # workqueue is the always-available threading layer and supports thread
    # masking; the default (tbb) is version-sensitive and warns when broken.
    os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")
    try:
        import numba
        from numba import njit, prange
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:
    def njit(*args, **kwargs):
        """Pass-through decorator standing in for numba.njit."""
        if args and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap

    prange = range


@contextmanager
def thread_count(workers):
    """Limit the numba threading layer to ``workers`` threads for one kernel call.

    A no-op in pure-numpy mode. The requested count is clamped to the number
    of threads the runtime was launched with, which is numba's hard upper
    bound.
    """
    if not USE_NUMBA or workers is None:
        yield
        return
    import numba

    previous = numba.get_num_threads()
    limit = max(1, min(int(workers), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(limit)
    try:
        yield
    finally:
        numba.set_num_threads(previous)
