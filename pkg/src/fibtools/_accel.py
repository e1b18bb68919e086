"""Backend selection for the hot kernels.

``FIBTOOLS_BACKEND=numpy`` forces the pure-numpy path; ``numba`` (or the
default ``auto``) uses numba when it imports cleanly.
"""
from __future__ import annotations

import contextlib
import os

ENV_VAR = "FIBTOOLS_BACKEND"

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None


def _default_backend() -> str:
    requested = os.environ.get(ENV_VAR, "auto").strip().lower()
    if requested not in ("auto", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be auto, numba or numpy, got {requested!r}")
    if requested == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


_backend = _default_backend()


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


@contextlib.contextmanager
def use_backend(name: str):
    previous = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def set_workers(count: int | None) -> None:
    """Cap numba's thread pool. Results never depend on this value."""
    if count is None or not HAVE_NUMBA:
        return
    numba.set_num_threads(max(1, min(count, numba.config.NUMBA_NUM_THREADS)))


if HAVE_NUMBA:
    # the bundled TBB is too old for numba and only produces a warning
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
    njit = numba.njit
    prange = numba.prange
else:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn

    prange = range
