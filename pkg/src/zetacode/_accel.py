"""Backend selection for the compiled kernels.

Set ``ZETACODE_DISABLE_NUMBA=1`` to force the pure-numpy path, e.g. when
numba is unavailable for the running interpreter or for debugging.
"""
from __future__ import annotations

import contextlib
import os

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

NUMBA_DISABLED = os.environ.get("ZETACODE_DISABLE_NUMBA", "").lower() not in ("", "0", "false", "no")
HAVE_NUMBA = numba is not None

if HAVE_NUMBA and "NUMBA_THREADING_LAYER" not in os.environ:
    # the system TBB is too old for numba; never try it first
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

_backend = "numba" if HAVE_NUMBA and not NUMBA_DISABLED else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise the identity decorator."""
    if not HAVE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return numba.njit(*args, **kwargs)


prange = numba.prange if HAVE_NUMBA else range


def get_backend() -> str:
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


def set_threads(k: int | None) -> None:
    """Limit numba worker threads; ``None`` keeps the default (all cores)."""
    if k is None or not HAVE_NUMBA:
        return
    numba.set_num_threads(max(1, min(int(k), numba.config.NUMBA_NUM_THREADS)))
