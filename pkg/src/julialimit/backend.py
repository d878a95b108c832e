"""Kernel backend selection and thread control.

Two implementations of every hot kernel exist: numba @njit (default) and a
pure-numpy fallback.  Selection is per-call via the environment:

  JULIA_LIMIT_BACKEND = auto | numba | numpy   (default: auto)
  JULIA_LIMIT_THREADS = integer, 0 = all cores (affects runtime only; output
                        bytes are identical for any thread count)
"""

import os

_VALID = ("auto", "numba", "numpy")


def _numba_available():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def backend_name():
    """Resolve the active backend name ('numba' or 'numpy') from the env."""
    choice = os.environ.get("JULIA_LIMIT_BACKEND", "auto").strip().lower()
    if choice not in _VALID:
        raise ValueError(
            f"JULIA_LIMIT_BACKEND={choice!r}: expected one of {', '.join(_VALID)}"
        )
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _numba_available():
            raise RuntimeError("JULIA_LIMIT_BACKEND=numba but numba is not importable")
        return "numba"
    return "numba" if _numba_available() else "numpy"


def thread_count():
    """Requested thread cap; 0 means 'all available'."""
    raw = os.environ.get("JULIA_LIMIT_THREADS", "0").strip()
    try:
        k = int(raw)
    except ValueError:
        raise ValueError(f"JULIA_LIMIT_THREADS={raw!r}: expected an integer")
    if k < 0:
        raise ValueError("JULIA_LIMIT_THREADS must be >= 0")
    return k


def apply_thread_limit():
    """Push the env thread cap into numba before a parallel kernel runs."""
    if backend_name() != "numba":
        return
    import numba

    limit = thread_count()
    available = numba.config.NUMBA_NUM_THREADS
    numba.set_num_threads(available if limit == 0 else min(limit, available))
