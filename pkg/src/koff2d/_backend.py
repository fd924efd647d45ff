"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled module `koff2d._kernels` is preferred when importable; the
pure-Python twin `koff2d._kernels_py` implements the identical algorithms.
Set KOFF2D_BACKEND=python (or =cython) to force a choice, or call `use()`
at runtime (the benchmark and the backend tests do).
"""

import os

kernels = None


def _load(name):
    if name == "python":
        from . import _kernels_py
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError("unknown backend %r (expected 'cython' or 'python')" % name)


def use(name):
    """Switch the active kernel backend; returns the kernel module."""
    global kernels
    kernels = _load(name)
    return kernels


def available():
    names = []
    try:
        _load("cython")
        names.append("cython")
    except ImportError:
        pass
    names.append("python")
    return names


_forced = os.environ.get("KOFF2D_BACKEND")
if _forced:
    kernels = _load(_forced)
else:
    try:
        kernels = _load("cython")
    except ImportError:
        kernels = _load("python")


def backend_name():
    return kernels.BACKEND
