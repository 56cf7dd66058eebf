"""Pick the compiled kernels when available, else the pure-Python ones."""

import os

from . import _fallback

if os.environ.get("LINPERS_PURE_PYTHON", "") not in ("", "0"):
    kernels = _fallback
    COMPILED = False
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _fallback
        COMPILED = False
    else:
        COMPILED = True

BACKEND = "cython" if COMPILED else "python"


def get(name: str | None = None):
    """Return the kernel module by name (``"cython"`` / ``"python"``) or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _fallback
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
