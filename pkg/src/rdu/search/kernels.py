"""Kernel selection: the compiled extension when importable, else the
pure-Python fallback.  Override with RDU_KERNEL=python|cython."""

import os

from . import _kernel_py


def load_kernel(name: str | None = None):
    name = name or os.environ.get("RDU_KERNEL", "auto")
    if name in ("py", "python", "pure"):
        return _kernel_py
    if name in ("cy", "cython", "compiled"):
        from . import _kernel_cy

        return _kernel_cy
    if name != "auto":
        raise ValueError(f"unknown kernel {name!r}")
    try:
        from . import _kernel_cy

        return _kernel_cy
    except ImportError:
        return _kernel_py


DEFAULT = load_kernel()
