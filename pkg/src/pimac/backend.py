"""Kernel backend selection: compiled extension if present, numpy fallback else.

The compiled module is built from _kernel.pyx at install time; environments
without a C toolchain simply run on pimac._kernel_py.  Both expose the same
three functions (objective, grid_scan, coordinate_descent) with identical
semantics, so callers only ever import ``kernel`` from here.
"""

from __future__ import annotations

from . import _kernel_py

try:
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

kernel = _compiled if _compiled is not None else _kernel_py


def backend_name() -> str:
    """Name of the kernel backend in use: 'compiled' or 'pure-python'."""
    return kernel.BACKEND_NAME


def available_backends() -> dict:
    """All importable kernel backends keyed by name (for benchmarks/tests)."""
    out = {_kernel_py.BACKEND_NAME: _kernel_py}
    if _compiled is not None:
        out[_compiled.BACKEND_NAME] = _compiled
    return out
