"""Kernel selection: compiled extension when importable, numpy otherwise.

Set ``THETANULL_PURE=1`` to force the numpy fallback.
"""
import os

from . import _kernel_py

NAME = "python"
theta_sums = _kernel_py.theta_sums

if os.environ.get("THETANULL_PURE", "") != "1":
    try:
        from . import _kernel
    except ImportError:
        pass
    else:
        NAME = "compiled"
        theta_sums = _kernel.theta_sums


def get_kernel(name: str | None = None):
    """Return ``theta_sums`` for ``"compiled"``, ``"python"`` or the active default."""
    if name is None:
        return theta_sums
    if name == "python":
        return _kernel_py.theta_sums
    if name == "compiled":
        from . import _kernel

        return _kernel.theta_sums
    raise ValueError(f"unknown kernel {name!r}")
