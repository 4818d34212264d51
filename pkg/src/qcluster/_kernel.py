"""Kernel backend selection: compiled extension if built, pure Python otherwise."""

import os

BACKEND = "python"

if os.environ.get("QCLUSTER_PURE_PYTHON"):
    from ._kernel_py import add_terms, mul_terms  # noqa: F401
else:
    try:
        from ._kernel_c import add_terms, mul_terms  # noqa: F401
        BACKEND = "c"
    except ImportError:
        from ._kernel_py import add_terms, mul_terms  # noqa: F401

__all__ = ["add_terms", "mul_terms", "BACKEND"]
