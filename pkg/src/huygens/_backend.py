"""Kernel backend selection.

Prefers the compiled extension when it was built; otherwise falls back to the
numpy implementation.  Set HUYGENS_PURE_PYTHON=1 to force the fallback (used
by the benchmark and for debugging).
"""

import os

if os.environ.get("HUYGENS_PURE_PYTHON") == "1":
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"


def backend_name() -> str:
    """Which kernel implementation this process is running on."""
    return BACKEND
