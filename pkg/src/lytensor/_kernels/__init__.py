"""Kernel dispatch: compiled Cython extension when available, numpy fallback
otherwise. `BACKEND` records which one was picked; set LYTENSOR_PURE=1 to
force the fallback (used by the benchmark and tests)."""
import os

if os.environ.get("LYTENSOR_PURE"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _cykernels as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

aberth_roots = _impl.aberth_roots
eulerian_sum = _impl.eulerian_sum

__all__ = ["aberth_roots", "eulerian_sum", "BACKEND"]
