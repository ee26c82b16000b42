"""Backend selection for the hot batch kernels.

The compiled Cython extension is preferred; the numpy implementation is the
fallback. Set ACCEPTANCE_ENGINE_BACKEND=python to force the fallback (the
benchmark uses this to compare both).
"""
import os

if os.environ.get("ACCEPTANCE_ENGINE_BACKEND", "").lower() in ("python", "numpy"):
    from . import _kernels_np as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_np as _impl

BACKEND = _impl.BACKEND
batch_forward = _impl.batch_forward
batch_backward = _impl.batch_backward
