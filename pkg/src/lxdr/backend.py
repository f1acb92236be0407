"""Selects the numeric kernel backend at import time.

The compiled extension (``lxdr._kernels``, Cython) is preferred when it was
built; otherwise the numpy fallback (``lxdr._kernels_py``) is used. Set
``LXDR_BACKEND=python`` to force the fallback, or ``LXDR_BACKEND=compiled``
to fail loudly when the extension is missing. ``benchmarks/bench_backends.py``
compares the two.
"""

import os

_choice = os.environ.get("LXDR_BACKEND", "auto").strip().lower()

if _choice in ("python", "numpy", "py"):
    from . import _kernels_py as _impl
    BACKEND = "python"
elif _choice in ("auto", "", "compiled", "cython"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        if _choice in ("compiled", "cython"):
            raise ImportError(
                "LXDR_BACKEND=compiled requested but the lxdr._kernels "
                "extension is not built; reinstall with a C toolchain or "
                "unset LXDR_BACKEND")
        from . import _kernels_py as _impl
        BACKEND = "python"
else:
    raise ValueError(
        f"unknown LXDR_BACKEND value {_choice!r}; use 'auto', 'compiled' "
        "or 'python'")

row_sq_dists = _impl.row_sq_dists
pairwise_sq_dists = _impl.pairwise_sq_dists
rbf_kernel = _impl.rbf_kernel
weighted_gram = _impl.weighted_gram


def available_backends():
    """Importable kernel modules keyed by backend name."""
    from . import _kernels_py
    out = {"python": _kernels_py}
    try:
        from . import _kernels
        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
