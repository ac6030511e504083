"""Kernel selection: compiled Cython term arithmetic with pure-Python fallback.

Set ``HKTLAB_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and for debugging).
"""

import os

if os.environ.get("HKTLAB_PURE_PYTHON") == "1":
    from . import _poly_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _poly_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _poly_py as _impl

        BACKEND = "python"

add_terms = _impl.add_terms
neg_terms = _impl.neg_terms
scale_terms = _impl.scale_terms
mul_terms = _impl.mul_terms
diff_terms = _impl.diff_terms
eval_terms = _impl.eval_terms
eval_terms_float = _impl.eval_terms_float


def backend_name():
    """Name of the active kernel backend: "cython" or "python"."""
    return BACKEND
