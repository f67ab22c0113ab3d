"""Hot string kernels with compiled/pure backend selection.

The Cython extension is used when it imported successfully; setting the
environment variable DIPLOIDLAB_PURE=1 forces the pure-Python fallback
(useful for benchmarking and debugging).
"""

import os

if os.environ.get("DIPLOIDLAB_PURE") == "1":
    from . import _fallback as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as _impl

IS_COMPILED = _impl.IS_COMPILED
sp_overlap = _impl.sp_overlap
sp_overlap_matrix = _impl.sp_overlap_matrix
sp_overlap_rows = _impl.sp_overlap_rows

__all__ = ["IS_COMPILED", "sp_overlap", "sp_overlap_matrix", "sp_overlap_rows"]
