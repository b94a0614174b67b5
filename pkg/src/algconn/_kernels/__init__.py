"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``ALGCONN_PURE=1`` to force the pure fallback even when the extension is
built (used by the benchmark and the cross-implementation tests).
"""

import os

if os.environ.get("ALGCONN_PURE"):
    from . import _pure as _impl

    HAVE_SPEEDUPS = False
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        HAVE_SPEEDUPS = True
    except ImportError:
        from . import _pure as _impl  # type: ignore[no-redef]

        HAVE_SPEEDUPS = False

canon_perm = _impl.canon_perm
canon_key = _impl.canon_key
free_tree_layouts = _impl.free_tree_layouts
count_free_trees = _impl.count_free_trees


def backend() -> str:
    """Name of the kernel implementation in use."""
    return "compiled" if HAVE_SPEEDUPS else "pure"
