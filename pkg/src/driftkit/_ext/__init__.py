"""Kernel backend selection.

Imports the compiled Cython kernels when available, otherwise the NumPy
fallback. ``DRIFTKIT_PURE=1`` forces the fallback. ``BACKEND`` records the
active choice; ``backends()`` lists what can be loaded for benchmarking and
cross-checking.
"""

import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if not os.environ.get("DRIFTKIT_PURE"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

pairwise_distances = _impl.pairwise_distances
recurrence_matrix = _impl.recurrence_matrix
longest_diagonal_run = _impl.longest_diagonal_run
knn_radius = _impl.knn_radius
adwin_scan = _impl.adwin_scan


def backends():
    """Importable kernel backends as ``{name: module}``."""
    found = {"python": _fallback}
    try:
        from . import _kernels

        found["cython"] = _kernels
    except ImportError:
        pass
    return found
