"""NumPy implementations of the hot kernels.

These are the reference semantics; the compiled extension in ``_kernels.pyx``
mirrors them bit-for-bit on the comparisons that matter (distance predicates,
run lengths, cut scans). Distances are computed from coordinate differences,
not the dot-product expansion, so identical points give an exact zero.
"""

import numpy as np


def pairwise_distances(a, b):
    """Euclidean distance matrix between the rows of ``a`` and ``b``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def recurrence_matrix(a, b, radius):
    """Boolean matrix marking row pairs within ``radius`` of each other."""
    return pairwise_distances(a, b) <= radius


def longest_diagonal_run(mask):
    """Longest run of True along any constant-offset diagonal of ``mask``."""
    mask = np.asarray(mask, dtype=bool)
    n_rows, n_cols = mask.shape
    best = 0
    for offset in range(-(n_rows - 1), n_cols):
        diag = np.diagonal(mask, offset=offset)
        if not diag.any():
            continue
        # Run lengths via boundaries of the padded 0/1 sequence.
        padded = np.concatenate(([0], diag.astype(np.int8), [0]))
        edges = np.flatnonzero(np.diff(padded))
        runs = edges[1::2] - edges[::2]
        best = max(best, int(runs.max()))
    return best


def knn_radius(coords, k):
    """Mean over rows of the distance to each row's k-th nearest neighbour."""
    coords = np.asarray(coords, dtype=np.float64)
    dist = pairwise_distances(coords, coords)
    np.fill_diagonal(dist, np.inf)
    kth = np.partition(dist, k - 1, axis=1)[:, k - 1]
    return float(kth.mean())


def adwin_scan(prefix, stride=1):
    """Best cut of a buffer by absolute difference of split means.

    ``prefix`` holds cumulative sums with a leading zero, so the buffer
    length is ``len(prefix) - 1``. Cut ``p`` splits the buffer into its
    first ``p`` values and the remaining ``length - p``. Returns
    ``(max_statistic, cut)`` with the smallest maximizing cut; requires a
    buffer of at least two values.
    """
    prefix = np.asarray(prefix, dtype=np.float64)
    length = prefix.shape[0] - 1
    cuts = np.arange(1, length, stride)
    left = prefix[cuts] / cuts
    right = (prefix[length] - prefix[cuts]) / (length - cuts)
    stats = np.abs(left - right)
    i = int(np.argmax(stats))
    return float(stats[i]), int(cuts[i])
