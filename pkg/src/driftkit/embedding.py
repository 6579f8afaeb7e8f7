"""Phase-space reconstruction by time-delay embedding.

A window of n scalars embeds into N = n - (m-1)*tau states, where state k
has coordinates ``(x_k, x_{k+tau}, ..., x_{k+(m-1)tau})`` in window-local
indices. States are order-independent points on the reconstructed attractor,
so neighbor queries and radii are plain geometry on the state set.

Conventions (documented divergences from common alternatives):
  - neighbor tests use a closed ball (``distance <= radius``) so exact ties
    and zero self-distances count as neighbors;
  - the adaptive neighbor count is ``ceil(ln N)`` clamped to [1, N-1];
  - the metric is Euclidean throughout.
"""

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _ext
from .errors import (
    IncompatibleSpacesError,
    InsufficientStatesError,
    InvalidParameterError,
    WindowTooShortError,
)
from .stream import StreamWindow


@dataclass(frozen=True)
class EmbeddingParams:
    """Embedding dimension ``m`` and time delay ``tau``, both >= 1."""

    m: int
    tau: int

    def __post_init__(self):
        if self.m < 1:
            raise InvalidParameterError("embedding dimension m must be >= 1")
        if self.tau < 1:
            raise InvalidParameterError("time delay tau must be >= 1")

    def min_window_length(self) -> int:
        """Shortest window that yields at least one state."""
        return (self.m - 1) * self.tau + 1


@dataclass(frozen=True, eq=False)
class PhaseState:
    """One embedded state: its coordinates and origin index in the window."""

    coords: np.ndarray
    origin_index: int


@dataclass(frozen=True, eq=False)
class PhaseSpace:
    """Set of embedded states as an (N, m) coordinate matrix."""

    coords: np.ndarray
    params: EmbeddingParams

    def __post_init__(self):
        arr = np.asarray(self.coords, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] != self.params.m:
            raise InvalidParameterError("coords must be a non-empty (N, m) matrix")
        object.__setattr__(self, "coords", arr)

    def __len__(self) -> int:
        return int(self.coords.shape[0])

    def state(self, k: int) -> PhaseState:
        return PhaseState(coords=self.coords[k], origin_index=k)

    def states(self) -> Iterator[PhaseState]:
        return (self.state(k) for k in range(len(self)))


@dataclass(frozen=True, eq=False)
class SupervisedPairs:
    """Inputs are the first m-1 coordinates of each state, outputs the m-th."""

    inputs: np.ndarray
    outputs: np.ndarray


def embed(window: StreamWindow, params: EmbeddingParams) -> PhaseSpace:
    """Reconstruct the phase space of one window.

    Produces exactly ``N = n - (m-1)*tau`` states; raises
    :class:`WindowTooShortError` when the window cannot yield any.
    """
    n = window.n
    minimum = params.min_window_length()
    if n < minimum:
        raise WindowTooShortError(
            f"window of length {n} too short for (m={params.m}, tau={params.tau}); "
            f"need n >= {minimum}"
        )
    count = n - (params.m - 1) * params.tau
    offsets = np.arange(params.m) * params.tau
    coords = window.values[np.arange(count)[:, None] + offsets[None, :]]
    return PhaseSpace(coords=coords, params=params)


def to_supervised(space: PhaseSpace) -> SupervisedPairs:
    """Split each state into an (m-1)-dimensional input and a scalar output."""
    if space.params.m < 2:
        raise InvalidParameterError(
            "m must be >= 2 to split states into inputs and outputs"
        )
    return SupervisedPairs(inputs=space.coords[:, :-1], outputs=space.coords[:, -1])


def join_supervised(pairs: SupervisedPairs) -> np.ndarray:
    """Inverse of :func:`to_supervised`: re-join inputs and outputs into states."""
    return np.hstack([pairs.inputs, pairs.outputs[:, None]])


def neighbor_count(n_states: int) -> int:
    """Adaptive neighbor count: ``ceil(ln N)`` clamped to [1, N-1]."""
    return max(1, min(n_states - 1, math.ceil(math.log(n_states))))


def adaptive_radius(space: PhaseSpace) -> float:
    """Average, over states, of the distance to each state's k-th nearest
    neighbor with ``k = neighbor_count(N)``."""
    if len(space) < 2:
        raise InsufficientStatesError("adaptive radius needs at least 2 states")
    return _radius_of(space.coords)


def _radius_of(coords: np.ndarray) -> float:
    """Adaptive radius over a raw (N, m) coordinate set (N >= 2)."""
    return float(_ext.knn_radius(coords, neighbor_count(coords.shape[0])))


def neighbors_within(
    space_a: PhaseSpace, space_b: PhaseSpace, radius: float
) -> np.ndarray:
    """Boolean N x N matrix: entry (a, b) marks states within ``radius``."""
    if radius < 0:
        raise InvalidParameterError("radius must be >= 0")
    if len(space_a) != len(space_b) or space_a.params != space_b.params:
        raise IncompatibleSpacesError(
            "phase spaces must have equal state counts and embedding parameters"
        )
    return np.asarray(_ext.recurrence_matrix(space_a.coords, space_b.coords, radius))
