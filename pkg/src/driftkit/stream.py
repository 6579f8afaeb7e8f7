"""Streams, fixed-length windows and synthetic stream generators.

A stream is a sequence of scalar observations indexed by consecutive integer
timestamps. Windowing slices it into fixed-length, non-overlapping blocks;
a trailing block shorter than the window length is withheld and reported
separately, never padded or silently dropped.

All generators are deterministic given their arguments. Pseudorandom output
comes from ``numpy.random.default_rng`` (PCG64), so a seed pins the stream
bit-for-bit across machines.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import InvalidParameterError


class Observation(NamedTuple):
    """One stream sample: an integer timestamp and a real value."""

    timestamp: int
    value: float


@dataclass(frozen=True, eq=False)
class StreamWindow:
    """Fixed-length block of consecutive observations.

    ``values[j]`` is the stream value at timestamp ``index * n + j`` where
    ``n`` is the window length.
    """

    index: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidParameterError("window values must be a non-empty 1-D sequence")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def start_timestamp(self) -> int:
        return self.index * self.n

    @property
    def end_timestamp(self) -> int:
        """Timestamp of the window's last observation."""
        return self.start_timestamp + self.n - 1


@dataclass(frozen=True)
class GroundTruth:
    """Timestamps at which the generating process changed."""

    drift_points: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(int(p) for p in self.drift_points)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise InvalidParameterError("drift points must be strictly increasing")
        if any(p < 0 for p in pts):
            raise InvalidParameterError("drift points must be non-negative")
        object.__setattr__(self, "drift_points", pts)


class WindowIterator(Iterator[StreamWindow]):
    """Pull-based windower over an observation stream.

    Yields one :class:`StreamWindow` per ``n`` consecutive observations.
    After exhaustion, ``remainder`` holds the withheld trailing observations
    (fewer than ``n`` of them, possibly none).

    The source must have contiguous timestamps increasing by one, starting
    at a multiple of ``n`` so windows align with their indices.
    """

    def __init__(self, stream: Iterable[Observation], n: int):
        if n < 1:
            raise InvalidParameterError("window length n must be >= 1")
        self.n = n
        self.remainder: list[Observation] = []
        self._source = iter(stream)
        self._expected: int | None = None
        self._done = False

    def __iter__(self) -> "WindowIterator":
        return self

    def __next__(self) -> StreamWindow:
        if self._done:
            raise StopIteration
        buf = self.remainder
        for obs in self._source:
            ts = int(obs.timestamp)
            if self._expected is None:
                if ts % self.n != 0:
                    raise InvalidParameterError(
                        f"stream must start at a multiple of n={self.n}, got timestamp {ts}"
                    )
                self._expected = ts
            if ts != self._expected:
                raise InvalidParameterError(
                    f"timestamps must increase by 1: expected {self._expected}, got {ts}"
                )
            self._expected += 1
            buf.append(obs)
            if len(buf) == self.n:
                window = StreamWindow(
                    index=buf[0].timestamp // self.n,
                    values=np.array([o.value for o in buf], dtype=np.float64),
                )
                self.remainder = []
                return window
        self._done = True
        raise StopIteration


def window_stream(stream: Iterable[Observation], n: int) -> WindowIterator:
    """Slice a stream into fixed-length, non-overlapping windows.

    Returns a lazy iterator; see :class:`WindowIterator` for the remainder
    contract. ``floor(len/n)`` windows are produced in total.
    """
    return WindowIterator(stream, n)


def window_all(
    stream: Iterable[Observation], n: int
) -> tuple[list[StreamWindow], list[Observation]]:
    """Eagerly window a stream; returns ``(windows, withheld remainder)``."""
    it = window_stream(stream, n)
    windows = list(it)
    return windows, it.remainder


def _observations(values: np.ndarray, start: int = 0) -> list[Observation]:
    return [Observation(start + k, float(v)) for k, v in enumerate(values)]


def generate_piecewise_gaussian(
    segments: Sequence[tuple[int, float, float]], seed: int
) -> tuple[list[Observation], GroundTruth]:
    """Concatenate Gaussian segments with known change points.

    Each segment is ``(length, mean, stddev)``. The ground truth lists the
    first timestamp of every segment after the first. Identical seeds give
    identical streams.
    """
    if not segments:
        raise InvalidParameterError("at least one segment is required")
    for length, _, stddev in segments:
        if length < 1:
            raise InvalidParameterError("segment lengths must be >= 1")
        if stddev < 0:
            raise InvalidParameterError("segment stddev must be >= 0")
    rng = np.random.default_rng(seed)
    parts = [rng.normal(mean, stddev, int(length)) for length, mean, stddev in segments]
    drift_points = np.cumsum([int(s[0]) for s in segments])[:-1]
    values = np.concatenate(parts)
    return _observations(values), GroundTruth(tuple(int(p) for p in drift_points))


def _lorenz_derivative(state: np.ndarray, sigma: float, rho: float, beta: float) -> np.ndarray:
    x, y, z = state
    return np.array([sigma * (y - x), x * (rho - z) - y, x * y - beta * z])


def generate_lorenz(
    count: int,
    dt: float = 0.01,
    initial: Sequence[float] = (1.0, 1.0, 1.0),
    params: tuple[float, float, float] = (10.0, 28.0, 8.0 / 3.0),
) -> list[Observation]:
    """x-coordinate of the Lorenz system under fixed-step RK4.

    The first observation is the initial x; each further observation follows
    one RK4 step of size ``dt``. Defaults are the classical chaotic regime.
    """
    if count < 1:
        raise InvalidParameterError("count must be >= 1")
    if dt <= 0:
        raise InvalidParameterError("dt must be > 0")
    state = np.asarray(initial, dtype=np.float64)
    if state.shape != (3,) or not np.all(np.isfinite(state)):
        raise InvalidParameterError("initial state must be a finite 3-vector")
    sigma, rho, beta = (float(p) for p in params)

    xs = np.empty(count)
    xs[0] = state[0]
    for k in range(1, count):
        k1 = _lorenz_derivative(state, sigma, rho, beta)
        k2 = _lorenz_derivative(state + 0.5 * dt * k1, sigma, rho, beta)
        k3 = _lorenz_derivative(state + 0.5 * dt * k2, sigma, rho, beta)
        k4 = _lorenz_derivative(state + dt * k3, sigma, rho, beta)
        state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        xs[k] = state[0]
    return _observations(xs)


def generate_logistic_map(count: int, r: float, x0: float) -> list[Observation]:
    """Iterate ``x_{k+1} = r * x_k * (1 - x_k)`` from ``x0`` in (0, 1)."""
    if count < 1:
        raise InvalidParameterError("count must be >= 1")
    if not (0.0 < x0 < 1.0) or not math.isfinite(x0):
        raise InvalidParameterError("x0 must lie strictly inside (0, 1)")
    xs = np.empty(count)
    x = float(x0)
    xs[0] = x
    for k in range(1, count):
        x = r * x * (1.0 - x)
        xs[k] = x
    return _observations(xs)
