"""Five streaming change detectors behind one driver.

Per-observation detectors (cumulative sum, Page-Hinkley, adaptive split
window) consume single values and emit events at observation timestamps;
per-window detectors (Fourier distance, cross-recurrence) consume full
fixed-length windows and emit events at window-end timestamps.

Every detector discards its phenomenon state when it fires, so post-drift
behavior is a pure function of the observations from the new phenomenon's
start; ``restart_index`` reports where that is, which the compliance probes
use to replay suffixes.

Pure step functions (``cusum_step``, ``pht_step``, ``adwin_check``,
``udft_features``, ``udft_step``, ``crcdd_step``) carry the per-detector
update rules; the classes add buffering, event construction and reset
bookkeeping on top of them.
"""

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

import numpy as np

from . import _ext
from .embedding import EmbeddingParams, PhaseSpace, embed, neighbors_within, _radius_of
from .errors import (
    IncompatibleFeaturesError,
    InvalidParameterError,
    ShortStreamWarning,
)
from .indicator import DriftEvent
from .stream import Observation, StreamWindow


class DetectorKind(str, Enum):
    CUSUM = "cusum"
    PHT = "pht"
    ADWIN = "adwin"
    UDFT = "udft"
    CRCDD = "crcdd"


WINDOWED_KINDS = frozenset({DetectorKind.UDFT, DetectorKind.CRCDD})

#: Exponent period conventions for the windowed Fourier features. "n" is the
#: orthogonal transform (constant windows have exactly one nonzero
#: coefficient); "n-1" reuses the first sample's phase for the last sample,
#: which leaks a 1/n-sized residue into every coefficient. Kept selectable
#: because both appear in the wild.
DFT_PERIODS = ("n", "n-1")


@dataclass(frozen=True)
class DetectorConfig:
    """Configuration for one detector instance.

    ``window_n`` applies to the windowed kinds, ``embedding`` to the
    cross-recurrence detector, ``negative_mode`` to the cumulative sum,
    ``adwin_stride`` bounds the split-window scan cost, and ``literal_mdl``
    flips the cross-recurrence rule to fire on a large diagonal instead of
    a small one (see :func:`crcdd_step`).
    """

    kind: DetectorKind
    lam: float
    window_n: int | None = None
    embedding: EmbeddingParams | None = None
    negative_mode: bool = False
    adwin_stride: int = 1
    dft_period: str = "n"
    literal_mdl: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", DetectorKind(self.kind))
        if self.lam < 0:
            raise InvalidParameterError("lambda must be >= 0")
        if self.adwin_stride < 1:
            raise InvalidParameterError("adwin_stride must be >= 1")
        if self.dft_period not in DFT_PERIODS:
            raise InvalidParameterError(f"dft_period must be one of {DFT_PERIODS}")
        if self.kind in WINDOWED_KINDS:
            if self.window_n is None or self.window_n < 1:
                raise InvalidParameterError(f"{self.kind.value} requires window_n >= 1")
        if self.kind is DetectorKind.CRCDD:
            if self.embedding is None:
                raise InvalidParameterError("crcdd requires embedding parameters")
            states = self.window_n - (self.embedding.m - 1) * self.embedding.tau
            if states < 2:
                raise InvalidParameterError(
                    "crcdd needs windows yielding at least 2 phase states; "
                    f"window_n={self.window_n} gives {states}"
                )


# ---------------------------------------------------------------------------
# Pure update rules
# ---------------------------------------------------------------------------


def cusum_step(
    g_prev: float, x: float, lam: float, negative_mode: bool = False
) -> tuple[float, bool]:
    """Cumulative-sum update from ``g_prev``.

    Positive mode clamps the running sum at zero from below and fires at
    ``g >= lam``; negative mode clamps from above and fires at ``g <= -lam``.
    The caller resets the state to zero after a drift.
    """
    if negative_mode:
        g = min(0.0, g_prev + x)
        return g, g <= -lam
    g = max(0.0, g_prev + x)
    return g, g >= lam


class PhtState(NamedTuple):
    """Page-Hinkley running state: sample count, running mean, cumulative
    deviation from the running mean, and the minimum of that cumulation."""

    count: int
    mean: float
    cum_dev: float
    min_dev: float


PHT_START = PhtState(count=0, mean=0.0, cum_dev=0.0, min_dev=0.0)


def pht_step(state: PhtState, x: float, lam: float) -> tuple[bool, PhtState]:
    """Page-Hinkley update: fire when the cumulative deviation rises more
    than ``lam`` above its running minimum.

    The mean used at each step is the sequential running mean including the
    current value, so the first value of a phenomenon contributes a zero
    deviation. The caller resets to ``PHT_START`` after a drift.
    """
    count = state.count + 1
    mean = state.mean + (x - state.mean) / count
    cum_dev = state.cum_dev + (x - mean)
    min_dev = min(state.min_dev, cum_dev) if state.count else cum_dev
    drift = abs(cum_dev - min_dev) > lam
    return drift, PhtState(count, mean, cum_dev, min_dev)


def adwin_check(
    values: Iterable[float], lam: float, stride: int = 1
) -> tuple[bool, int | None]:
    """Exhaustive split test over all observations of one phenomenon.

    Fires when some cut splits the buffer into halves whose means differ by
    more than ``lam``; returns the smallest maximizing cut ``k`` (the last
    index of the left half). Fewer than two observations give no decision.
    """
    arr = np.asarray(list(values), dtype=np.float64)
    if arr.size < 2:
        return False, None
    prefix = np.concatenate(([0.0], np.cumsum(arr)))
    stat, cut = _ext.adwin_scan(prefix, stride)
    return stat > lam, cut - 1


def udft_features(window, period: str = "n") -> np.ndarray:
    """Low-half Fourier coefficients of one window.

    Returns the ``floor((n-1)/2) + 1`` coefficients ``c_j`` with the
    doubled-amplitude folding for ``j > 0``, normalized by the window length.
    ``period`` selects the exponent convention (see :data:`DFT_PERIODS`);
    a length-1 window yields the single coefficient ``c_0 = x_0``.
    """
    if period not in DFT_PERIODS:
        raise InvalidParameterError(f"dft period must be one of {DFT_PERIODS}")
    values = np.asarray(getattr(window, "values", window), dtype=np.float64)
    n = values.size
    if n == 1:
        return values.astype(np.complex128)
    denom = n if period == "n" else n - 1
    js = np.arange((n - 1) // 2 + 1)
    phases = np.exp(-2j * np.pi * np.outer(js, np.arange(n)) / denom)
    scale = np.where(js == 0, 1.0, 2.0) / n
    return scale * (phases @ values)


def udft_distance(prev: np.ndarray, curr: np.ndarray) -> float:
    """L2 distance between coefficient sets, real and imaginary parts as
    separate coordinates (equals the complex-modulus norm)."""
    if prev.shape != curr.shape:
        raise IncompatibleFeaturesError(
            f"coefficient counts differ: {prev.shape[0]} vs {curr.shape[0]}"
        )
    return float(np.linalg.norm(prev - curr))


def udft_step(prev: np.ndarray, curr: np.ndarray, lam: float) -> bool:
    """Fire when consecutive coefficient sets are more than ``lam`` apart."""
    return udft_distance(prev, curr) > lam


def max_diagonal_length(matrix: np.ndarray) -> int:
    """Longest run of ones along any constant-offset diagonal."""
    return int(_ext.longest_diagonal_run(np.asarray(matrix, dtype=bool)))


def crcdd_step(
    prev_space: PhaseSpace,
    curr_space: PhaseSpace,
    lam: float,
    literal: bool = False,
) -> tuple[bool, int]:
    """Cross-recurrence comparison of two phase spaces.

    Builds the cross-recurrence matrix with an adaptive radius computed over
    the union of both state sets, then takes the maximum diagonal length
    (``mdl``). A long diagonal means the windows share dynamics, so the
    shipped rule fires on ``mdl <= lam`` (similarity lost). ``literal=True``
    instead fires on ``mdl > lam``, the comparison direction some texts
    print; it flags similarity rather than change.
    """
    union = np.vstack([prev_space.coords, curr_space.coords])
    radius = _radius_of(union)
    matrix = neighbors_within(prev_space, curr_space, radius)
    mdl = max_diagonal_length(matrix)
    drift = (mdl > lam) if literal else (mdl <= lam)
    return drift, mdl


# ---------------------------------------------------------------------------
# Streaming detector classes
# ---------------------------------------------------------------------------


class _WindowAccumulator:
    """Groups contiguous observations into aligned fixed-length windows."""

    def __init__(self, n: int):
        self.n = n
        self._pending: list[Observation] = []
        self._expected: int | None = None

    def push(self, obs: Observation) -> StreamWindow | None:
        ts = int(obs.timestamp)
        if self._expected is None:
            if ts % self.n != 0:
                raise InvalidParameterError(
                    f"stream must start at a multiple of n={self.n}, got timestamp {ts}"
                )
        elif ts != self._expected:
            raise InvalidParameterError(
                f"timestamps must increase by 1: expected {self._expected}, got {ts}"
            )
        self._expected = ts + 1
        self._pending.append(obs)
        if len(self._pending) < self.n:
            return None
        window = StreamWindow(
            index=self._pending[0].timestamp // self.n,
            values=np.array([o.value for o in self._pending], dtype=np.float64),
        )
        self._pending = []
        return window


class Detector:
    """Streaming detector interface.

    ``update`` consumes one observation and returns the event it issued, if
    any; ``last_statistic`` exposes the statistic of the most recent
    decision for tracing (None when the step made no decision).

    ``model_summary`` returns the detector's accumulated phenomenon model:
    the state it distills from past windows to represent what it has
    learned, excluding raw sample buffers and the single-window comparison
    context. Detectors that only compare recent windows summarize nothing.

    ``restart_index`` maps a drift timestamp to the first timestamp the
    post-drift behavior depends on, defining the suffix that must reproduce
    the original events when replayed on a fresh instance.
    """

    name: str
    lam: float
    last_statistic: float | None

    def update(self, obs: Observation) -> DriftEvent | None:
        raise NotImplementedError

    def reset(self) -> None:
        raise NotImplementedError

    def model_summary(self) -> tuple:
        raise NotImplementedError

    def restart_index(self, event_timestamp: int) -> int:
        raise NotImplementedError


class CusumDetector(Detector):
    """Clamped cumulative sum of raw observations (single-value windows)."""

    name = DetectorKind.CUSUM.value

    def __init__(self, lam: float, negative_mode: bool = False):
        self.lam = lam
        self.negative_mode = negative_mode
        self.last_statistic = None
        self._g = 0.0

    def update(self, obs: Observation) -> DriftEvent | None:
        g, drift = cusum_step(self._g, obs.value, self.lam, self.negative_mode)
        self.last_statistic = g
        if drift:
            self._g = 0.0
            threshold = -self.lam if self.negative_mode else self.lam
            return DriftEvent(obs.timestamp, self.name, g, threshold)
        self._g = g
        return None

    def reset(self) -> None:
        self._g = 0.0
        self.last_statistic = None

    def model_summary(self) -> tuple:
        return (self._g,)

    def restart_index(self, event_timestamp: int) -> int:
        return event_timestamp + 1


class PageHinkleyDetector(Detector):
    """Cumulative deviation from the running mean against its minimum."""

    name = DetectorKind.PHT.value

    def __init__(self, lam: float):
        self.lam = lam
        self.last_statistic = None
        self._state = PHT_START

    def update(self, obs: Observation) -> DriftEvent | None:
        drift, state = pht_step(self._state, obs.value, self.lam)
        self.last_statistic = abs(state.cum_dev - state.min_dev)
        if drift:
            self._state = PHT_START
            return DriftEvent(obs.timestamp, self.name, self.last_statistic, self.lam)
        self._state = state
        return None

    def reset(self) -> None:
        self._state = PHT_START
        self.last_statistic = None

    def model_summary(self) -> tuple:
        return tuple(self._state)

    def restart_index(self, event_timestamp: int) -> int:
        return event_timestamp + 1


class AdaptiveWindowDetector(Detector):
    """Exhaustive mean-split test over the observations of one phenomenon.

    Keeps incremental prefix sums so each step costs one O(t) vectorized
    scan. The phenomenon restarts at the triggering observation, which stays
    in the buffer as the new first sample.
    """

    name = DetectorKind.ADWIN.value

    def __init__(self, lam: float, stride: int = 1):
        self.lam = lam
        self.stride = stride
        self.last_statistic = None
        self._prefix = np.zeros(16)
        self._count = 0
        self.last_cut: int | None = None

    def _append(self, value: float) -> None:
        if self._count + 2 > self._prefix.size:
            grown = np.zeros(self._prefix.size * 2)
            grown[: self._count + 1] = self._prefix[: self._count + 1]
            self._prefix = grown
        self._prefix[self._count + 1] = self._prefix[self._count] + value
        self._count += 1

    def update(self, obs: Observation) -> DriftEvent | None:
        self._append(obs.value)
        self.last_statistic = None
        self.last_cut = None
        if self._count < 2:
            return None
        stat, cut = _ext.adwin_scan(self._prefix[: self._count + 1], self.stride)
        self.last_statistic = stat
        self.last_cut = cut - 1
        if stat > self.lam:
            self._prefix[0] = 0.0
            self._count = 0
            self._append(obs.value)
            return DriftEvent(obs.timestamp, self.name, stat, self.lam)
        return None

    def reset(self) -> None:
        self._prefix = np.zeros(16)
        self._count = 0
        self.last_statistic = None
        self.last_cut = None

    def model_summary(self) -> tuple:
        # The raw buffer is scan context for the split test, not a distilled
        # model of the phenomenon; nothing is learned across comparisons.
        return ()

    def restart_index(self, event_timestamp: int) -> int:
        return event_timestamp


class FourierDistanceDetector(Detector):
    """Distance between consecutive windows' Fourier coefficients."""

    name = DetectorKind.UDFT.value

    def __init__(self, lam: float, window_n: int, period: str = "n"):
        if window_n < 1:
            raise InvalidParameterError("window_n must be >= 1")
        self.lam = lam
        self.window_n = window_n
        self.period = period
        self.last_statistic = None
        self._acc = _WindowAccumulator(window_n)
        self._prev: np.ndarray | None = None

    def update(self, obs: Observation) -> DriftEvent | None:
        window = self._acc.push(obs)
        self.last_statistic = None
        if window is None:
            return None
        coeffs = udft_features(window, self.period)
        prev, self._prev = self._prev, coeffs
        if prev is None:
            return None
        dist = udft_distance(prev, coeffs)
        self.last_statistic = dist
        if dist > self.lam:
            return DriftEvent(obs.timestamp, self.name, dist, self.lam)
        return None

    def reset(self) -> None:
        self._acc = _WindowAccumulator(self.window_n)
        self._prev = None
        self.last_statistic = None

    def model_summary(self) -> tuple:
        # Only the previous window is retained, as comparison context.
        return ()

    def restart_index(self, event_timestamp: int) -> int:
        return event_timestamp + 1 - self.window_n


class CrossRecurrenceDetector(Detector):
    """Maximum shared diagonal between consecutive windows' phase spaces."""

    name = DetectorKind.CRCDD.value

    def __init__(
        self,
        lam: float,
        window_n: int,
        embedding: EmbeddingParams,
        literal: bool = False,
    ):
        if window_n < embedding.min_window_length() + 1:
            raise InvalidParameterError(
                "window_n must yield at least 2 phase states; need "
                f"window_n >= {embedding.min_window_length() + 1}"
            )
        self.lam = lam
        self.window_n = window_n
        self.embedding = embedding
        self.literal = literal
        self.last_statistic = None
        self._acc = _WindowAccumulator(window_n)
        self._prev: PhaseSpace | None = None

    def update(self, obs: Observation) -> DriftEvent | None:
        window = self._acc.push(obs)
        self.last_statistic = None
        if window is None:
            return None
        space = embed(window, self.embedding)
        prev, self._prev = self._prev, space
        if prev is None:
            return None
        drift, mdl = crcdd_step(prev, space, self.lam, self.literal)
        self.last_statistic = float(mdl)
        if drift:
            return DriftEvent(obs.timestamp, self.name, float(mdl), self.lam)
        return None

    def reset(self) -> None:
        self._acc = _WindowAccumulator(self.window_n)
        self._prev = None
        self.last_statistic = None

    def model_summary(self) -> tuple:
        # Only the previous window's phase space is retained, as context.
        return ()

    def restart_index(self, event_timestamp: int) -> int:
        return event_timestamp + 1 - self.window_n


def build_detector(cfg: DetectorConfig) -> Detector:
    """Instantiate the detector described by ``cfg``."""
    if cfg.kind is DetectorKind.CUSUM:
        return CusumDetector(cfg.lam, cfg.negative_mode)
    if cfg.kind is DetectorKind.PHT:
        return PageHinkleyDetector(cfg.lam)
    if cfg.kind is DetectorKind.ADWIN:
        return AdaptiveWindowDetector(cfg.lam, cfg.adwin_stride)
    if cfg.kind is DetectorKind.UDFT:
        return FourierDistanceDetector(cfg.lam, cfg.window_n, cfg.dft_period)
    if cfg.kind is DetectorKind.CRCDD:
        return CrossRecurrenceDetector(
            cfg.lam, cfg.window_n, cfg.embedding, cfg.literal_mdl
        )
    raise InvalidParameterError(f"unknown detector kind: {cfg.kind}")


def run_detector(
    cfg: DetectorConfig,
    stream: Iterable[Observation],
    trace: list[tuple[int, float]] | None = None,
) -> list[DriftEvent]:
    """Stream all observations through a fresh detector and collect events.

    Windowed detectors on streams shorter than one window produce no events
    and a :class:`ShortStreamWarning`. When ``trace`` is given, every
    decision statistic is appended to it as ``(timestamp, statistic)``.
    """
    detector = build_detector(cfg)
    events: list[DriftEvent] = []
    seen = 0
    for obs in stream:
        seen += 1
        event = detector.update(obs)
        if trace is not None and detector.last_statistic is not None:
            trace.append((obs.timestamp, detector.last_statistic))
        if event is not None:
            events.append(event)
    if cfg.kind in WINDOWED_KINDS and seen < cfg.window_n:
        warnings.warn(
            f"stream of {seen} observations is shorter than one "
            f"{cfg.kind.value} window (n={cfg.window_n}); no decision made",
            ShortStreamWarning,
            stacklevel=2,
        )
    return events
