"""Generic drift indicator over per-window feature vectors.

The indicator keeps a running summary (mean and population standard
deviation) of the features seen since the current phenomenon started, and
flags a drift when any coordinate of the current features leaves the band
``mean +- (eta * stddev + lambda)``. On drift the summary is discarded and
re-seeded from the current features alone, so no pre-drift feature can
influence later decisions. Without drift the summary either accumulates the
new features or is replaced by them, per configuration.

The summary is kept with Welford moments, so its mean and deviation agree
with a batch recomputation over the aggregated features to around 1e-9.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IncompatibleFeaturesError, InvalidParameterError


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Feature values extracted from one window's model."""

    values: np.ndarray
    window_index: int

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.values, dtype=np.float64))
        if arr.ndim != 1:
            raise InvalidParameterError("feature values must be a 1-D vector")
        if not np.all(np.isfinite(arr)):
            raise InvalidParameterError("feature values must be finite")
        object.__setattr__(self, "values", arr)


@dataclass(frozen=True, eq=False)
class FeatureHistory:
    """Running summary of the features aggregated since window ``start``."""

    start: int
    count: int
    mean: np.ndarray
    m2: np.ndarray  # sum of squared deviations from the mean

    @classmethod
    def seed(cls, feature: FeatureVector) -> "FeatureHistory":
        return cls(
            start=feature.window_index,
            count=1,
            mean=feature.values.copy(),
            m2=np.zeros_like(feature.values),
        )

    @property
    def stddev(self) -> np.ndarray:
        """Population standard deviation; zero when a single vector is held."""
        return np.sqrt(self.m2 / self.count)

    def accumulated(self, feature: FeatureVector) -> "FeatureHistory":
        """Summary including ``feature`` (Welford update)."""
        count = self.count + 1
        delta = feature.values - self.mean
        mean = self.mean + delta / count
        m2 = self.m2 + delta * (feature.values - mean)
        return FeatureHistory(start=self.start, count=count, mean=mean, m2=m2)

    def replaced(self, feature: FeatureVector) -> "FeatureHistory":
        """Summary of ``feature`` alone, keeping the phenomenon start."""
        return FeatureHistory(
            start=self.start,
            count=1,
            mean=feature.values.copy(),
            m2=np.zeros_like(feature.values),
        )


@dataclass(frozen=True)
class IndicatorConfig:
    """Threshold ``lam``, sensitivity ``eta`` and the update mode."""

    lam: float
    eta: float
    accumulate: bool = True

    def __post_init__(self):
        if self.lam < 0:
            raise InvalidParameterError("lambda must be >= 0")
        if self.eta < 0:
            raise InvalidParameterError("eta must be >= 0")


@dataclass(frozen=True)
class DriftEvent:
    """A reported drift: when, by which detector, and the statistic that
    crossed its threshold (crossing direction depends on the issuing rule)."""

    timestamp: int
    detector: str
    statistic: float
    threshold: float


def band_excess(history: FeatureHistory, current: FeatureVector, eta: float) -> float:
    """Largest signed exceedance of the band ``mean +- eta*stddev``.

    Positive values mean some coordinate lies outside the band by that
    amount; the drift rule compares this excess against lambda.
    """
    if current.values.shape != history.mean.shape:
        raise IncompatibleFeaturesError(
            f"feature dimension {current.values.shape[0]} does not match "
            f"history dimension {history.mean.shape[0]}"
        )
    band = eta * history.stddev
    above = current.values - (history.mean + band)
    below = (history.mean - band) - current.values
    return float(np.max(np.maximum(above, below)))


def evaluate(
    history: FeatureHistory, current: FeatureVector, cfg: IndicatorConfig
) -> tuple[bool, FeatureHistory]:
    """One indicator step: drift decision plus the successor summary.

    Any coordinate outside the band by more than lambda flags a drift; the
    returned summary is then re-seeded from ``current`` alone. Otherwise the
    summary accumulates ``current`` or is replaced by it per
    ``cfg.accumulate``.
    """
    drift = band_excess(history, current, cfg.eta) > cfg.lam
    if drift:
        return True, FeatureHistory.seed(current)
    if cfg.accumulate:
        return False, history.accumulated(current)
    return False, history.replaced(current)


@dataclass(frozen=True)
class IndicatorRun:
    """Sequential indicator pass: events, pre-decision summaries, final state."""

    events: list[DriftEvent]
    snapshots: list[FeatureHistory]
    final: FeatureHistory | None


def track(
    features: Sequence[FeatureVector],
    cfg: IndicatorConfig,
    detector: str = "indicator",
) -> IndicatorRun:
    """Run the indicator over a feature sequence.

    ``snapshots[k]`` is the summary the decision for ``features[k]`` was made
    against (for the first feature, its own seed), aligned for
    :func:`convergence_trace`.
    """
    events: list[DriftEvent] = []
    snapshots: list[FeatureHistory] = []
    history: FeatureHistory | None = None
    for feature in features:
        if history is None:
            history = FeatureHistory.seed(feature)
            snapshots.append(history)
            continue
        snapshots.append(history)
        excess = band_excess(history, feature, cfg.eta)
        if excess > cfg.lam:
            events.append(
                DriftEvent(
                    timestamp=feature.window_index,
                    detector=detector,
                    statistic=excess,
                    threshold=cfg.lam,
                )
            )
            history = FeatureHistory.seed(feature)
        elif cfg.accumulate:
            history = history.accumulated(feature)
        else:
            history = history.replaced(feature)
    return IndicatorRun(events=events, snapshots=snapshots, final=history)


def convergence_trace(
    histories: Sequence[FeatureHistory], features: Sequence[FeatureVector]
) -> np.ndarray:
    """Per-window divergence ``||v_t - mean_past||_2``.

    For a single stable phenomenon this settles as the running mean
    converges; a persistent rise signals that the summary no longer
    represents the incoming windows.
    """
    return np.array(
        [
            float(np.linalg.norm(f.values - h.mean))
            for h, f in zip(histories, features, strict=True)
        ]
    )
