"""Scoring of detector output against known drift points.

Attribution rule: each true drift at time ``d`` owns the interval from
``d`` up to (excluding) the next true drift or the stream end, and claims
the first event inside it as its detection. Every unclaimed event is a
false alarm. All quantities are in observation units; windowed detectors
stamp events at window ends, so their delays include the wait for the
window to fill.
"""

import math
from dataclasses import dataclass, field

from .errors import InvalidParameterError
from .indicator import DriftEvent
from .stream import GroundTruth


@dataclass(frozen=True)
class EvaluationReport:
    """Detection quality summary.

    ``mtbfa`` is the mean gap between consecutive false alarms; with fewer
    than two false alarms it defaults to the stream length and
    ``mtbfa_defaulted`` is set. ``mtd`` is the mean delay over detected
    drifts only (NaN when nothing was detected). ``mdr`` is the fraction of
    true drifts that went undetected. ``per_drift`` pairs each true drift
    with its claimed detection timestamp, or None.
    """

    mtbfa: float
    mtbfa_defaulted: bool
    mtd: float
    mdr: float
    detected_count: int
    false_alarm_count: int
    per_drift: list[tuple[int, int | None]] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "mtbfa": self.mtbfa,
            "mtbfa_defaulted": self.mtbfa_defaulted,
            "mtd": None if math.isnan(self.mtd) else self.mtd,
            "mdr": self.mdr,
            "detected_count": self.detected_count,
            "false_alarm_count": self.false_alarm_count,
            "per_drift": [[d, det] for d, det in self.per_drift],
        }

    def to_csv_row(self, label: str) -> str:
        mtd = "" if math.isnan(self.mtd) else repr(self.mtd)
        return (
            f"{label},{self.mtbfa!r},{int(self.mtbfa_defaulted)},{mtd},"
            f"{self.mdr!r},{self.detected_count},{self.false_alarm_count}"
        )

    CSV_HEADER = "label,mtbfa,mtbfa_defaulted,mtd,mdr,detected,false_alarms"


def evaluate(
    events: list[DriftEvent], truth: GroundTruth, stream_len: int
) -> EvaluationReport:
    """Score ``events`` against ``truth`` for a stream of ``stream_len``
    observations. Events must be sorted and within the stream."""
    timestamps = [e.timestamp for e in events]
    if any(b < a for a, b in zip(timestamps, timestamps[1:])):
        raise InvalidParameterError("events must be sorted by timestamp")
    if any(t < 0 or t >= stream_len for t in timestamps):
        raise InvalidParameterError(
            f"event timestamps must lie within [0, {stream_len})"
        )

    drifts = list(truth.drift_points)
    bounds = drifts[1:] + [stream_len]
    per_drift: list[tuple[int, int | None]] = []
    claimed: set[int] = set()
    for d, end in zip(drifts, bounds):
        detection = next(
            (t for t in timestamps if d <= t < end and t not in claimed), None
        )
        if detection is not None:
            claimed.add(detection)
        per_drift.append((d, detection))

    false_alarms = [t for t in timestamps if t not in claimed]
    delays = [det - d for d, det in per_drift if det is not None]

    if len(false_alarms) >= 2:
        gaps = [b - a for a, b in zip(false_alarms, false_alarms[1:])]
        mtbfa, defaulted = sum(gaps) / len(gaps), False
    else:
        mtbfa, defaulted = float(stream_len), True

    mtd = sum(delays) / len(delays) if delays else math.nan
    mdr = (len(drifts) - len(delays)) / len(drifts) if drifts else 0.0
    return EvaluationReport(
        mtbfa=mtbfa,
        mtbfa_defaulted=defaulted,
        mtd=mtd,
        mdr=mdr,
        detected_count=len(delays),
        false_alarm_count=len(false_alarms),
        per_drift=per_drift,
    )
