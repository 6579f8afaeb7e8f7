"""Readers and writers for streams, ground truth and drift events.

Formats:
  - stream CSV: one value per line, optional single header line;
  - stream JSONL: ``{"t": int, "x": float}`` per line;
  - ground truth JSON: ``{"drift_points": [int, ...]}``;
  - drift events JSONL: ``{"t": int, "detector": str, "stat": float,
    "threshold": float}`` per line.

Path arguments accept ``"-"`` for stdin/stdout. Readers yield lazily so
unbounded inputs never need full materialization.
"""

import json
import sys
from contextlib import contextmanager
from typing import IO, Iterable, Iterator

from .errors import InvalidParameterError
from .indicator import DriftEvent
from .stream import GroundTruth, Observation


@contextmanager
def open_read(path):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, "r", encoding="utf-8") as fh:
            yield fh


@contextmanager
def open_write(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def iter_csv_stream(fh: IO[str]) -> Iterator[Observation]:
    """Yield observations from CSV text, tolerating one header line."""
    t = 0
    for lineno, line in enumerate(fh):
        text = line.strip()
        if not text:
            continue
        try:
            value = float(text)
        except ValueError:
            if lineno == 0:
                continue  # header
            raise InvalidParameterError(f"line {lineno + 1}: not a number: {text!r}")
        yield Observation(t, value)
        t += 1


def iter_jsonl_stream(fh: IO[str]) -> Iterator[Observation]:
    """Yield observations from JSONL records with ``t`` and ``x`` fields."""
    expected = None
    for lineno, line in enumerate(fh):
        text = line.strip()
        if not text:
            continue
        try:
            record = json.loads(text)
            t, x = int(record["t"]), float(record["x"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            raise InvalidParameterError(f"line {lineno + 1}: expected {{\"t\", \"x\"}} record")
        if expected is not None and t != expected:
            raise InvalidParameterError(
                f"line {lineno + 1}: timestamps must increase by 1, got {t}"
            )
        expected = t + 1
        yield Observation(t, x)


def read_stream(path: str, fmt: str = "csv") -> list[Observation]:
    """Read a whole stream from ``path`` (``-`` for stdin)."""
    with open_read(path) as fh:
        if fmt == "csv":
            return list(iter_csv_stream(fh))
        if fmt == "jsonl":
            return list(iter_jsonl_stream(fh))
    raise InvalidParameterError(f"unknown stream format: {fmt!r}")


def write_stream(observations: Iterable[Observation], path: str) -> None:
    """Write stream values as CSV, one value per line."""
    with open_write(path) as fh:
        for obs in observations:
            fh.write(repr(obs.value) + "\n")


def write_ground_truth(truth: GroundTruth, path: str) -> None:
    with open_write(path) as fh:
        json.dump({"drift_points": list(truth.drift_points)}, fh)
        fh.write("\n")


def read_ground_truth(path: str) -> GroundTruth:
    with open_read(path) as fh:
        data = json.load(fh)
    return GroundTruth(tuple(int(p) for p in data["drift_points"]))


def write_events(events: Iterable[DriftEvent], path: str) -> None:
    with open_write(path) as fh:
        for ev in events:
            fh.write(
                json.dumps(
                    {
                        "t": ev.timestamp,
                        "detector": ev.detector,
                        "stat": ev.statistic,
                        "threshold": ev.threshold,
                    }
                )
            )
            fh.write("\n")


def read_events(path: str) -> list[DriftEvent]:
    events = []
    with open_read(path) as fh:
        for line in fh:
            text = line.strip()
            if not text:
                continue
            record = json.loads(text)
            events.append(
                DriftEvent(
                    timestamp=int(record["t"]),
                    detector=str(record["detector"]),
                    statistic=float(record["stat"]),
                    threshold=float(record["threshold"]),
                )
            )
    return events
