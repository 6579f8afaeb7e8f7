"""Run configuration: flat key/value files plus shipped tuned defaults.

A run config is a single flat JSON object whose keys mirror the command-line
flags; command-line flags override file values. ``tuned_defaults`` exposes
the packaged thresholds calibrated on the pinned drift-injection fixture.
"""

import json
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from importlib import resources

from .errors import InvalidParameterError


@dataclass
class RunConfig:
    """Flat run configuration; every field maps to a CLI flag."""

    detector: str | None = None
    lam: float | None = None
    n: int | None = None
    m: int | None = None
    tau: int | None = None
    negative: bool = False
    stride: int = 1
    dft_period: str = "n"
    literal_mdl: bool = False
    seed: int = 0
    input: str | None = None
    output: str | None = None
    format: str = "csv"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameterError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise InvalidParameterError("config file must hold a flat JSON object")
    return RunConfig.from_dict(data)


def save_config(cfg: RunConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cfg.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


@lru_cache(maxsize=1)
def tuned_defaults() -> dict:
    """Packaged thresholds and the fixture they were calibrated on."""
    text = resources.files("driftkit").joinpath("data/tuned_thresholds.json").read_text()
    return json.loads(text)


def default_lambda(kind) -> float:
    """Shipped default threshold for a detector kind."""
    lambdas = tuned_defaults()["lambdas"]
    name = getattr(kind, "value", kind)
    try:
        return float(lambdas[name])
    except KeyError:
        raise InvalidParameterError(f"no tuned threshold for detector {name!r}")
