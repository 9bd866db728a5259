"""Configuration and report types for the verification harness.

Everything here serializes to JSON deterministically: field order is fixed,
floats are written in shortest round-trip form, and no timing or
machine-dependent data enters a report.  Identical configurations therefore
produce byte-identical reports, independent of thread count.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from ..errors import ConfigError, DimensionTooLarge
from ..gauge import Gauge, parse_gauge

__all__ = [
    "DEFAULT_DIMS",
    "DEFAULT_GAUGES",
    "DEFAULT_P_GRID",
    "SuiteConfig",
    "Violation",
    "SuiteReport",
    "dumps_json",
]

DEFAULT_DIMS = (2, 3, 5, 8, 16)
DEFAULT_GAUGES = (
    "lp:1",
    "lp:1.5",
    "lp:2",
    "lp:4",
    "kyfan:1",
    "kyfan:2",
    "conv:2:lp:1",
    "conv:3:lp:2",
)
DEFAULT_P_GRID = (1.0, 1.5, 2.0, 3.0, 4.0, 5.0)
MAX_DIM = 64


def dumps_json(obj) -> str:
    """Canonical JSON used for every artifact the package writes."""
    return json.dumps(obj, ensure_ascii=False, allow_nan=False, indent=2) + "\n"


@dataclass(frozen=True)
class SuiteConfig:
    """Shared knobs for all suites.

    ``samples_per_case`` counts independent random draws per (suite, dim);
    each draw is evaluated against every applicable gauge / exponent
    combination.  Thread count is deliberately *not* part of the
    configuration: it must never influence results.
    """

    seed: int = 1
    dims: tuple[int, ...] = DEFAULT_DIMS
    samples_per_case: int = 500
    gauges: tuple[str, ...] = DEFAULT_GAUGES
    p_grid: tuple[float, ...] = DEFAULT_P_GRID
    rel_tol: float = 1e-9
    abs_tol: float = 1e-10

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "gauges", tuple(str(s) for s in self.gauges))
        object.__setattr__(self, "p_grid", tuple(float(p) for p in self.p_grid))
        if not isinstance(self.seed, int):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")
        if not self.dims:
            raise ConfigError("dims must be nonempty")
        for d in self.dims:
            if d < 1:
                raise ConfigError(f"dims entries must be >= 1, got {d}")
            if d > MAX_DIM:
                raise DimensionTooLarge(f"dims entries must be <= {MAX_DIM}, got {d}")
        if self.samples_per_case < 1:
            raise ConfigError("samples_per_case must be >= 1")
        if not self.gauges:
            raise ConfigError("gauges must be nonempty")
        for p in self.p_grid:
            if math.isnan(p) or p < 1.0:
                raise ConfigError(f"p_grid entries must be >= 1, got {p}")
        if not (self.rel_tol >= 0.0 and self.abs_tol >= 0.0):
            raise ConfigError("tolerances must be nonnegative")

    def parsed_gauges(self) -> tuple[tuple[str, Gauge], ...]:
        return tuple((s, parse_gauge(s)) for s in self.gauges)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "dims": list(self.dims),
            "samples_per_case": self.samples_per_case,
            "gauges": list(self.gauges),
            "p_grid": list(self.p_grid),
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SuiteConfig":
        if not isinstance(obj, dict):
            raise ConfigError(f"suite config must be an object, got {type(obj).__name__}")
        known = {
            "seed",
            "dims",
            "samples_per_case",
            "gauges",
            "p_grid",
            "rel_tol",
            "abs_tol",
        }
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(**obj)
        except TypeError as exc:
            raise ConfigError(f"bad suite config: {exc}") from exc


@dataclass(frozen=True)
class Violation:
    """One failed inequality instance, with enough payload to replay it."""

    case: str
    lhs: float
    rhs: float
    ratio: float
    payload: dict

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "payload": self.payload,
        }


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one suite run.

    ``worst_ratio`` is the maximum of lhs/rhs over all cases whose rhs
    exceeds the absolute tolerance (guarding 0/0 equality cases); a passing
    suite has no violations, which keeps ``worst_ratio <= 1 + rel_tol``.
    ``recorded`` holds diagnostic maxima that are tracked but not asserted.
    """

    suite_name: str
    config: SuiteConfig
    cases_run: int
    violations: tuple[Violation, ...]
    worst_ratio: float
    passed: bool
    recorded: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "suite_name": self.suite_name,
            "config": self.config.to_json(),
            "cases_run": self.cases_run,
            "violations": [v.to_json() for v in self.violations],
            "worst_ratio": self.worst_ratio,
            "passed": self.passed,
            "recorded": {k: self.recorded[k] for k in sorted(self.recorded)},
        }
