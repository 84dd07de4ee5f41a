"""
Analysis configuration.

Loaded from a JSON file (``--config``); anything left out falls back to the
defaults shipped in ``config/analysis.json``. Keys starting with ``_`` are
comments and ignored. Example::

    {
      "_description": "default battery",
      "alpha": 0.05,
      "metrics": ["fMeasure", "executionTime", "sus"],
      "correlationPairs": [["fMeasure", "sus"]],
      "censorDnfTimes": false,
      "seed": null
    }
"""

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Optional

from kgc_study_kit.errors import ConfigError, StudyIOError
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

METRICS = (
    "precision",
    "recall",
    "fMeasure",
    "executionTime",
    "sus",
    "pssuqOverall",
    "pssuqSysuse",
    "pssuqInfoqual",
    "pssuqInterqual",
    "tlx",
    "rawTlx",
    "wp",
)

_CORRELATED = ("fMeasure", "executionTime", "sus", "pssuqOverall", "tlx", "wp")
DEFAULT_CORRELATION_PAIRS = tuple(combinations(_CORRELATED, 2))

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "analysis.json"

_KEYS = {"alpha", "metrics", "correlationPairs", "censorDnfTimes", "seed"}


@dataclass(frozen=True)
class AnalysisConfig:
    alpha: float = 0.05
    metrics: tuple = METRICS
    correlation_pairs: tuple = field(default=DEFAULT_CORRELATION_PAIRS)
    censor_dnf_times: bool = False
    seed: Optional[int] = None

    def __post_init__(self):
        alpha = self.alpha
        if isinstance(alpha, bool) or not isinstance(alpha, (int, float)) or not math.isfinite(alpha):
            raise ConfigError(f"alpha must be a number, got {alpha!r}")
        if not 0 < alpha <= 0.5:
            raise ConfigError(f"alpha must lie in (0, 0.5], got {alpha}")
        object.__setattr__(self, "alpha", float(alpha))

        metrics = tuple(self.metrics)
        if not metrics:
            raise ConfigError("metrics must name at least one metric")
        for m in metrics:
            if m not in METRICS:
                raise ConfigError(f"unknown metric {m!r}; expected one of {', '.join(METRICS)}")
        if len(set(metrics)) != len(metrics):
            raise ConfigError("metrics lists a metric twice")
        object.__setattr__(self, "metrics", metrics)

        pairs = []
        for pair in self.correlation_pairs:
            pair = tuple(pair)
            if len(pair) != 2:
                raise ConfigError(f"correlation pair must have two metrics, got {list(pair)}")
            for m in pair:
                if m not in METRICS:
                    raise ConfigError(f"unknown metric {m!r} in correlation pair")
            if pair[0] == pair[1]:
                raise ConfigError(f"cannot correlate {pair[0]} with itself")
            pairs.append(pair)
        object.__setattr__(self, "correlation_pairs", tuple(pairs))

        if not isinstance(self.censor_dnf_times, bool):
            raise ConfigError(f"censorDnfTimes must be true or false, got {self.censor_dnf_times!r}")
        if self.seed is not None and (isinstance(self.seed, bool) or not isinstance(self.seed, int)):
            raise ConfigError(f"seed must be an integer or null, got {self.seed!r}")

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "metrics": list(self.metrics),
            "correlationPairs": [list(p) for p in self.correlation_pairs],
            "censorDnfTimes": self.censor_dnf_times,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict, base: Optional["AnalysisConfig"] = None) -> "AnalysisConfig":
        if not isinstance(data, dict):
            raise ConfigError("analysis configuration must be a JSON object")
        unknown = sorted(k for k in data if not k.startswith("_") and k not in _KEYS)
        if unknown:
            raise ConfigError(f"unknown configuration key(s): {', '.join(unknown)}")
        base = base or cls()
        return cls(
            alpha=data.get("alpha", base.alpha),
            metrics=data.get("metrics", base.metrics),
            correlation_pairs=data.get("correlationPairs", base.correlation_pairs),
            censor_dnf_times=data.get("censorDnfTimes", base.censor_dnf_times),
            seed=data.get("seed", base.seed),
        )


def _read_config(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"configuration file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}")
    except OSError as e:
        raise StudyIOError(f"cannot read {path}: {e}")


def default_config() -> AnalysisConfig:
    """Shipped defaults, or the built-in ones when the config directory is absent."""
    if DEFAULT_CONFIG_PATH.exists():
        return AnalysisConfig.from_dict(_read_config(DEFAULT_CONFIG_PATH))
    return AnalysisConfig()


def load_config(path=None) -> AnalysisConfig:
    base = default_config()
    if path is None:
        return base
    cfg = AnalysisConfig.from_dict(_read_config(Path(path)), base)
    logger.info(f"Loaded analysis config from {path} (alpha={cfg.alpha}, {len(cfg.metrics)} metrics)")
    return cfg
