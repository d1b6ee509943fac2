"""Simulation configuration: validation, defaults, and the flat file format.

The on-disk format is deliberately dumb — one `key = value` per line,
`#` comments — and unknown keys are rejected outright, because silent
config drift is the main way batch results stop being reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .miner import RANDOM, RATIONAL, STRATEGIES
from .topology import COMPLETE, RING


class ConfigError(Exception):
    """Invalid simulation configuration; message names the offending field."""


@dataclass(frozen=True)
class SimConfig:
    block_creation_time: float = 20.0  # lambda: mean seconds between blocks
    propagation_delay: float = 5.0  # tau: seconds per hop
    total_blocks: int = 10_000
    miner_count: int = 10
    miner_powers: tuple[float, ...] = field(default_factory=tuple)
    miner_strategies: tuple[str, ...] = field(default_factory=tuple)
    block_capacity: int = 100
    mempool_capacity: int = 10_000
    fee_mean: float = 150.0
    tx_gen_rate: float | None = None  # None: derived, 2x consumption rate
    topology: str = RING
    seed: int = 1

    def effective_tx_gen_rate(self) -> float:
        """Transactions per second; defaults to twice the network's
        consumption rate so pools saturate to capacity."""
        if self.tx_gen_rate is not None:
            return self.tx_gen_rate
        return 2.0 * self.block_capacity / self.block_creation_time

    def adversarial_power(self) -> float:
        """Total power held by rational-strategy miners."""
        return sum(
            p
            for p, s in zip(self.miner_powers, self.miner_strategies)
            if s == RATIONAL
        )

    def validate(self) -> None:
        if not self.block_creation_time > 0:
            raise ConfigError(
                f"block_creation_time (lambda) must be > 0, got "
                f"{self.block_creation_time}"
            )
        if self.propagation_delay < 0:
            raise ConfigError(
                f"propagation_delay (tau) must be >= 0, got {self.propagation_delay}"
            )
        if self.total_blocks < 1:
            raise ConfigError(f"total_blocks must be >= 1, got {self.total_blocks}")
        if self.miner_count < 1:
            raise ConfigError(f"miner_count must be >= 1, got {self.miner_count}")
        if len(self.miner_powers) != self.miner_count:
            raise ConfigError(
                f"miner_powers has {len(self.miner_powers)} entries for "
                f"{self.miner_count} miners"
            )
        if len(self.miner_strategies) != self.miner_count:
            raise ConfigError(
                f"miner_strategies has {len(self.miner_strategies)} entries for "
                f"{self.miner_count} miners"
            )
        for i, power in enumerate(self.miner_powers):
            if not power > 0:
                raise ConfigError(f"miner_powers[{i}] must be > 0, got {power}")
        if not math.isclose(sum(self.miner_powers), 1.0, abs_tol=1e-9):
            raise ConfigError(
                f"miner_powers must sum to 1.0 (within 1e-9), got "
                f"{sum(self.miner_powers)!r}"
            )
        for i, strategy in enumerate(self.miner_strategies):
            if strategy not in STRATEGIES:
                raise ConfigError(
                    f"miner_strategies[{i}] must be one of {STRATEGIES}, "
                    f"got {strategy!r}"
                )
        if self.block_capacity < 1:
            raise ConfigError(
                f"block_capacity must be >= 1, got {self.block_capacity}"
            )
        if self.mempool_capacity < self.block_capacity:
            raise ConfigError(
                f"mempool_capacity ({self.mempool_capacity}) must be >= "
                f"block_capacity ({self.block_capacity})"
            )
        if not self.fee_mean > 0:
            raise ConfigError(f"fee_mean must be > 0, got {self.fee_mean}")
        rate = self.effective_tx_gen_rate()
        if rate * self.block_creation_time < self.block_capacity:
            raise ConfigError(
                f"tx_gen_rate ({rate:g}/s) cannot keep mempools saturated: "
                f"need at least block_capacity/lambda = "
                f"{self.block_capacity / self.block_creation_time:g}/s"
            )
        if self.topology not in (RING, COMPLETE):
            raise ConfigError(f"topology must be ring or complete, got {self.topology!r}")
        if not isinstance(self.seed, int):
            raise ConfigError(f"seed must be an integer, got {self.seed!r}")


def table1_config(**overrides) -> SimConfig:
    """Baseline setup: 10 equal miners on a ring, all honest."""
    n = int(overrides.pop("miner_count", 10))
    cfg = SimConfig(
        miner_count=n,
        miner_powers=tuple([1.0 / n] * n),
        miner_strategies=tuple([RANDOM] * n),
    )
    return replace(cfg, **overrides) if overrides else cfg


def with_malicious(cfg: SimConfig, malicious_count: int) -> SimConfig:
    """First `malicious_count` miners switch to the rational strategy."""
    if not 0 <= malicious_count <= cfg.miner_count:
        raise ConfigError(
            f"malicious count {malicious_count} out of range for "
            f"{cfg.miner_count} miners"
        )
    strategies = tuple(
        RATIONAL if i < malicious_count else RANDOM for i in range(cfg.miner_count)
    )
    return replace(cfg, miner_strategies=strategies)


# -- flat config file --------------------------------------------------------

_LIST_KEYS = {"miner_powers", "miner_strategies"}
_INT_KEYS = {"total_blocks", "miner_count", "block_capacity", "mempool_capacity", "seed"}
_FLOAT_KEYS = {
    "block_creation_time",
    "propagation_delay",
    "fee_mean",
    "tx_gen_rate",
}
_STR_KEYS = {"topology"}
KNOWN_KEYS = _LIST_KEYS | _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


def parse_config_text(text: str, source: str = "<config>") -> SimConfig:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key == "miner_powers":
                if value == "equal":
                    values[key] = "equal"
                else:
                    values[key] = tuple(float(v) for v in value.split(","))
            elif key == "miner_strategies":
                values[key] = tuple(v.strip() for v in value.split(","))
            else:
                values[key] = value
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from None

    n = values.get("miner_count", 10)
    if values.get("miner_powers", "equal") == "equal":
        values["miner_powers"] = tuple([1.0 / n] * n)
    values.setdefault("miner_count", n)
    values.setdefault("miner_strategies", tuple([RANDOM] * values["miner_count"]))
    cfg = SimConfig(**values)
    cfg.validate()
    return cfg


def load_config(path: str | Path) -> SimConfig:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    return parse_config_text(path.read_text(encoding="utf-8"), source=str(path))
