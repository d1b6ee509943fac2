"""Block-DAG proof-of-work mining simulator.

Quantifies how miners that deviate from random transaction selection
(picking the highest fees instead) profit disproportionately and
degrade throughput through transaction collisions.
"""

from .config import ConfigError, SimConfig, load_config, table1_config, with_malicious
from .dag import Block, BlockDag, DagError, RewardConfig
from .engine import RunReport, SimOutcome, run, run_full, sample_block_interval
from .events import Event, EventQueue, SchedulingError
from .mempool import Mempool, Transaction
from .metrics import (
    MetricsError,
    ParallelStats,
    ProfitRow,
    collision_rate,
    inclusion_counts,
    parallel_block_rate,
    parallel_stats,
    profit_per_miner,
    throughput,
    worst_case_collision,
)
from .miner import RANDOM, RATIONAL, MinerState
from .topology import Topology
from .workload import TxGenerator

__version__ = "0.1.0"

__all__ = [
    "Block",
    "BlockDag",
    "ConfigError",
    "DagError",
    "Event",
    "EventQueue",
    "Mempool",
    "MetricsError",
    "MinerState",
    "ParallelStats",
    "ProfitRow",
    "RANDOM",
    "RATIONAL",
    "RewardConfig",
    "RunReport",
    "SchedulingError",
    "SimConfig",
    "SimOutcome",
    "Topology",
    "Transaction",
    "TxGenerator",
    "collision_rate",
    "inclusion_counts",
    "load_config",
    "parallel_block_rate",
    "parallel_stats",
    "profit_per_miner",
    "run",
    "run_full",
    "sample_block_interval",
    "table1_config",
    "throughput",
    "with_malicious",
    "worst_case_collision",
]
