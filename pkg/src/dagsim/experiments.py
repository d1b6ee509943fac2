"""Batch experiment runner: sweeps over seeds and settings, CSV output.

Every experiment produces rows with one fixed superset schema so result
files stay machine-comparable across experiments; columns that do not
apply hold "NA". Each (setting, seed) point is an isolated
deterministic run, so sweeps parallelize across processes and the
assembled CSV is byte-identical for identical inputs regardless of
worker count: rows are sorted by (setting, seed) after collection and
aggregate mean/stddev rows are appended per setting.
"""

from __future__ import annotations

import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, SimConfig, table1_config, with_malicious
from .engine import run_full
from .metrics import (
    collision_rate,
    parallel_block_rate,
    parallel_stats,
    profit_per_miner,
    throughput,
    worst_case_collision,
)
from .miner import RANDOM, RATIONAL

CSV_COLUMNS = (
    "experiment",
    "setting",
    "row_kind",
    "seed",
    "lambda",
    "tau",
    "topology",
    "miner_count",
    "malicious_count",
    "alpha",
    "total_blocks",
    "block_capacity",
    "mempool_capacity",
    "fee_mean",
    "tx_gen_rate",
    "strategies",
    "powers",
    "total_tx_included",
    "duplicate_inclusions",
    "distinct_tx_included",
    "empty_slots",
    "collision_rate",
    "throughput",
    "worst_case_collision",
    "parallel_block_rate",
    "parallel_block_pairs",
    "blocks_with_parallel_sibling",
    "total_reward",
    "honest_profit_mean",
    "malicious_profit_mean",
    "profit_ratio",
    "honest_relative_mean",
    "malicious_relative_mean",
    "honest_fairness_mean",
    "malicious_fairness_mean",
)

# Numeric result columns that get per-setting mean/stddev rows.
AGGREGATED_COLUMNS = (
    "total_tx_included",
    "duplicate_inclusions",
    "distinct_tx_included",
    "empty_slots",
    "collision_rate",
    "throughput",
    "worst_case_collision",
    "parallel_block_rate",
    "parallel_block_pairs",
    "blocks_with_parallel_sibling",
    "total_reward",
    "honest_profit_mean",
    "malicious_profit_mean",
    "profit_ratio",
    "honest_relative_mean",
    "malicious_relative_mean",
    "honest_fairness_mean",
    "malicious_fairness_mean",
)

DEFAULT_SEEDS = (1, 2, 3, 4, 5)
DEFAULT_MALICIOUS_COUNTS = tuple(range(11))
DEFAULT_ALPHAS = (0.1, 0.2, 0.3, 0.4, 0.49)
DEFAULT_LAMBDA_GRID = (10.0, 20.0, 40.0, 60.0, 120.0, 300.0, 600.0)

ALL_HONEST = "all-honest"
ALL_MALICIOUS = "all-malicious"


def format_value(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def simulate_point(task: tuple[str, float, SimConfig]) -> dict:
    """Run one (experiment, setting, config) point and pack its CSV row.

    Module-level so process pools can pickle it.
    """
    experiment, setting, cfg = task
    return pack_row(experiment, setting, cfg, run_full(cfg))


def pack_row(experiment: str, setting: float, cfg: SimConfig, outcome) -> dict:
    report = outcome.report
    dag = outcome.dag

    row: dict = {
        "experiment": experiment,
        "setting": setting,
        "row_kind": "seed",
        "seed": cfg.seed,
        "lambda": cfg.block_creation_time,
        "tau": cfg.propagation_delay,
        "topology": cfg.topology,
        "miner_count": cfg.miner_count,
        "malicious_count": sum(1 for s in cfg.miner_strategies if s == RATIONAL),
        "alpha": cfg.adversarial_power(),
        "total_blocks": cfg.total_blocks,
        "block_capacity": cfg.block_capacity,
        "mempool_capacity": cfg.mempool_capacity,
        "fee_mean": cfg.fee_mean,
        "tx_gen_rate": cfg.effective_tx_gen_rate(),
        "strategies": "|".join(cfg.miner_strategies),
        "powers": "|".join(f"{p:.6g}" for p in cfg.miner_powers),
        "total_tx_included": report.total_tx_included,
        "duplicate_inclusions": report.duplicate_inclusions,
        "distinct_tx_included": report.distinct_tx_included,
        "empty_slots": report.empty_slots,
        "collision_rate": collision_rate(dag, cfg.block_capacity),
        "throughput": throughput(dag),
        "worst_case_collision": worst_case_collision(
            parallel_stats(dag), cfg.block_capacity
        ),
        "parallel_block_rate": parallel_block_rate(dag),
        "parallel_block_pairs": report.parallel_block_pairs,
        "blocks_with_parallel_sibling": report.blocks_with_parallel_sibling,
    }

    powers = {i: cfg.miner_powers[i] for i in range(cfg.miner_count)}
    profit_rows = profit_per_miner(report.per_miner_profit, powers)
    honest = [r for r in profit_rows if cfg.miner_strategies[r.miner] == RANDOM]
    malicious = [r for r in profit_rows if cfg.miner_strategies[r.miner] == RATIONAL]
    row["total_reward"] = sum(r.absolute for r in profit_rows)

    def mean_of(rows, attr):
        return statistics.fmean(getattr(r, attr) for r in rows) if rows else None

    row["honest_profit_mean"] = mean_of(honest, "absolute")
    row["malicious_profit_mean"] = mean_of(malicious, "absolute")
    row["honest_relative_mean"] = mean_of(honest, "relative")
    row["malicious_relative_mean"] = mean_of(malicious, "relative")
    row["honest_fairness_mean"] = mean_of(honest, "fairness")
    row["malicious_fairness_mean"] = mean_of(malicious, "fairness")
    if honest and malicious and row["honest_profit_mean"] > 0:
        row["profit_ratio"] = row["malicious_profit_mean"] / row["honest_profit_mean"]
    else:
        row["profit_ratio"] = None
    return row


def execute_points(tasks: list[tuple[str, float, SimConfig]], workers: int = 1) -> list[dict]:
    """Run all points, then sort rows by (setting, seed) for stable output."""
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(simulate_point, tasks, chunksize=1))
    else:
        rows = [simulate_point(task) for task in tasks]
    rows.sort(key=lambda r: (r["setting"], r["seed"]))
    return rows


def append_aggregates(rows: list[dict]) -> list[dict]:
    """Interleave per-setting mean and stddev rows after each seed group."""
    out: list[dict] = []
    by_setting: dict[float, list[dict]] = {}
    for row in rows:
        by_setting.setdefault(row["setting"], []).append(row)
    for setting in sorted(by_setting):
        group = by_setting[setting]
        out.extend(group)
        for kind, fn in (("mean", statistics.fmean), ("stddev", _sample_stddev)):
            agg = dict(group[0])
            agg["row_kind"] = kind
            agg["seed"] = None
            for col in AGGREGATED_COLUMNS:
                values = [r[col] for r in group if r[col] is not None]
                agg[col] = fn(values) if values else None
            out.append(agg)
    return out


def _sample_stddev(values) -> float:
    values = list(values)
    if len(values) < 2:
        return 0.0
    return statistics.stdev(values)


def write_csv(rows: list[dict], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(format_value(row.get(col)) for col in CSV_COLUMNS) + "\n")


def append_csv_row(row: dict, path: str | Path) -> None:
    """Append one row, writing the header first if the file is new/empty."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fresh = not path.exists() or path.stat().st_size == 0
    with open(path, "a", encoding="utf-8", newline="\n") as fh:
        if fresh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
        fh.write(",".join(format_value(row.get(col)) for col in CSV_COLUMNS) + "\n")


# -- the experiments ---------------------------------------------------------


def _seeded(cfg: SimConfig, seed: int) -> SimConfig:
    return replace(cfg, seed=seed)


def run_single(cfg: SimConfig, dump_dag_path: str | Path | None = None) -> dict:
    """One simulation, one row."""
    cfg.validate()
    outcome = run_full(cfg)
    row = pack_row("single", 0.0, cfg, outcome)
    if dump_dag_path is not None:
        with open(dump_dag_path, "w", encoding="utf-8", newline="\n") as fh:
            outcome.dag.dump(fh)
    return row


def malicious_count_sweep(
    base: SimConfig,
    malicious_counts=DEFAULT_MALICIOUS_COUNTS,
    seeds=DEFAULT_SEEDS,
    workers: int = 1,
    experiment: str = "exp1",
) -> list[dict]:
    """Vary how many miners use the rational strategy (profit and
    collision views of the same sweep)."""
    for count in malicious_counts:
        if not 0 <= count <= base.miner_count:
            raise ConfigError(
                f"malicious count {count} out of range for {base.miner_count} miners"
            )
    tasks = [
        (experiment, float(count), _seeded(with_malicious(base, count), seed))
        for count in malicious_counts
        for seed in seeds
    ]
    return append_aggregates(execute_points(tasks, workers))


def alpha_sweep(
    base: SimConfig | None = None,
    alphas=DEFAULT_ALPHAS,
    seeds=DEFAULT_SEEDS,
    workers: int = 1,
) -> list[dict]:
    """Two miners, one rational with power alpha versus one honest."""
    for alpha in alphas:
        if not 0.0 < alpha <= 0.49:
            raise ConfigError(f"alpha must lie in (0, 0.49], got {alpha}")
    if base is None:
        base = table1_config()
    tasks = []
    for alpha in alphas:
        cfg = replace(
            base,
            miner_count=2,
            miner_powers=(alpha, 1.0 - alpha),
            miner_strategies=(RATIONAL, RANDOM),
        )
        cfg.validate()
        tasks.extend(
            ("exp1b", float(alpha), _seeded(cfg, seed)) for seed in seeds
        )
    return append_aggregates(execute_points(tasks, workers))


def lambda_sweep(
    base: SimConfig | None = None,
    lambdas=DEFAULT_LAMBDA_GRID,
    mode: str = ALL_HONEST,
    seeds=DEFAULT_SEEDS,
    workers: int = 1,
) -> list[dict]:
    """Vary the block creation time with a uniform strategy population."""
    if mode not in (ALL_HONEST, ALL_MALICIOUS):
        raise ConfigError(f"mode must be {ALL_HONEST} or {ALL_MALICIOUS}, got {mode!r}")
    for lam in lambdas:
        if not 10.0 <= lam <= 600.0:
            raise ConfigError(f"lambda must lie in [10, 600] seconds, got {lam}")
    if base is None:
        base = table1_config()
    strategy = RANDOM if mode == ALL_HONEST else RATIONAL
    strategies = tuple([strategy] * base.miner_count)
    tasks = []
    for lam in lambdas:
        cfg = replace(
            base,
            block_creation_time=float(lam),
            miner_strategies=strategies,
        )
        cfg.validate()
        tasks.extend(("exp3", float(lam), _seeded(cfg, seed)) for seed in seeds)
    return append_aggregates(execute_points(tasks, workers))
