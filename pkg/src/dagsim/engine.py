"""Deterministic simulation engine.

One run is a pure function of (config, seed): a single event loop
drives transaction arrivals, per-miner exponential mining clocks, and
hop-delayed broadcast until the target number of blocks has been mined,
then drains in-flight block deliveries so accounting is complete.

Two scheduling decisions matter for fidelity and speed:

* Mining clocks are memoryless, so a miner's pending mining event is
  never rescheduled when its DAG view changes; the block template
  (parents, transactions) is resolved only at the moment the event
  fires. Statistically equivalent, and avoids event cancellation.
* Before block counting starts, the workload runs alone until every
  mempool is at capacity. The experiments' collision arithmetic assumes
  saturated pools, so the startup transient is kept out of the books.
"""

from __future__ import annotations

import time as _time
from dataclasses import dataclass, field
from random import Random

from . import metrics as _metrics
from .config import SimConfig
from .dag import BlockDag, RewardConfig
from .events import (
    BLOCK_MINED,
    DELIVER_BLOCK,
    DELIVER_TX,
    TX_GENERATED,
    EventQueue,
)
from .miner import MinerState
from .topology import Topology
from .workload import TxGenerator


def sample_block_interval(power: float, block_creation_time: float, rng: Random) -> float:
    """Time until a miner with the given power share finds its next block.

    Exponential with mean block_creation_time / power: the superposition
    over all miners then has mean block_creation_time, matching the
    network-wide block interval.
    """
    if not 0 < power <= 1:
        raise ValueError(f"power must be in (0, 1], got {power}")
    if block_creation_time <= 0:
        raise ValueError("block creation time must be > 0")
    return rng.expovariate(power / block_creation_time)


@dataclass
class RunReport:
    """Counters and settled profits for one finished run.

    Fields after `wall_clock_seconds` are diagnostics: they do not feed
    the result CSVs.
    """

    per_miner_profit: dict[int, float]
    per_miner_blocks: dict[int, int]
    total_tx_included: int
    duplicate_inclusions: int
    distinct_tx_included: int
    total_capacity: int
    empty_slots: int
    parallel_block_pairs: int
    blocks_with_parallel_sibling: int
    non_first_parallel_blocks: int
    wall_clock_seconds: float
    warmup_sim_seconds: float = 0.0
    mining_sim_seconds: float = 0.0
    tx_created: int = 0
    full_pool_fraction: float = 0.0
    all_delivered: bool = True


@dataclass
class SimOutcome:
    """Everything a caller may want after a run: the ledger itself, the
    fee table for settlement checks, and the summary report."""

    config: SimConfig
    dag: BlockDag
    fees: dict[int, float]
    report: RunReport


def run(config: SimConfig) -> RunReport:
    """Simulate per `config` and return the summary report."""
    return run_full(config).report


def run_full(config: SimConfig) -> SimOutcome:
    config.validate()
    started = _time.perf_counter()

    rng = Random(config.seed)
    topo = Topology(config.miner_count, config.topology, config.propagation_delay)
    groups = [topo.delivery_groups(i) for i in range(config.miner_count)]
    guard_ttl = topo.max_delay()
    dag = BlockDag(genesis_time=0.0)
    miners = [
        MinerState(
            miner_id=i,
            power=config.miner_powers[i],
            strategy=config.miner_strategies[i],
            mempool_capacity=config.mempool_capacity,
            genesis_id=dag.genesis_id,
            guard_ttl=guard_ttl,
        )
        for i in range(config.miner_count)
    ]
    generator = TxGenerator(
        fee_mean=config.fee_mean,
        rate=config.effective_tx_gen_rate(),
        node_count=config.miner_count,
    )
    queue = EventQueue()
    fees: dict[int, float] = {}

    pool_capacity = config.mempool_capacity
    capacity = config.block_capacity
    lam = config.block_creation_time
    total_blocks = config.total_blocks
    n = config.miner_count

    schedule = queue.schedule
    pop = queue.pop

    # -- warm-up: fill every pool before any block is mined ---------------
    schedule(generator.first_arrival(rng), TX_GENERATED)
    full_pools = 0
    while full_pools < n:
        now, _seq, kind, payload = pop()
        if kind == TX_GENERATED:
            tx, origin, next_at = generator.next_tx(rng, now)
            if miners[origin].on_tx_received(tx, now) == "inserted":
                if len(miners[origin].mempool) == pool_capacity:
                    full_pools += 1
            for delay, targets in groups[origin]:
                schedule(now + delay, DELIVER_TX, (targets, tx))
            schedule(next_at, TX_GENERATED)
        else:  # DELIVER_TX; nothing else is scheduled yet
            targets, tx = payload
            for target in targets:
                if miners[target].on_tx_received(tx, now) == "inserted":
                    if len(miners[target].mempool) == pool_capacity:
                        full_pools += 1

    warmup_end = queue.now
    for i in range(n):
        schedule(
            warmup_end + sample_block_interval(config.miner_powers[i], lam, rng),
            BLOCK_MINED,
            i,
        )

    # -- main phase: mine until the block budget is spent, then drain -----
    blocks_mined = 0
    next_block_id = 1  # 0 is genesis
    blocks_by_miner = [0] * n
    full_at_mine = 0
    stopped = False

    while queue:
        now, _seq, kind, payload = pop()
        if kind == DELIVER_TX:
            if stopped:
                continue
            targets, tx = payload
            for target in targets:
                miners[target].on_tx_received(tx, now)
        elif kind == TX_GENERATED:
            if stopped:
                continue
            tx, origin, next_at = generator.next_tx(rng, now)
            miners[origin].on_tx_received(tx, now)
            for delay, targets in groups[origin]:
                schedule(now + delay, DELIVER_TX, (targets, tx))
            schedule(next_at, TX_GENERATED)
        elif kind == DELIVER_BLOCK:
            # Block deliveries are processed even after the stop so that
            # every mined block reaches every miner before settlement.
            targets, block = payload
            for target in targets:
                miners[target].on_block_received(block, now)
        else:  # BLOCK_MINED
            if stopped:
                continue
            miner = miners[payload]
            if len(miner.mempool) == pool_capacity:
                full_at_mine += 1
            block = miner.on_mine(next_block_id, now, capacity, rng, fees)
            next_block_id += 1
            dag.append_block(block)
            blocks_by_miner[payload] += 1
            blocks_mined += 1
            if blocks_mined >= total_blocks:
                stopped = True
            else:
                schedule(
                    now + sample_block_interval(miner.power, lam, rng),
                    BLOCK_MINED,
                    payload,
                )
            for delay, targets in groups[payload]:
                schedule(now + delay, DELIVER_BLOCK, (targets, block))

    # -- settlement and bookkeeping ---------------------------------------
    rewards = dag.settle_rewards(fees, RewardConfig())
    profits = {i: rewards.get(i, 0.0) for i in range(n)}
    total, duplicates, distinct = _metrics.inclusion_counts(dag)
    pstats = _metrics.parallel_stats(dag)
    total_capacity = total_blocks * capacity

    report = RunReport(
        per_miner_profit=profits,
        per_miner_blocks={i: blocks_by_miner[i] for i in range(n)},
        total_tx_included=total,
        duplicate_inclusions=duplicates,
        distinct_tx_included=distinct,
        total_capacity=total_capacity,
        empty_slots=total_capacity - total,
        parallel_block_pairs=pstats.pairs,
        blocks_with_parallel_sibling=pstats.blocks_with_sibling,
        non_first_parallel_blocks=pstats.non_first_blocks,
        wall_clock_seconds=_time.perf_counter() - started,
        warmup_sim_seconds=warmup_end,
        mining_sim_seconds=queue.now - warmup_end,
        tx_created=generator.created_count,
        full_pool_fraction=full_at_mine / total_blocks if total_blocks else 0.0,
        all_delivered=all(
            len(m.known_blocks) == len(dag.blocks) for m in miners
        ),
    )
    return SimOutcome(config=config, dag=dag, fees=fees, report=report)
