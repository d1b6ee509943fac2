"""Post-run measures: collision rate, throughput, profits, parallelism.

Everything here is a pure function of the finished DAG (plus fee and
power tables), computed after the event loop has ended. A "duplicate"
is any inclusion of a transaction beyond its first, where first means
the smallest (mined_at, block id) — the same order used for reward
settlement, so the two accountings always agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dag import Block, BlockDag


class MetricsError(Exception):
    """A measure is undefined for this run (e.g. nothing was mined)."""


def inclusion_counts(dag: BlockDag) -> tuple[int, int, int]:
    """(total inclusions, duplicate inclusions, distinct transactions)."""
    seen: set[int] = set()
    seen_add = seen.add
    total = 0
    duplicates = 0
    for block in sorted(dag.blocks.values(), key=Block.sort_key):
        total += len(block.tx_ids)
        for tx_id in block.tx_ids:
            if tx_id in seen:
                duplicates += 1
            else:
                seen_add(tx_id)
    return total, duplicates, len(seen)


def collision_rate(dag: BlockDag, capacity_per_block: int) -> float:
    """Duplicate inclusions as a fraction of the total block capacity."""
    mined = dag.mined_count
    if mined == 0:
        raise MetricsError("collision rate undefined: no blocks mined")
    if capacity_per_block < 1:
        raise MetricsError("capacity per block must be >= 1")
    _, duplicates, _ = inclusion_counts(dag)
    return duplicates / (mined * capacity_per_block)


def throughput(dag: BlockDag) -> float:
    """Fraction of all included transactions that were not duplicates."""
    total, _, distinct = inclusion_counts(dag)
    if total == 0:
        raise MetricsError("throughput undefined: no transactions included")
    return distinct / total


@dataclass(frozen=True)
class ProfitRow:
    miner: int
    absolute: float
    relative: float
    fairness: float  # relative profit / power share; 1.0 is proportional


def profit_per_miner(
    rewards: dict[int, float], powers: dict[int, float]
) -> list[ProfitRow]:
    """Absolute, relative, and power-normalized profit per miner."""
    total = sum(rewards.get(m, 0.0) for m in powers)
    if total <= 0:
        raise MetricsError("relative profit undefined: total reward is zero")
    rows = []
    for miner in sorted(powers):
        absolute = rewards.get(miner, 0.0)
        relative = absolute / total
        rows.append(
            ProfitRow(
                miner=miner,
                absolute=absolute,
                relative=relative,
                fairness=relative / powers[miner],
            )
        )
    return rows


@dataclass(frozen=True)
class ParallelStats:
    """Anticone census of a finished DAG (genesis excluded).

    `pairs` counts unordered parallel pairs. A block is counted in
    `blocks_with_sibling` if its anticone is non-empty, and in
    `non_first_blocks` if some parallel sibling precedes it in
    (mined_at, id) order — those are the blocks a single-chain protocol
    would have orphaned, and the ones whose payload can duplicate
    earlier inclusions.
    """

    total_mined: int
    pairs: int
    blocks_with_sibling: int
    non_first_blocks: int


def parallel_stats(dag: BlockDag) -> ParallelStats:
    ancestors, descendants, order = dag.reachability_masks()
    count_all = len(order)
    pair_sum = 0
    with_sibling = 0
    non_first = 0
    for index, block_id in enumerate(order):
        if block_id == dag.genesis_id:
            continue
        anc = ancestors[block_id].bit_count()
        desc = descendants[block_id].bit_count()
        parallel = count_all - anc - desc - 1
        if parallel:
            pair_sum += parallel
            with_sibling += 1
            # Everything ordered before this block is either an ancestor
            # or an earlier parallel sibling.
            if index - anc > 0:
                non_first += 1
    return ParallelStats(
        total_mined=count_all - 1,
        pairs=pair_sum // 2,
        blocks_with_sibling=with_sibling,
        non_first_blocks=non_first,
    )


def parallel_block_rate(dag: BlockDag) -> float:
    """Fraction of mined blocks that would have been orphans under a
    single-chain protocol: blocks with an earlier parallel sibling."""
    stats = parallel_stats(dag)
    if stats.total_mined == 0:
        raise MetricsError("parallel block rate undefined: no blocks mined")
    return stats.non_first_blocks / stats.total_mined


def worst_case_collision(stats: ParallelStats, capacity_per_block: int) -> float:
    """Collision rate if every transaction in every non-first parallel
    block duplicated an earlier inclusion — an upper-bound reference."""
    if stats.total_mined == 0:
        return 0.0
    return (stats.non_first_blocks * capacity_per_block) / (
        stats.total_mined * capacity_per_block
    )
