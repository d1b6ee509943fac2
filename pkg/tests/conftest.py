import random

import pytest

from dagsim import Block, BlockDag, SimConfig, Transaction
from dagsim.miner import RANDOM


def small_config(**overrides) -> SimConfig:
    """A config sized for fast unit runs; still saturates its pools."""
    n = overrides.pop("miner_count", 3)
    defaults = dict(
        block_creation_time=20.0,
        propagation_delay=5.0,
        total_blocks=60,
        miner_count=n,
        miner_powers=tuple([1.0 / n] * n),
        miner_strategies=tuple([RANDOM] * n),
        block_capacity=20,
        mempool_capacity=200,
        fee_mean=150.0,
        topology="ring",
        seed=7,
    )
    defaults.update(overrides)
    cfg = SimConfig(**defaults)
    cfg.validate()
    return cfg


def build_dag(layout, genesis_time=0.0) -> BlockDag:
    """Build a DAG from (id, miner, mined_at, parents, tx_ids) tuples."""
    dag = BlockDag(genesis_time=genesis_time)
    for block_id, miner, mined_at, parents, tx_ids in layout:
        dag.append_block(
            Block(
                id=block_id,
                miner=miner,
                mined_at=mined_at,
                parents=tuple(parents),
                tx_ids=tuple(tx_ids),
            )
        )
    return dag


def make_txs(fees, start_id=0, created_at=0.0):
    return [
        Transaction(id=start_id + i, fee=float(fee), created_at=created_at)
        for i, fee in enumerate(fees)
    ]


def random_dag(rng: random.Random, max_blocks=6, max_capacity=3, tx_universe=8):
    """Random small DAG with overlapping transaction sets, for oracles."""
    dag = BlockDag()
    n_blocks = rng.randint(1, max_blocks)
    t = 0.0
    for block_id in range(1, n_blocks + 1):
        t += rng.uniform(0.5, 3.0)
        present = list(dag.blocks)
        parent_count = rng.randint(1, min(3, len(present)))
        parents = tuple(sorted(rng.sample(present, parent_count)))
        capacity = rng.randint(0, max_capacity)
        tx_ids = tuple(rng.sample(range(tx_universe), capacity))
        dag.append_block(
            Block(
                id=block_id,
                miner=rng.randrange(3),
                mined_at=t,
                parents=parents,
                tx_ids=tx_ids,
            )
        )
    fees = {tx: float(rng.randint(1, 50)) for tx in range(tx_universe)}
    return dag, fees


@pytest.fixture
def rng():
    return random.Random(12345)
