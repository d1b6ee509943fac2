import random

import pytest

from dagsim import run_full
from dagsim.metrics import (
    MetricsError,
    collision_rate,
    inclusion_counts,
    parallel_block_rate,
    parallel_stats,
    profit_per_miner,
    throughput,
    worst_case_collision,
)

from .conftest import build_dag, random_dag, small_config
from .oracles import oracle_inclusion_counts, oracle_settle


def chain_of_three_with_overlaps():
    # Blocks {a,b}, {b,c}, {c,d} as parallel children of genesis: the
    # second inclusions of b and c are duplicates.
    return build_dag(
        [
            (1, 0, 1.0, [0], ["a", "b"]),
            (2, 1, 1.5, [0], ["b", "c"]),
            (3, 2, 2.0, [0], ["c", "d"]),
        ]
    )


def two_children_then_merge(capacity=100):
    txs1 = tuple(f"x{i}" for i in range(capacity))
    txs2 = tuple(f"y{i}" for i in range(capacity))
    txs3 = tuple(f"z{i}" for i in range(capacity))
    return build_dag(
        [
            (1, 0, 1.0, [0], txs1),
            (2, 1, 1.2, [0], txs2),
            (3, 2, 2.5, [1, 2], txs3),
        ]
    )


class TestCollisionRate:
    def test_all_unique_is_zero(self):
        dag = build_dag([(1, 0, 1.0, [0], ["a"]), (2, 1, 2.0, [1], ["b"])])
        assert collision_rate(dag, 1) == 0.0

    def test_two_identical_blocks(self):
        txs = tuple(range(100))
        dag = build_dag([(1, 0, 1.0, [0], txs), (2, 1, 1.5, [0], txs)])
        assert collision_rate(dag, 100) == pytest.approx(0.5)

    def test_hand_counted_overlap_chain(self):
        assert collision_rate(chain_of_three_with_overlaps(), 2) == pytest.approx(
            2 / 6
        )

    def test_undefined_without_blocks(self):
        from dagsim import BlockDag

        with pytest.raises(MetricsError):
            collision_rate(BlockDag(), 10)


class TestThroughput:
    def test_no_duplicates_is_one(self):
        dag = build_dag([(1, 0, 1.0, [0], ["a"]), (2, 1, 2.0, [1], ["b"])])
        assert throughput(dag) == 1.0

    def test_hand_counted_overlap_chain(self):
        assert throughput(chain_of_three_with_overlaps()) == pytest.approx(4 / 6)

    def test_all_blocks_identical_limits_to_one_over_blocks(self):
        txs = tuple(range(10))
        dag = build_dag(
            [(i, 0, float(i), [i - 1], txs) for i in range(1, 6)]
        )
        # capacity / (capacity x blocks)
        assert throughput(dag) == pytest.approx(1 / 5)

    def test_undefined_without_inclusions(self):
        dag = build_dag([(1, 0, 1.0, [0], ())])
        with pytest.raises(MetricsError):
            throughput(dag)

    def test_complement_of_duplicate_share(self):
        dag = chain_of_three_with_overlaps()
        total, dup, _ = inclusion_counts(dag)
        assert throughput(dag) == pytest.approx(1 - dup / total)


class TestProfitPerMiner:
    def test_single_miner_gets_everything(self):
        rows = profit_per_miner({0: 50.0}, {0: 1.0})
        assert rows[0].relative == 1.0
        assert rows[0].fairness == 1.0

    def test_fairness_normalizes_by_power(self):
        rows = profit_per_miner({0: 30.0, 1: 70.0}, {0: 0.5, 1: 0.5})
        assert rows[0].fairness == pytest.approx(0.6)
        assert rows[1].fairness == pytest.approx(1.4)

    def test_relative_profits_sum_to_one(self):
        rows = profit_per_miner(
            {0: 10.0, 1: 25.0, 2: 5.0}, {0: 0.2, 1: 0.5, 2: 0.3}
        )
        assert sum(r.relative for r in rows) == pytest.approx(1.0)

    def test_zero_total_reward_is_error(self):
        with pytest.raises(MetricsError):
            profit_per_miner({0: 0.0}, {0: 1.0})

    def test_missing_miner_defaults_to_zero(self):
        rows = profit_per_miner({1: 10.0}, {0: 0.5, 1: 0.5})
        assert rows[0].absolute == 0.0 and rows[0].relative == 0.0


class TestParallelism:
    def test_linear_chain_rate_zero(self):
        dag = build_dag([(i, 0, float(i), [i - 1], ()) for i in range(1, 6)])
        assert parallel_block_rate(dag) == 0.0
        stats = parallel_stats(dag)
        assert stats.pairs == 0 and stats.blocks_with_sibling == 0

    def test_two_children_then_merge(self):
        dag = two_children_then_merge()
        stats = parallel_stats(dag)
        assert stats.total_mined == 3
        assert stats.pairs == 1
        # Both children sit in each other's anticone; the merge block is
        # comparable with everything.
        assert stats.blocks_with_sibling == 2
        # Only the later child would have been orphaned by a single chain.
        assert stats.non_first_blocks == 1
        assert parallel_block_rate(dag) == pytest.approx(1 / 3)

    def test_rate_undefined_on_empty_dag(self):
        from dagsim import BlockDag

        with pytest.raises(MetricsError):
            parallel_block_rate(BlockDag())


class TestWorstCaseCollision:
    def test_no_parallel_blocks_is_zero(self):
        dag = build_dag([(i, 0, float(i), [i - 1], ()) for i in range(1, 4)])
        assert worst_case_collision(parallel_stats(dag), 100) == 0.0

    def test_two_children_then_merge_bound(self):
        dag = two_children_then_merge(capacity=100)
        bound = worst_case_collision(parallel_stats(dag), 100)
        assert bound == pytest.approx(100 / 300)

    def test_bound_dominates_measured_collision_on_runs(self):
        # Duplicates can only ever sit in blocks with an earlier parallel
        # sibling, so the bound holds on every simulated run.
        from dagsim.miner import RANDOM, RATIONAL

        mixes = [
            (RANDOM, RANDOM, RANDOM),
            (RATIONAL, RATIONAL, RATIONAL),
            (RATIONAL, RANDOM, RANDOM),
        ]
        for seed, mix in enumerate(mixes, start=40):
            cfg = small_config(
                miner_strategies=mix, total_blocks=50, seed=seed,
                block_creation_time=12.0,
            )
            out = run_full(cfg)
            measured = collision_rate(out.dag, cfg.block_capacity)
            bound = worst_case_collision(
                parallel_stats(out.dag), cfg.block_capacity
            )
            assert measured <= bound + 1e-12


class TestOracleEquivalence:
    def test_counts_and_settlement_match_brute_force(self):
        from dagsim import RewardConfig

        rng = random.Random(5)
        for _ in range(60):
            dag, fees = random_dag(rng, max_blocks=6, max_capacity=3)
            assert inclusion_counts(dag) == oracle_inclusion_counts(dag)
            got = dag.settle_rewards(fees, RewardConfig())
            want = oracle_settle(dag, fees)
            assert set(got) == set(want)
            for miner, amount in want.items():
                assert got[miner] == pytest.approx(amount)


def test_end_to_end_run_respects_bound_and_identities():
    out = run_full(small_config(total_blocks=80, seed=13))
    cfg = out.config
    measured = collision_rate(out.dag, cfg.block_capacity)
    bound = worst_case_collision(parallel_stats(out.dag), cfg.block_capacity)
    assert measured <= bound + 1e-12
    assert throughput(out.dag) == pytest.approx(
        out.report.distinct_tx_included / out.report.total_tx_included
    )


def test_symmetric_honest_network_is_fair_per_miner():
    # Equal powers, identical strategies: every miner's fairness ratio
    # settles near 1 once a few seeds are averaged.
    from dagsim.metrics import profit_per_miner

    per_miner = {0: [], 1: [], 2: []}
    for seed in (1, 2, 3, 4, 5):
        out = run_full(small_config(total_blocks=150, seed=seed))
        powers = {i: out.config.miner_powers[i] for i in range(3)}
        for row in profit_per_miner(out.report.per_miner_profit, powers):
            per_miner[row.miner].append(row.fairness)
    for miner, ratios in per_miner.items():
        mean = sum(ratios) / len(ratios)
        assert 0.9 <= mean <= 1.1, f"miner {miner} fairness {mean:.3f}"
