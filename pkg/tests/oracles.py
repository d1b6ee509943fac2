"""Independent brute-force oracles used to cross-check the fast paths.

These deliberately avoid the library's own algorithms: reachability goes
through networkx, first-inclusion is resolved per transaction by an
explicit argmin, and best-k selection enumerates subsets.
"""

from itertools import combinations

import networkx as nx


def dag_to_nx(dag):
    g = nx.DiGraph()
    for block in dag.blocks.values():
        g.add_node(block.id)
        for parent in block.parents:
            g.add_edge(parent, block.id)
    return g


def oracle_is_parallel(dag, a, b):
    g = dag_to_nx(dag)
    if a == b:
        return False
    return a not in nx.ancestors(g, b) and b not in nx.ancestors(g, a)


def oracle_parallel_stats(dag):
    """(pairs, blocks_with_sibling, non_first_blocks) by exhaustive pairs."""
    g = dag_to_nx(dag)
    ancestors = {b: nx.ancestors(g, b) for b in g.nodes}
    ids = [b for b in dag.blocks if b != dag.genesis_id]
    key = {b: (dag.blocks[b].mined_at, b) for b in dag.blocks}
    pairs = 0
    with_sibling = set()
    non_first = set()
    for a, b in combinations(ids, 2):
        if a in ancestors[b] or b in ancestors[a]:
            continue
        pairs += 1
        with_sibling.update((a, b))
        later = a if key[a] > key[b] else b
        non_first.add(later)
    return pairs, len(with_sibling), len(non_first)


def oracle_first_inclusion(dag):
    """tx id -> block id of its first inclusion, by per-tx argmin."""
    first = {}
    for block in dag.blocks.values():
        for tx_id in block.tx_ids:
            best = first.get(tx_id)
            if best is None or (block.mined_at, block.id) < (
                dag.blocks[best].mined_at,
                best,
            ):
                first[tx_id] = block.id
    return first


def oracle_settle(dag, fees, gamma=1.0):
    rewards = {}
    for tx_id, block_id in oracle_first_inclusion(dag).items():
        miner = dag.blocks[block_id].miner
        rewards[miner] = rewards.get(miner, 0.0) + fees[tx_id] * gamma
    return rewards


def oracle_inclusion_counts(dag):
    """(total, duplicates, distinct) by flat counting."""
    all_ids = [tx for b in dag.blocks.values() for tx in b.tx_ids]
    distinct = len(set(all_ids))
    total = len(all_ids)
    return total, total - distinct, distinct


def oracle_best_k_fee_sum(fees, k):
    """Maximum total fee of any k-subset (enumerated)."""
    k = min(k, len(fees))
    if k == 0:
        return 0.0
    return max(sum(combo) for combo in combinations(fees, k))
