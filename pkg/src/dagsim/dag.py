"""Global append-only block DAG and first-inclusion reward settlement.

Every mined block lands here exactly once. Parents must already be
present and strictly older, which keeps the structure acyclic by
construction. Block ordering questions that a full consensus protocol
would answer are deliberately reduced to the global (mined_at, id)
order: with a constant reward discount the per-miner totals do not
depend on any finer ordering, except for exact-tie cases which the id
tiebreak pins down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, TextIO

GENESIS_ID = 0
GENESIS_MINER = -1


class DagError(Exception):
    """Violation of a DAG structural contract."""


@dataclass(slots=True, eq=False)
class Block:
    id: int
    miner: int
    mined_at: float
    parents: tuple[int, ...]
    tx_ids: tuple[int, ...]

    def sort_key(self) -> tuple[float, int]:
        return (self.mined_at, self.id)


@dataclass(frozen=True)
class RewardConfig:
    """Constant reward discount applied to every first inclusion."""

    discount_constant: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.discount_constant <= 1.0:
            raise ValueError("discount constant must lie in [0, 1]")


class BlockDag:
    """Append-only DAG of blocks, rooted at an empty genesis block.

    Insertion order is not assumed to match time order anywhere except
    the parents-already-present rule; every query that cares about
    "first" sorts by (mined_at, id) explicitly.
    """

    def __init__(self, genesis_time: float = 0.0) -> None:
        genesis = Block(
            id=GENESIS_ID,
            miner=GENESIS_MINER,
            mined_at=genesis_time,
            parents=(),
            tx_ids=(),
        )
        self.blocks: dict[int, Block] = {GENESIS_ID: genesis}
        self.genesis_id = GENESIS_ID
        self._children: dict[int, list[int]] = {GENESIS_ID: []}
        self._tips: set[int] = {GENESIS_ID}

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, block_id: int) -> bool:
        return block_id in self.blocks

    @property
    def mined_count(self) -> int:
        """Number of blocks excluding genesis."""
        return len(self.blocks) - 1

    def append_block(self, block: Block) -> None:
        if block.id in self.blocks:
            raise DagError(f"block id {block.id} already present")
        if not block.parents:
            raise DagError("non-genesis block must have at least one parent")
        if len(set(block.tx_ids)) != len(block.tx_ids):
            raise DagError(f"block {block.id} lists a transaction twice")
        for parent_id in block.parents:
            parent = self.blocks.get(parent_id)
            if parent is None:
                raise DagError(
                    f"block {block.id} references missing parent {parent_id}"
                )
            if parent.mined_at >= block.mined_at:
                raise DagError(
                    f"block {block.id} (t={block.mined_at:g}) is not strictly "
                    f"younger than parent {parent_id} (t={parent.mined_at:g})"
                )
        self.blocks[block.id] = block
        self._children[block.id] = []
        for parent_id in block.parents:
            self._children[parent_id].append(block.id)
            self._tips.discard(parent_id)
        self._tips.add(block.id)

    def tips(self) -> set[int]:
        """Tips of the full DAG (blocks with no children)."""
        return set(self._tips)

    def children(self, block_id: int) -> list[int]:
        return list(self._children[block_id])

    def subdag_tips(self, known: Iterable[int]) -> set[int]:
        """Tips of the sub-DAG induced by a set of delivered blocks.

        This is the parent set a miner that has seen exactly `known`
        would put in its next block.
        """
        known_set = set(known)
        children = self._children
        return {
            block_id
            for block_id in known_set
            if not any(child in known_set for child in children[block_id])
        }

    def is_ancestor(self, a: int, b: int) -> bool:
        """True iff block a is reachable from b via parent links."""
        if a not in self.blocks or b not in self.blocks:
            raise DagError("both blocks must be present")
        if a == b:
            return False
        blocks = self.blocks
        limit = blocks[a].mined_at
        stack = list(blocks[b].parents)
        seen = set()
        while stack:
            cur = stack.pop()
            if cur == a:
                return True
            if cur in seen:
                continue
            seen.add(cur)
            cur_block = blocks[cur]
            if cur_block.mined_at <= limit:
                # Ancestors only get older; no path below `a`'s time can
                # lead back to it except through `a` itself.
                continue
            stack.extend(cur_block.parents)
        return False

    def is_parallel(self, a: int, b: int) -> bool:
        """True iff neither block is an ancestor of the other (and a != b)."""
        if a == b:
            return False
        return not self.is_ancestor(a, b) and not self.is_ancestor(b, a)

    def reachability_masks(self) -> tuple[dict[int, int], dict[int, int], list[int]]:
        """Ancestor and descendant sets of every block as int bitmasks.

        Bit positions follow the (mined_at, id) order of blocks, which
        is also returned. One pass down and one pass up; cheap enough
        to run on DAGs of tens of thousands of blocks.
        """
        order = sorted(self.blocks, key=lambda bid: self.blocks[bid].sort_key())
        position = {block_id: i for i, block_id in enumerate(order)}
        ancestors: dict[int, int] = {}
        for block_id in order:
            mask = 0
            for parent_id in self.blocks[block_id].parents:
                mask |= ancestors[parent_id] | (1 << position[parent_id])
            ancestors[block_id] = mask
        descendants: dict[int, int] = {}
        for block_id in reversed(order):
            mask = 0
            for child_id in self._children[block_id]:
                mask |= descendants[child_id] | (1 << position[child_id])
            descendants[block_id] = mask
        return ancestors, descendants, order

    def settle_rewards(
        self, fees: dict[int, float], reward: RewardConfig
    ) -> dict[int, float]:
        """Credit each transaction's fee to the miner that included it first.

        "First" is the smallest (mined_at, block id); every later
        inclusion of the same transaction earns nothing. The credited
        amount is fee x discount constant.
        """
        gamma = reward.discount_constant
        payouts: dict[int, float] = {}
        seen: set[int] = set()
        seen_add = seen.add
        for block in sorted(self.blocks.values(), key=Block.sort_key):
            if not block.tx_ids:
                continue
            earned = 0.0
            for tx_id in block.tx_ids:
                if tx_id in seen:
                    continue
                seen_add(tx_id)
                try:
                    earned += fees[tx_id]
                except KeyError:
                    raise DagError(
                        f"no fee recorded for transaction {tx_id} "
                        f"in block {block.id}"
                    ) from None
            if earned:
                payouts[block.miner] = payouts.get(block.miner, 0.0) + earned * gamma
        return payouts

    def dump(self, out: TextIO) -> None:
        """One line per block: id, miner, mined_at, parents, tx count."""
        out.write("id,miner,mined_at,parents,tx_count\n")
        for block in sorted(self.blocks.values(), key=Block.sort_key):
            parents = ";".join(str(p) for p in block.parents)
            out.write(
                f"{block.id},{block.miner},{block.mined_at:.6g},"
                f"{parents},{len(block.tx_ids)}\n"
            )
