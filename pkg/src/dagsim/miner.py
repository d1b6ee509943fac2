"""Miner behavior: local DAG view, local mempool, block assembly.

Each miner only reacts to what has actually been delivered to it, so
transaction collisions arise purely from propagation latency windows.
Blocks arriving ahead of their parents are buffered until the parents
show up, which keeps the ledger's parents-first contract intact without
distorting timing.
"""

from collections import deque
from random import Random

from .dag import Block
from .mempool import Mempool, Transaction

RANDOM = "random"
RATIONAL = "rational"
STRATEGIES = (RANDOM, RATIONAL)


class MinerState:
    """One consensus node: identity, strategy, pool, and DAG view."""

    __slots__ = (
        "id",
        "power",
        "strategy",
        "mempool",
        "known_blocks",
        "visible_tips",
        "_pending",
        "_waiting_on",
        "_included_guard",
        "_guard_queue",
        "_guard_ttl",
    )

    def __init__(
        self,
        miner_id: int,
        power: float,
        strategy: str,
        mempool_capacity: int,
        genesis_id: int,
        guard_ttl: float,
    ) -> None:
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        self.id = miner_id
        self.power = power
        self.strategy = strategy
        self.mempool = Mempool(mempool_capacity)
        self.known_blocks: set[int] = {genesis_id}
        self.visible_tips: set[int] = {genesis_id}
        # Blocks delivered before their parents, keyed by block id.
        self._pending: dict[int, list] = {}  # id -> [block, missing_count]
        self._waiting_on: dict[int, list[int]] = {}  # parent id -> waiter ids
        # Transactions seen inside accepted blocks. A transaction's own
        # broadcast can still be in flight when a block containing it
        # arrives, so remember included ids long enough (one max
        # propagation delay) to drop the late copy instead of re-pooling it.
        self._included_guard: set[int] = set()
        self._guard_queue: deque[tuple[float, tuple[int, ...]]] = deque()
        self._guard_ttl = guard_ttl

    # -- transaction side ------------------------------------------------

    def on_tx_received(self, tx: Transaction, now: float) -> str:
        """Pool an incoming transaction unless a known block already has it."""
        guard = self._guard_queue
        if guard and guard[0][0] < now:
            self._prune_guard(now)
        if tx.id in self._included_guard:
            return "dropped"
        return self.mempool.insert(tx)[0]

    def _prune_guard(self, now: float) -> None:
        guard = self._guard_queue
        discard = self._included_guard.discard
        while guard and guard[0][0] < now:
            _, tx_ids = guard.popleft()
            for tx_id in tx_ids:
                discard(tx_id)

    def _register_included(self, tx_ids: tuple[int, ...], now: float) -> None:
        if not tx_ids:
            return
        self._included_guard.update(tx_ids)
        self._guard_queue.append((now + self._guard_ttl, tx_ids))

    # -- block side ------------------------------------------------------

    def on_block_received(self, block: Block, now: float) -> None:
        """Integrate a delivered block, buffering it if parents are missing."""
        if block.id in self.known_blocks or block.id in self._pending:
            return  # duplicate delivery / own-block echo
        known = self.known_blocks
        missing = [p for p in block.parents if p not in known]
        if missing:
            self._pending[block.id] = [block, len(missing)]
            for parent_id in missing:
                self._waiting_on.setdefault(parent_id, []).append(block.id)
            return
        self._accept(block, now)
        self._release_waiters(block.id, now)

    def _accept(self, block: Block, now: float) -> None:
        self.known_blocks.add(block.id)
        tips = self.visible_tips
        for parent_id in block.parents:
            tips.discard(parent_id)
        tips.add(block.id)
        if block.tx_ids:
            self.mempool.remove_all(block.tx_ids)
            self._register_included(block.tx_ids, now)

    def _release_waiters(self, accepted_id: int, now: float) -> None:
        ready = deque([accepted_id])
        while ready:
            parent_id = ready.popleft()
            for waiter_id in self._waiting_on.pop(parent_id, ()):
                entry = self._pending[waiter_id]
                entry[1] -= 1
                if entry[1] == 0:
                    del self._pending[waiter_id]
                    self._accept(entry[0], now)
                    ready.append(waiter_id)

    def on_mine(
        self,
        block_id: int,
        now: float,
        capacity: int,
        rng: Random,
        fee_log: dict[int, float] | None = None,
    ) -> Block:
        """Assemble, adopt, and return this miner's next block.

        Parents are the tips this miner can currently see; the
        transaction set follows the configured strategy. Selected
        transactions leave the local pool immediately so the miner never
        proposes them twice. An underfilled (even empty) pool just
        yields a smaller block. When given, `fee_log` collects the fee
        of every selected transaction for later settlement.
        """
        if self.strategy == RATIONAL:
            selected = self.mempool.select_top_fee(capacity)
        else:
            selected = self.mempool.select_random(capacity, rng)
        tx_ids = tuple(tx.id for tx in selected)
        if fee_log is not None:
            for tx in selected:
                fee_log[tx.id] = tx.fee
        block = Block(
            id=block_id,
            miner=self.id,
            mined_at=now,
            parents=tuple(sorted(self.visible_tips)),
            tx_ids=tx_ids,
        )
        if tx_ids:
            self.mempool.remove_all(tx_ids)
        self._accept_own(block, now)
        return block

    def _accept_own(self, block: Block, now: float) -> None:
        # Same view update as _accept, minus the pool sweep (the
        # selection was already removed above).
        self.known_blocks.add(block.id)
        tips = self.visible_tips
        for parent_id in block.parents:
            tips.discard(parent_id)
        tips.add(block.id)
        self._register_included(block.tx_ids, now)
