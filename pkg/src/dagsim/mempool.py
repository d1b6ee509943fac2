"""Per-miner transaction pool with two coherent indexes.

The rational selection strategy needs transactions ordered by fee while
the random strategy needs uniform access to the current residents, so
the pool keeps an id index and a fee index side by side and updates
them atomically (as observed through the public operations). Capacity
is enforced by evicting the lowest-fee resident, but only when the
incoming transaction pays more than it; otherwise the newcomer is
rejected.

Internals: the fee indexes are lazy heaps that tolerate stale entries
(a transaction id enters a pool at most once per run, so liveness is
just membership in the id index) and are compacted when stale entries
dominate. Uniform selection runs over a swap-delete array of live ids.
Each heap is only materialized the first time it is needed: a pool that
never serves a rational miner never pays for fee ordering.
"""

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from random import Random

INSERTED = "inserted"
REJECTED = "rejected"
EVICTED = "evicted"
DUPLICATE = "duplicate"

_INSERTED = (INSERTED, None)
_REJECTED = (REJECTED, None)
_DUPLICATE = (DUPLICATE, None)


@dataclass(slots=True, eq=False)
class Transaction:
    id: int
    fee: float
    created_at: float


class Mempool:
    """Bounded pool of pending transactions.

    Fee order is (fee desc, id asc); the id tiebreak keeps every
    selection deterministic. Among equally lowest-fee residents the
    eviction victim is the one with the smallest id.
    """

    __slots__ = ("capacity", "_by_id", "_ids", "_pos", "_min_heap", "_max_heap",
                 "_min_stale", "_max_stale")

    def __init__(self, capacity: int) -> None:
        if capacity < 1:
            raise ValueError("mempool capacity must be >= 1")
        self.capacity = capacity
        self._by_id: dict[int, Transaction] = {}
        self._ids: list[int] = []  # live ids, position-addressable
        self._pos: dict[int, int] = {}  # id -> index in _ids
        self._min_heap: list[tuple[float, int]] | None = None  # (fee, id)
        self._max_heap: list[tuple[float, int]] | None = None  # (-fee, id)
        self._min_stale = 0
        self._max_stale = 0

    def __len__(self) -> int:
        return len(self._by_id)

    def __contains__(self, tx_id: int) -> bool:
        return tx_id in self._by_id

    def get(self, tx_id: int) -> Transaction | None:
        return self._by_id.get(tx_id)

    # -- index maintenance -------------------------------------------------

    def _build_min(self) -> list[tuple[float, int]]:
        heap = [(tx.fee, tx_id) for tx_id, tx in self._by_id.items()]
        heapify(heap)
        self._min_heap = heap
        self._min_stale = 0
        return heap

    def _build_max(self) -> list[tuple[float, int]]:
        heap = [(-tx.fee, tx_id) for tx_id, tx in self._by_id.items()]
        heapify(heap)
        self._max_heap = heap
        self._max_stale = 0
        return heap

    def _note_removed(self, count: int = 1) -> None:
        if self._min_heap is not None:
            self._min_stale += count
            if self._min_stale > len(self._by_id) + 64:
                self._build_min()
        if self._max_heap is not None:
            self._max_stale += count
            if self._max_stale > len(self._by_id) + 64:
                self._build_max()

    def _drop(self, tx_id: int) -> None:
        del self._by_id[tx_id]
        pos = self._pos.pop(tx_id)
        ids = self._ids
        last = ids.pop()
        if last != tx_id:
            ids[pos] = last
            self._pos[last] = pos

    # -- operations ----------------------------------------------------------

    def insert(self, tx: Transaction) -> tuple[str, int | None]:
        """Add a transaction, applying the capacity policy.

        Returns (outcome, evicted_id): outcome is one of INSERTED,
        REJECTED (full and tx does not outbid the cheapest resident),
        EVICTED (tx displaced the cheapest resident, whose id is
        returned) or DUPLICATE (id already present, no-op).
        """
        by_id = self._by_id
        tx_id = tx.id
        if tx_id in by_id:
            return _DUPLICATE
        evicted = None
        if len(by_id) >= self.capacity:
            heap = self._min_heap
            if heap is None:
                heap = self._build_min()
            while True:  # skip entries whose transaction is gone
                fee, cand = heap[0]
                live = by_id.get(cand)
                if live is not None and live.fee == fee:
                    break
                heappop(heap)
                self._min_stale -= 1
            if tx.fee <= heap[0][0]:
                return _REJECTED
            evicted = heappop(heap)[1]
            self._drop(evicted)
            if self._max_heap is not None:
                self._max_stale += 1
        by_id[tx_id] = tx
        self._pos[tx_id] = len(self._ids)
        self._ids.append(tx_id)
        if self._min_heap is not None:
            heappush(self._min_heap, (tx.fee, tx_id))
        if self._max_heap is not None:
            heappush(self._max_heap, (-tx.fee, tx_id))
        return (EVICTED, evicted) if evicted is not None else _INSERTED

    def min_fee(self) -> float:
        """Fee of the current eviction candidate."""
        if not self._by_id:
            raise LookupError("empty mempool has no minimum fee")
        heap = self._min_heap
        if heap is None:
            heap = self._build_min()
        by_id = self._by_id
        while True:
            fee, cand = heap[0]
            live = by_id.get(cand)
            if live is not None and live.fee == fee:
                return fee
            heappop(heap)
            self._min_stale -= 1

    def select_top_fee(self, k: int) -> list[Transaction]:
        """The min(k, size) best-paying transactions, best first."""
        if k < 0:
            raise ValueError("k must be >= 0")
        by_id = self._by_id
        heap = self._max_heap
        if heap is None:
            heap = self._build_max()
        taken: list[tuple[float, int]] = []
        taken_ids: set[int] = set()
        out: list[Transaction] = []
        limit = min(k, len(by_id))
        while len(out) < limit:
            entry = heappop(heap)
            live = by_id.get(entry[1])
            # The same (fee, id) can sit in the heap twice when an id was
            # removed and later re-inserted at an identical fee; only the
            # first copy counts, the twin is stale.
            if live is not None and live.fee == -entry[0] and entry[1] not in taken_ids:
                taken.append(entry)
                taken_ids.add(entry[1])
                out.append(live)
            else:
                self._max_stale -= 1
        for entry in taken:  # selection must not mutate the pool
            heappush(heap, entry)
        return out

    def select_random(self, k: int, rng: Random) -> list[Transaction]:
        """min(k, size) distinct transactions drawn uniformly."""
        if k < 0:
            raise ValueError("k must be >= 0")
        ids = self._ids
        size = len(ids)
        by_id = self._by_id
        if k >= size:
            return [by_id[tx_id] for tx_id in ids]
        return [by_id[ids[i]] for i in rng.sample(range(size), k)]

    def remove_all(self, tx_ids) -> int:
        """Drop every present id from both indexes; absent ids are ignored."""
        by_id = self._by_id
        removed = 0
        for tx_id in tx_ids:
            if tx_id in by_id:
                self._drop(tx_id)
                removed += 1
        if removed:
            self._note_removed(removed)
        return removed

    def transactions(self) -> list[Transaction]:
        """Snapshot of residents in (fee desc, id asc) order."""
        return [
            self._by_id[tx_id]
            for _, tx_id in sorted((-tx.fee, tx_id) for tx_id, tx in self._by_id.items())
        ]
