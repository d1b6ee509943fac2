"""Time-ordered event queue for the simulation loop.

Events dequeue in (time, sequence) order. The sequence number is a
monotone counter assigned at scheduling time, so simultaneous events
come out in insertion (FIFO) order — this is what makes runs
reproducible bit-for-bit.
"""

from heapq import heappop, heappush
from typing import Any, NamedTuple

# Event kinds. Plain ints: the dispatch in the engine loop is hot.
BLOCK_MINED = 0
DELIVER_BLOCK = 1
DELIVER_TX = 2
TX_GENERATED = 3

_KIND_NAMES = {
    BLOCK_MINED: "BlockMined",
    DELIVER_BLOCK: "DeliverBlock",
    DELIVER_TX: "DeliverTx",
    TX_GENERATED: "TxGenerated",
}


class Event(NamedTuple):
    time: float
    sequence: int
    kind: int
    payload: Any

    def __repr__(self) -> str:
        name = _KIND_NAMES.get(self.kind, str(self.kind))
        return f"Event(t={self.time:g}, seq={self.sequence}, {name})"


class SchedulingError(Exception):
    """An event was scheduled before the current simulation time."""


class EventQueue:
    """Min-heap of events keyed on (time, sequence).

    `now` is the time of the most recently popped event; scheduling
    anything earlier than that is a contract violation and aborts.
    """

    __slots__ = ("_heap", "_seq", "now")

    def __init__(self) -> None:
        self._heap: list[Event] = []
        self._seq = 0
        self.now = 0.0

    def __len__(self) -> int:
        return len(self._heap)

    def schedule(self, time: float, kind: int, payload: Any = None) -> Event:
        if time < self.now:
            raise SchedulingError(
                f"cannot schedule {_KIND_NAMES.get(kind, kind)} at t={time:g}: "
                f"simulation time is already t={self.now:g}"
            )
        event = Event(time, self._seq, kind, payload)
        self._seq += 1
        heappush(self._heap, event)
        return event

    def pop(self) -> Event:
        event = heappop(self._heap)
        self.now = event.time
        return event
