"""Static network topology and hop-based propagation delay.

Nodes sit on a ring (or, degenerately, a complete graph) and a message
travels one hop per `hop_delay` seconds. Broadcast is modeled as direct
origin-to-target delivery at hop-distance x hop_delay: for a static
topology this yields the same delivery times as store-and-forward
gossip with far fewer events. No loss, no per-link jitter.
"""

from dataclasses import dataclass

RING = "ring"
COMPLETE = "complete"


@dataclass(frozen=True)
class Topology:
    node_count: int
    kind: str = RING
    hop_delay: float = 5.0

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise ValueError("topology needs at least one node")
        if self.kind not in (RING, COMPLETE):
            raise ValueError(f"unknown topology kind: {self.kind!r}")
        if self.hop_delay < 0:
            raise ValueError("hop delay must be >= 0")

    def _check(self, node: int) -> None:
        if not 0 <= node < self.node_count:
            raise ValueError(
                f"node id {node} out of range for {self.kind}({self.node_count})"
            )

    def distance(self, a: int, b: int) -> int:
        """Hop count between two nodes (0 for a == b)."""
        self._check(a)
        self._check(b)
        if a == b:
            return 0
        if self.kind == COMPLETE:
            return 1
        around = abs(a - b)
        return min(around, self.node_count - around)

    def propagation_delay(self, from_node: int, to_node: int) -> float:
        """Seconds for a message from one node to reach another."""
        return self.distance(from_node, to_node) * self.hop_delay

    def max_delay(self) -> float:
        """Worst-case delivery delay between any two nodes."""
        if self.node_count == 1:
            return 0.0
        if self.kind == COMPLETE:
            return self.hop_delay
        return (self.node_count // 2) * self.hop_delay

    def broadcast(self, origin: int, now: float) -> list[tuple[int, float]]:
        """Delivery schedule for a message sent by `origin` at `now`.

        Returns one (target, deliver_at) pair per node other than the
        origin, sorted by (deliver_at, target). The origin itself sees
        its own payload at `now` and is not listed.
        """
        self._check(origin)
        out = [
            (target, now + self.propagation_delay(origin, target))
            for target in range(self.node_count)
            if target != origin
        ]
        out.sort(key=lambda pair: (pair[1], pair[0]))
        return out

    def delivery_groups(self, origin: int) -> tuple[tuple[float, tuple[int, ...]], ...]:
        """Targets grouped by delay, ascending.

        Equivalent to `broadcast` with the origin's send time factored
        out; the engine schedules one event per group instead of one
        per target.
        """
        self._check(origin)
        groups: dict[float, list[int]] = {}
        for target in range(self.node_count):
            if target == origin:
                continue
            groups.setdefault(self.propagation_delay(origin, target), []).append(target)
        return tuple(
            (delay, tuple(sorted(groups[delay]))) for delay in sorted(groups)
        )
