"""Transaction workload: Poisson arrivals, exponential fees.

Fees use an exponential distribution with a configurable mean and
inter-arrival times are exponential with mean 1/rate, which makes the
arrival process Poisson. Each transaction originates at a uniformly
chosen node and is broadcast from there through the network model.
"""

from random import Random

from .mempool import Transaction


class TxGenerator:
    """Draws transactions in a fixed order (fee, origin, next gap) so a
    run consumes the shared RNG stream reproducibly."""

    __slots__ = ("fee_mean", "rate", "node_count", "_next_id")

    def __init__(self, fee_mean: float, rate: float, node_count: int) -> None:
        if fee_mean <= 0:
            raise ValueError("fee mean must be > 0")
        if rate <= 0:
            raise ValueError("generation rate must be > 0")
        self.fee_mean = fee_mean
        self.rate = rate
        self.node_count = node_count
        self._next_id = 0

    def first_arrival(self, rng: Random) -> float:
        return rng.expovariate(self.rate)

    def next_tx(self, rng: Random, now: float) -> tuple[Transaction, int, float]:
        """The transaction arriving at `now`, its origin node, and the
        time of the arrival after it."""
        tx = Transaction(id=self._next_id, fee=rng.expovariate(1.0 / self.fee_mean),
                         created_at=now)
        self._next_id += 1
        origin = rng.randrange(self.node_count)
        next_arrival = now + rng.expovariate(self.rate)
        return tx, origin, next_arrival

    @property
    def created_count(self) -> int:
        return self._next_id
