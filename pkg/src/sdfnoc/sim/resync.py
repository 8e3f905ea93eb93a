"""
resync.py

Module for realigning skewed token streams.

Each stream is FIFO, so the k-th token of every stream belongs to firing k:
no index travels with the tokens. A null token is an ordinary token and keeps
its slot.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence

from sdfnoc.graph.tokens import Token


class Resynchronizer:
    """
    Collects tokens per input port and releases complete tuples in index order.

    Parameters
    ----------
    ports : int
        Number of input streams.

    Examples
    --------
    >>> r = Resynchronizer(2)
    >>> r.push(0, "a")
    []
    >>> r.push(0, "b")
    []
    >>> r.push(1, "x")
    [('a', 'x')]
    """

    def __init__(self, ports: int) -> None:
        if ports < 1:
            raise ValueError(f"ports must be >= 1, got {ports}")
        self._queues: list[deque[Token]] = [deque() for _ in range(ports)]
        self.released = 0

    @property
    def ports(self) -> int:
        return len(self._queues)

    def push(self, port: int, token: Token) -> list[tuple[Token, ...]]:
        """Queue ``token`` on ``port``; return the tuples it completes."""
        self._queues[port].append(token)
        ready = []
        while all(self._queues):
            ready.append(tuple(q.popleft() for q in self._queues))
        self.released += len(ready)
        return ready

    def pending(self) -> tuple[int, ...]:
        """Tokens waiting on each port."""
        return tuple(len(q) for q in self._queues)


def resynchronize(
    streams: Sequence[Sequence[tuple[int, Token]]],
) -> list[tuple[int, tuple[Token, ...]]]:
    """
    Align timed streams into token tuples.

    Parameters
    ----------
    streams : sequence of sequence of (int, Token)
        Per stream, ``(arrival tick, token)`` pairs in stream order, ticks
        non-decreasing.

    Returns
    -------
    list of (int, tuple of Token)
        Tuple k, released at the tick its last token arrives.

    Examples
    --------
    >>> resynchronize([[(0, "a"), (1, "b")], [(2, "x"), (3, "y")]])
    [(2, ('a', 'x')), (3, ('b', 'y'))]
    """
    if not streams:
        return []
    for port, s in enumerate(streams):
        ticks = [tick for tick, _ in s]
        if ticks != sorted(ticks):
            raise ValueError(f"stream {port} arrives out of order")
    arrivals = sorted(
        (
            (tick, port, k, token)
            for port, s in enumerate(streams)
            for k, (tick, token) in enumerate(s)
        ),
        key=lambda a: (a[0], a[1], a[2]),
    )
    resync = Resynchronizer(len(streams))
    released = []
    for tick, port, _, token in arrivals:
        released += [(tick, args) for args in resync.push(port, token)]
    return released
