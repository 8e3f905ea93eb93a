"""
delays.py

Module for the timing model of the NoC simulation.

Router delays are unknown to the application: every link gets a fixed delay
drawn once per seed from ``0..max_delay`` ticks, so tokens leave a link in the
order they entered it. Nodes fire after a fixed latency per type label.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from sdfnoc.noc.mesh import Link, MeshNoC


@dataclass(frozen=True)
class DelayModel:
    """
    Per-link delays and per-type firing latencies.

    Parameters
    ----------
    seed : int, optional
        Seed of the link delay draw. Defaults to 0.
    max_delay : int, optional
        Largest link delay D in ticks. Defaults to 0.
    latencies : mapping of str to int, optional
        Firing latency per type label.
    default_latency : int, optional
        Latency of types missing from ``latencies``. Defaults to 1.

    Examples
    --------
    >>> from sdfnoc.noc.mesh import build_mesh
    >>> delays = DelayModel(seed=3, max_delay=4).link_delays(build_mesh(2, 2))
    >>> all(0 <= d <= 4 for d in delays.values())
    True
    """

    seed: int = 0
    max_delay: int = 0
    latencies: Mapping[str, int] = field(default_factory=dict)
    default_latency: int = 1

    def __post_init__(self) -> None:
        if self.max_delay < 0:
            raise ValueError(f"max_delay must be >= 0, got {self.max_delay}")
        if self.default_latency < 0 or any(v < 0 for v in self.latencies.values()):
            raise ValueError("latencies must be >= 0")
        object.__setattr__(self, "latencies", dict(self.latencies))

    def link_delays(self, noc: MeshNoC) -> dict[Link, int]:
        """Fixed delay of every link of ``noc``, in link enumeration order."""
        rng = np.random.default_rng(self.seed)
        draws = rng.integers(0, self.max_delay + 1, size=len(noc.links))
        return {link: int(d) for link, d in zip(noc.links, draws)}

    def latency(self, type_label: str) -> int:
        return self.latencies.get(type_label, self.default_latency)
