"""
placement.py

Module for mapping pack ports onto the Local ports of a mesh NoC.

Every pack port (endpoint of an external edge, or a system input/output of
some application) is assigned its own router. The cost of a placement is the
half-perimeter wirelength (HPWL) of every external edge weighted by its
number of colors, plus ``dispersion_weight`` times the HPWL of each pack's
ports, which keeps the ports of one pack close together.

Implements:

- Placement: the map sigma_M from vertices to routers.
- AnnealingSchedule: the fixed simulated annealing schedule.
- placement_cost: the cost function above.
- place: greedy constructive seeding followed by simulated annealing.
"""

from __future__ import annotations

import logging
import math
import random
from collections import deque
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from sdfnoc.exceptions import PlacementCapacityError
from sdfnoc.graph.dataflow_graph import Vertex
from sdfnoc.merge.packing import PackedGraph
from sdfnoc.noc.mesh import Coord, MeshNoC

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Placement:
    """
    Router of every placed vertex.

    No validity is enforced here: :func:`sdfnoc.pnr.check.check` is the
    verifier.

    Parameters
    ----------
    sites : mapping of Vertex to Coord
        Union vertex -> router holding its Local port.
    """

    sites: Mapping[Vertex, Coord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "sites", {v: tuple(self.sites[v]) for v in sorted(self.sites)}
        )

    def __getitem__(self, vertex: Vertex) -> Coord:
        return self.sites[vertex]

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.sites

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.sites)

    def __len__(self) -> int:
        return len(self.sites)

    def items(self):
        return self.sites.items()

    @cached_property
    def occupants(self) -> dict[Coord, Vertex]:
        """Router -> placed vertex (the last one if the placement is not injective)."""
        return {site: v for v, site in self.sites.items()}

    def vertex_at(self, router: Coord) -> Vertex | None:
        return self.occupants.get(router)

    def is_injective(self) -> bool:
        return len(set(self.sites.values())) == len(self.sites)


@dataclass(frozen=True)
class AnnealingSchedule:
    """
    Simulated annealing schedule of :func:`place`.

    The temperature starts at ``start_temperature`` and is multiplied by
    ``cooling`` after ``accepted_per_step`` accepted or ``attempted_per_step``
    attempted moves, whichever comes first. Annealing stops once the
    temperature falls below ``stop_temperature``.
    """

    start_temperature: float = 1.0
    cooling: float = 0.95
    accepted_per_step: int = 100
    attempted_per_step: int = 1000
    stop_temperature: float = 0.01
    dispersion_weight: float = 1.0

    def __post_init__(self) -> None:
        if not 0 < self.cooling < 1:
            raise ValueError(f"cooling must be in (0, 1), got {self.cooling}")
        if self.accepted_per_step < 1 or self.attempted_per_step < 1:
            raise ValueError("moves per temperature step must be >= 1")
        if self.stop_temperature <= 0 or self.start_temperature <= 0:
            raise ValueError("temperatures must be positive")
        if self.dispersion_weight < 0:
            raise ValueError(
                f"dispersion_weight must be >= 0, got {self.dispersion_weight}"
            )


def _hpwl(sites: list[Coord]) -> int:
    if len(sites) < 2:
        return 0
    rows = [s[0] for s in sites]
    cols = [s[1] for s in sites]
    return max(rows) - min(rows) + max(cols) - min(cols)


def _nets(packed: PackedGraph, dispersion_weight: float) -> list[tuple[float, tuple[Vertex, ...]]]:
    nets = []
    for i in packed.external_edges:
        edge = packed.edge(i)
        nets.append((float(len(edge.colors)), edge.vertices))
    if dispersion_weight:
        for p in packed.packs:
            if len(p.ports) > 1:
                nets.append((dispersion_weight, p.ports))
    return nets


def placement_cost(
    packed: PackedGraph, placement: Placement, dispersion_weight: float = 1.0
) -> float:
    """
    Weighted wirelength of a placement.

    Parameters
    ----------
    packed : PackedGraph
        Packed union graph.
    placement : Placement
        Sites of all pack ports.
    dispersion_weight : float, optional
        Weight of the per-pack port HPWL. Defaults to 1.

    Returns
    -------
    float
        ``sum(|colors(e)| * HPWL(e)) + dispersion_weight * sum(HPWL(pack ports))``.
    """
    return sum(
        weight * _hpwl([placement[v] for v in vertices])
        for weight, vertices in _nets(packed, dispersion_weight)
    )


class _Annealer:
    """Incremental cost bookkeeping for :func:`place`."""

    def __init__(self, packed: PackedGraph, noc: MeshNoC, dispersion_weight: float):
        self.noc = noc
        self.vertices = packed.placeable_vertices()
        self.nets = _nets(packed, dispersion_weight)
        self.nets_of: dict[Vertex, list[int]] = {v: [] for v in self.vertices}
        for k, (_, vertices) in enumerate(self.nets):
            for v in vertices:
                self.nets_of[v].append(k)
        self.sites: dict[Vertex, Coord] = {}
        self.occupant: dict[Coord, Vertex] = {}

    def net_cost(self, k: int, sites: Mapping[Vertex, Coord]) -> float:
        weight, vertices = self.nets[k]
        return weight * _hpwl([sites[v] for v in vertices if v in sites])

    def cost(self) -> float:
        return sum(self.net_cost(k, self.sites) for k in range(len(self.nets)))

    def assign(self, vertex: Vertex, site: Coord) -> None:
        self.sites[vertex] = site
        self.occupant[site] = vertex

    def seed_order(self) -> list[Vertex]:
        """Breadth-first order over vertices sharing a net."""
        neighbors: dict[Vertex, set[Vertex]] = {v: set() for v in self.vertices}
        for _, vertices in self.nets:
            for v in vertices:
                neighbors[v].update(vertices)
        order: list[Vertex] = []
        seen: set[Vertex] = set()
        for start in self.vertices:
            if start in seen:
                continue
            seen.add(start)
            queue = deque([start])
            while queue:
                v = queue.popleft()
                order.append(v)
                for u in sorted(neighbors[v] - seen):
                    seen.add(u)
                    queue.append(u)
        return order

    def seed(self) -> None:
        """Put each vertex on the free router with the lowest partial cost."""
        for v in self.seed_order():
            best_site, best_cost = None, math.inf
            for site in self.noc.routers:
                if site in self.occupant:
                    continue
                trial = {**self.sites, v: site}
                c = sum(self.net_cost(k, trial) for k in self.nets_of[v])
                if c < best_cost:
                    best_site, best_cost = site, c
            self.assign(v, best_site)

    def delta(self, vertex: Vertex, site: Coord) -> float:
        """Cost change of moving ``vertex`` to ``site`` (swapping with its occupant)."""
        other = self.occupant.get(site)
        affected = set(self.nets_of[vertex])
        trial = dict(self.sites)
        trial[vertex] = site
        if other is not None:
            affected.update(self.nets_of[other])
            trial[other] = self.sites[vertex]
        return sum(self.net_cost(k, trial) - self.net_cost(k, self.sites) for k in affected)

    def move(self, vertex: Vertex, site: Coord) -> None:
        old = self.sites[vertex]
        other = self.occupant.get(site)
        del self.occupant[old]
        self.assign(vertex, site)
        if other is not None:
            self.assign(other, old)


def place(
    packed: PackedGraph,
    noc: MeshNoC,
    seed: int = 0,
    schedule: AnnealingSchedule | None = None,
) -> Placement:
    """
    Place every pack port on its own router.

    Parameters
    ----------
    packed : PackedGraph
        Packed union graph; its :meth:`~PackedGraph.placeable_vertices` are
        placed.
    noc : MeshNoC
        Target mesh.
    seed : int, optional
        Seed of the move generator. Defaults to 0.
    schedule : AnnealingSchedule, optional
        Annealing schedule; defaults to ``AnnealingSchedule()``.

    Returns
    -------
    Placement
        Injective placement; the lowest-cost one visited.

    Raises
    ------
    PlacementCapacityError
        If there are more vertices than routers.

    Examples
    --------
    >>> from sdfnoc.graph.parser import parse_app_graph
    >>> from sdfnoc.merge.merger import merge
    >>> from sdfnoc.noc.mesh import build_mesh
    >>> g = parse_app_graph("app a\\nnode x type=ID in=1 out=1\\n")
    >>> _, packed = merge([g])
    >>> sorted(place(packed, build_mesh(1, 2)).sites.values())
    [(0, 0), (0, 1)]
    """
    schedule = schedule or AnnealingSchedule()
    annealer = _Annealer(packed, noc, schedule.dispersion_weight)
    count = len(annealer.vertices)
    if count > noc.capacity:
        raise PlacementCapacityError(
            f"{count} vertices to place but the {noc} mesh has only "
            f"{noc.capacity} Local ports"
        )
    annealer.seed()
    cost = annealer.cost()
    best_sites, best_cost = dict(annealer.sites), cost
    logger.info("seed placement of %d vertices on %s: cost %g", count, noc, cost)
    if count and noc.capacity > 1:
        rng = random.Random(seed)
        temperature = schedule.start_temperature
        accepted = attempted = 0
        while temperature >= schedule.stop_temperature:
            vertex = annealer.vertices[rng.randrange(count)]
            site = noc.routers[rng.randrange(noc.capacity)]
            attempted += 1
            if site != annealer.sites[vertex]:
                delta = annealer.delta(vertex, site)
                if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                    annealer.move(vertex, site)
                    cost += delta
                    accepted += 1
                    if cost < best_cost:
                        best_sites, best_cost = dict(annealer.sites), cost
            if accepted >= schedule.accepted_per_step or attempted >= schedule.attempted_per_step:
                temperature *= schedule.cooling
                accepted = attempted = 0
    logger.info("placement cost after annealing: %g", best_cost)
    return Placement(best_sites)
