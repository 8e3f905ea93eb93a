"""
simulator.py

Module for the discrete-event simulation of a configured NoC running one
application.

Every active union node is a simpy process with an inbox. Tokens reaching an
In port are realigned by a :class:`~sdfnoc.sim.resync.Resynchronizer`; a
node fires once per complete tuple, after its latency, and emits one token
per Out port (self-timed firing). Hard-wired edges inside a pack deliver at
once. Edges between packs leave the driver's router through its Local input
and follow the crossbar connections of the configuration: every link passes
one token per tick and adds its fixed delay. Boundary input tokens enter at
one per tick from tick 0.

Implements:

- SimResult: output streams, per-link token counts, tick count, trace.
- simulate: run one application to completion.
- Segment / reconfigure_and_run: run applications one after the other,
  reconfiguring the NoC in between.
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import pandas as pd
import simpy

from sdfnoc.exceptions import SimulationDeadlockError, SimulationError, UnconfiguredPortError
from sdfnoc.graph.dataflow_graph import Direction, Edge, Vertex
from sdfnoc.graph.evaluate import stream_length
from sdfnoc.graph.tokens import Stream, Token, as_stream
from sdfnoc.merge.packing import PackedGraph
from sdfnoc.noc.config import CrossbarConfig
from sdfnoc.noc.mesh import PORT_ORDER, Coord, InterLink, IntraLink, Link, MeshNoC, RouterPort
from sdfnoc.pnr.placement import Placement
from sdfnoc.sim.delays import DelayModel
from sdfnoc.sim.resync import Resynchronizer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimResult:
    """
    Outcome of simulating one application.

    Attributes
    ----------
    app : int
        Application id.
    outputs : mapping of Vertex to Stream
        Output stream per system output, keyed by the application's vertices.
    occupancy : Counter
        Tokens carried per link.
    ticks : int
        Tick of the last event.
    trace : tuple of str
        ``tick=<t> link=<link> token#<k>`` per link traversal, by tick.
    """

    app: int
    outputs: Mapping[Vertex, Stream]
    occupancy: Counter = field(default_factory=Counter)
    ticks: int = 0
    trace: tuple[str, ...] = ()

    def link_occupancy(self) -> pd.Series:
        """Tokens per link as a Series indexed by link name."""
        return pd.Series(
            {str(link): count for link, count in self.occupancy.items()},
            name="tokens",
            dtype="int64",
        )


class _NocRun:
    """State of one simulation run."""

    def __init__(
        self,
        noc: MeshNoC,
        config: CrossbarConfig,
        packed: PackedGraph,
        placement: Placement,
        registry,
        delays: DelayModel,
        app: int,
        length: int,
    ) -> None:
        self.env = simpy.Environment()
        self.noc = noc
        self.config = config
        self.packed = packed
        self.placement = placement
        self.registry = registry
        self.delays = delays
        self.app = app
        self.length = length
        self.link_delay = delays.link_delays(noc)
        self.next_free: dict[Link, int] = {}
        self.occupancy: Counter = Counter()
        self.trace: list[tuple[int, int, str]] = []
        self.union = packed.union
        self.active = sorted(self.union.active_nodes(app))
        self.inboxes = {n: simpy.Store(self.env) for n in self.active}
        self.driving: dict[Vertex, tuple[int, Edge]] = {}
        for idx in self.union.edges_of(app):
            edge = self.union.edges[idx]
            self.driving[edge.driver] = (idx, edge)
        self.external = set(packed.external_edges)
        self.boundary_out = set(self.union.boundary_outputs(app))
        self.collected: dict[Vertex, list[Token]] = {v: [] for v in self.boundary_out}
        self.emitted: Counter = Counter()

    def put(self, vertex: Vertex, token: Token) -> None:
        self.inboxes[vertex.node].put((vertex.port, token))

    def deliver_later(self, tick: int, vertex: Vertex, token: Token):
        yield self.env.timeout(tick - self.env.now)
        self.put(vertex, token)

    def inject(self, vertex: Vertex, stream: Stream):
        for k, token in enumerate(stream):
            yield self.env.timeout(k - self.env.now)
            self.put(vertex, token)

    def cross(self, link: Link, tick: int, k: int) -> int:
        start = max(tick, self.next_free.get(link, 0))
        self.next_free[link] = start + 1
        self.occupancy[link] += 1
        self.trace.append((start, len(self.trace), f"tick={start} link={link} token#{k}"))
        return start + self.link_delay[link]

    def send(self, idx: int, edge: Edge, token: Token, k: int) -> None:
        """Push token ``k`` of external edge ``idx`` through the configured crossbars."""
        root = self.placement[edge.driver]
        frontier: list[tuple[Coord, RouterPort, int]] = [(root, RouterPort.L, self.env.now)]
        reached = 0
        seen = set()
        while frontier:
            router, in_port, tick = frontier.pop(0)
            if (router, in_port) in seen:
                raise UnconfiguredPortError(f"e{idx} loops back to router {router}")
            seen.add((router, in_port))
            outs = sorted(
                (q for p, q in self.config.at(router) if p is in_port), key=PORT_ORDER.index
            )
            if not outs:
                raise UnconfiguredPortError(
                    f"token #{k} of e{idx} reached input {in_port.value} of router "
                    f"{router}, which is not connected"
                )
            for out_port in outs:
                t = self.cross(IntraLink(router, in_port, out_port), tick, k)
                if out_port is RouterPort.L:
                    vertex = self.placement.vertex_at(router)
                    if (
                        vertex is None
                        or vertex.direction is not Direction.IN
                        or vertex.node not in self.inboxes
                    ):
                        raise UnconfiguredPortError(
                            f"token #{k} of e{idx} reached the Local output of router "
                            f"{router}, which hosts no input of this application"
                        )
                    self.env.process(self.deliver_later(t, vertex, token))
                    reached += 1
                    continue
                neighbor = self.noc.neighbor(router, out_port)
                if neighbor is None:
                    raise UnconfiguredPortError(
                        f"token #{k} of e{idx} left router {router} through border "
                        f"port {out_port.value}"
                    )
                t = self.cross(InterLink.between(router, out_port, neighbor), t, k)
                frontier.append((neighbor, out_port.opposite, t))
        if reached != len(edge.loads):
            raise UnconfiguredPortError(
                f"e{idx} has {len(edge.loads)} loads but the configuration reaches {reached}"
            )

    def emit(self, vertex: Vertex, token: Token) -> None:
        k = self.emitted[vertex]
        self.emitted[vertex] += 1
        if vertex in self.boundary_out:
            self.collected[vertex].append(token)
        if vertex not in self.driving:
            return
        idx, edge = self.driving[vertex]
        if idx in self.external:
            self.send(idx, edge, token, k)
        else:
            for load in edge.loads:
                self.put(load, token)

    def fire(self, node_id: str, args: tuple[Token, ...]):
        node = self.union.node(node_id)
        yield self.env.timeout(self.delays.latency(node.type))
        outputs = self.registry.fire(node.type, args)
        for vertex, token in zip(node.out_vertices(), outputs):
            self.emit(vertex, token)

    def node_process(self, node_id: str):
        node = self.union.node(node_id)
        if node.in_arity == 0:
            for k in range(self.length):
                yield self.env.timeout(max(0, k - self.env.now))
                yield self.env.process(self.fire(node_id, ()))
            return
        resync = Resynchronizer(node.in_arity)
        while resync.released < self.length:
            port, token = yield self.inboxes[node_id].get()
            for args in resync.push(port, token):
                yield self.env.process(self.fire(node_id, args))


def simulate(
    noc: MeshNoC,
    config: CrossbarConfig,
    packed: PackedGraph,
    placement: Placement,
    routes: Mapping[int, frozenset[Link]],
    registry,
    inputs: Mapping[Vertex, Sequence],
    delays: DelayModel | None = None,
    app: int = 1,
    *,
    length: int | None = None,
) -> SimResult:
    """
    Execute application ``app`` on the configured NoC.

    Parameters
    ----------
    noc : MeshNoC
        The mesh.
    config : CrossbarConfig
        Configuration of ``app``.
    packed : PackedGraph
        Packed union graph.
    placement : Placement
        Router of every pack port.
    routes : mapping of int to frozenset of Link
        Routes of the external edges; every link of a route of ``app`` must
        carry exactly one token per stream index.
    registry : OperatorRegistry
        Operators of the node types.
    inputs : mapping of Vertex to sequence
        One stream per system input, keyed by the application graph's own
        vertices.
    delays : DelayModel, optional
        Link delays and firing latencies. Defaults to ``DelayModel()``.
    app : int
        Application id.
    length : int, optional
        Stream length for applications without system inputs.

    Returns
    -------
    SimResult
        Outputs keyed by the application's own output vertices.

    Raises
    ------
    SimulationDeadlockError
        If the run ends with an incomplete output stream.
    UnconfiguredPortError
        If a token meets a crossbar input without connection.
    SimulationError
        If a route link did not carry one token per index.
    OperatorDomainError
        If an operator rejects its tokens.
    """
    union = packed.union
    graph = union.app(app)
    delays = delays or DelayModel()
    streams = {v: as_stream(s) for v, s in inputs.items()}
    n = stream_length(streams, graph.input_vertices(), length)
    run = _NocRun(noc, config, packed, placement, registry, delays, app, n)
    for node_id in run.active:
        run.env.process(run.node_process(node_id))
    for vertex, stream in streams.items():
        run.env.process(run.inject(union.map_vertex(app, vertex), stream))
    run.env.run()

    outputs = {}
    for vertex in graph.output_vertices():
        got = run.collected[union.map_vertex(app, vertex)]
        if len(got) != n:
            raise SimulationDeadlockError(
                f"application {graph.name}: output {vertex} produced {len(got)} of {n} "
                f"tokens before the NoC went idle at tick {run.env.now}"
            )
        outputs[vertex] = tuple(got)
    for idx in union.edges_of(app):
        for link in routes.get(idx, ()):
            if run.occupancy[link] != n:
                raise SimulationError(
                    f"link {link} of e{idx} carried {run.occupancy[link]} tokens, expected {n}"
                )
    trace = tuple(line for _, _, line in sorted(run.trace))
    occupancy = Counter({link: run.occupancy[link] for link in noc.sort_links(run.occupancy)})
    logger.info(
        "simulated %s: %d tokens per stream in %d ticks over %d links",
        graph.name,
        n,
        run.env.now,
        len(occupancy),
    )
    return SimResult(app, outputs, occupancy, int(run.env.now), trace)


@dataclass(frozen=True)
class Segment:
    """One step of a reconfiguration scenario: an application and its inputs."""

    app: int | str
    inputs: Mapping[Vertex, Sequence]
    delays: DelayModel | None = None
    length: int | None = None


def reconfigure_and_run(result, registry, scenario: Sequence[Segment]) -> list[SimResult]:
    """
    Run applications one after the other on a placed and routed NoC.

    Before each segment the NoC is switched to the segment's configuration;
    each run drains completely before the next starts.

    Parameters
    ----------
    result : PnrResult
        Placement, routes and configurations.
    registry : OperatorRegistry
        Operators of the node types.
    scenario : sequence of Segment
        The segments, in order.

    Returns
    -------
    list of SimResult
        One result per segment.
    """
    results = []
    for k, segment in enumerate(scenario):
        app = result.packed.union.resolve_app(segment.app)
        logger.info("segment %d: reconfiguring for application %d", k, app)
        results.append(
            simulate(
                result.noc,
                result.configs[app],
                result.packed,
                result.placement,
                result.routes,
                registry,
                segment.inputs,
                segment.delays,
                app,
                length=segment.length,
            )
        )
    return results
