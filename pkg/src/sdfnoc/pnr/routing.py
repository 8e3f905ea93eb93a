"""
routing.py

Module for routing the external edges of a placed union graph over the NoC.

Each external edge becomes a tree of links rooted at the Local input of its
driver's router and reaching the Local output of every load's router. Edges
whose color sets intersect may be active at the same time and must not share
a resource; edges with disjoint color sets may share links freely.

A resource is a physical inter-router link or a crossbar output port, so two
co-active edges never drive one output from different inputs.

The router is a negotiated-congestion maze router: nets are routed one load
at a time by a multi-source shortest path from the net's partial tree, with
link cost ``1 + history + (iteration + 1) * conflicts``; after every pass the
nets involved in a conflict are ripped up, the history cost of each
conflicting resource is raised by one, and the ripped nets are rerouted.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Mapping
from functools import lru_cache

import networkx as nx

from sdfnoc.exceptions import UnroutableError
from sdfnoc.merge.packing import PackedGraph
from sdfnoc.noc.mesh import PORT_ORDER, Coord, InterLink, IntraLink, Link, MeshNoC, RouterPort
from sdfnoc.pnr.placement import Placement

logger = logging.getLogger(__name__)

Routes = Mapping[int, frozenset[Link]]
PortNode = tuple[str, Coord, RouterPort]


@lru_cache(maxsize=32)
def routing_graph(noc: MeshNoC) -> nx.DiGraph:
    """
    Directed graph of crossbar ports.

    Nodes are ``("in", router, port)`` and ``("out", router, port)``; each
    arc carries the ``link`` it stands for. Local inputs have no incoming arc
    and Local outputs no outgoing arc, so a path can only start or end at a
    Local port.
    """
    graph = nx.DiGraph()
    for router in noc.routers:
        for p in PORT_ORDER:
            if not noc.has_port(router, p):
                continue
            for q in PORT_ORDER:
                if q is p or not noc.has_port(router, q):
                    continue
                graph.add_edge(("in", router, p), ("out", router, q), link=IntraLink(router, p, q))
        for q in PORT_ORDER[:4]:
            neighbor = noc.neighbor(router, q)
            if neighbor is not None:
                graph.add_edge(
                    ("out", router, q),
                    ("in", neighbor, q.opposite),
                    link=InterLink.between(router, q, neighbor),
                )
    return graph


def resource(link: Link) -> tuple:
    """Exclusive resource behind a link: the inter link itself or a crossbar output."""
    if isinstance(link, IntraLink):
        return ("out", link.router, link.out_port)
    return ("link", link)


def net_order(packed: PackedGraph) -> list[int]:
    """External edges by color class, then descending fanout, then index."""
    return sorted(
        packed.external_edges,
        key=lambda i: (
            tuple(sorted(packed.edge(i).colors)),
            -len(packed.edge(i).loads),
            i,
        ),
    )


class _Router:
    def __init__(self, packed: PackedGraph, noc: MeshNoC, placement: Placement):
        self.packed = packed
        self.placement = placement
        self.graph = routing_graph(noc)
        self.history: dict[tuple, int] = defaultdict(int)
        self.occupancy: dict[tuple, set[int]] = defaultdict(set)
        self.routes: dict[int, frozenset[Link]] = {}

    def colors(self, net: int) -> frozenset[int]:
        return self.packed.edge(net).colors

    def conflicts(self, net: int, res: tuple) -> int:
        colors = self.colors(net)
        return sum(1 for other in self.occupancy[res] if other != net and colors & self.colors(other))

    def route_net(self, net: int, iteration: int) -> frozenset[Link]:
        edge = self.packed.edge(net)
        root = self.placement[edge.driver]
        tree_nodes: set[PortNode] = {("in", root, RouterPort.L)}
        links: set[Link] = set()

        def weight(u, v, data):
            res = resource(data["link"])
            return 1 + self.history[res] + (iteration + 1) * self.conflicts(net, res)

        loads = sorted(
            edge.loads,
            key=lambda v: (
                abs(self.placement[v][0] - root[0]) + abs(self.placement[v][1] - root[1]),
                v,
            ),
        )
        for load in loads:
            target = ("out", self.placement[load], RouterPort.L)
            if target in tree_nodes:
                continue
            try:
                _, path = nx.multi_source_dijkstra(
                    self.graph, sorted(tree_nodes, key=_node_key), target, weight=weight
                )
            except (nx.NetworkXNoPath, nx.NodeNotFound):
                raise UnroutableError([net], iteration) from None
            for u, v in zip(path, path[1:]):
                links.add(self.graph.edges[u, v]["link"])
            tree_nodes.update(path)
        return frozenset(links)

    def occupy(self, net: int) -> None:
        for link in self.routes[net]:
            self.occupancy[resource(link)].add(net)

    def rip_up(self, net: int) -> None:
        for link in self.routes.pop(net):
            self.occupancy[resource(link)].discard(net)

    def conflicting(self) -> tuple[set[int], set[tuple]]:
        nets, resources = set(), set()
        for res, users in self.occupancy.items():
            users = sorted(users)
            for k, a in enumerate(users):
                for b in users[k + 1 :]:
                    if self.colors(a) & self.colors(b):
                        nets.update((a, b))
                        resources.add(res)
        return nets, resources


def _node_key(node: PortNode) -> tuple:
    kind, (r, c), port = node
    return (kind, r, c, port.index)


def route(
    packed: PackedGraph,
    noc: MeshNoC,
    placement: Placement,
    max_rip_up: int = 50,
) -> dict[int, frozenset[Link]]:
    """
    Route every external edge of ``packed`` as a driver-rooted link tree.

    Parameters
    ----------
    packed : PackedGraph
        Packed union graph.
    noc : MeshNoC
        Target mesh.
    placement : Placement
        Valid placement of every pack port.
    max_rip_up : int, optional
        Maximum number of rip-up-and-reroute iterations. Defaults to 50.

    Returns
    -------
    dict of int to frozenset of Link
        External edge index -> links of its route.

    Raises
    ------
    UnroutableError
        If conflicts remain after ``max_rip_up`` iterations; ``blocked`` lists
        the nets still in conflict.
    """
    if max_rip_up < 0:
        raise ValueError(f"max_rip_up must be >= 0, got {max_rip_up}")
    router = _Router(packed, noc, placement)
    order = net_order(packed)
    for iteration in range(max_rip_up + 1):
        for net in order:
            if net not in router.routes:
                router.routes[net] = router.route_net(net, iteration)
                router.occupy(net)
        nets, resources = router.conflicting()
        if not nets:
            logger.info(
                "routed %d nets in %d iterations using %d links",
                len(order),
                iteration + 1,
                sum(len(r) for r in router.routes.values()),
            )
            return {net: router.routes[net] for net in sorted(router.routes)}
        logger.debug(
            "iteration %d: ripping up nets %s", iteration, ", ".join(f"e{n}" for n in sorted(nets))
        )
        if iteration == max_rip_up:
            break
        for res in resources:
            router.history[res] += 1
        for net in nets:
            router.rip_up(net)
    raise UnroutableError(sorted(nets), max_rip_up)
