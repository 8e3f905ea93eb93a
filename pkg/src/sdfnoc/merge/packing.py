"""
packing.py

Module for packing union nodes and dividing the union graph into packs.

Nodes joined by edges of one color combination (the exact color set of an
edge) are flooded with a common mark; nodes with the same mark become one
pack. Edges inside a pack are hardwired, edges between packs are routed over
the NoC.

Implements:

- combination_order: the order in which color combinations are flooded.
- pack: assign a mark to every union node.
- Pack / PackedGraph: the division of a union graph into packs.
- divide: build the PackedGraph from marks.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from sdfnoc.graph.dataflow_graph import Edge, Vertex
from sdfnoc.merge.union_graph import UnionGraph

logger = logging.getLogger(__name__)


def combination_order(union: UnionGraph, seed: int | None = None) -> list[frozenset[int]]:
    """
    Order in which color combinations are flooded.

    Parameters
    ----------
    union : UnionGraph
        Union graph.
    seed : int, optional
        ``None`` gives the lexicographic order of the sorted color tuples; an
        integer shuffles that order with ``random.Random(seed)``.

    Examples
    --------
    >>> from sdfnoc.graph.parser import parse_app_graph
    >>> from sdfnoc.merge.union_graph import build_union
    >>> g = parse_app_graph("app a\\nnode x type=ID in=1 out=1\\n")
    >>> combination_order(build_union([g]))
    []
    """
    combos = union.color_combinations()
    if seed is not None:
        random.Random(seed).shuffle(combos)
    return combos


def pack(union: UnionGraph, seed: int | None = None) -> dict[str, int]:
    """
    Mark union nodes so that nodes joined by same-combination edges share a mark.

    For each color combination in :func:`combination_order`, repeatedly take
    the first edge of exactly that color set with an unmarked endpoint, give
    its unmarked endpoints the current mark and keep expanding over edges of
    the same color set through newly marked nodes only; then move to the next
    mark. Nodes never reached get a fresh mark each. Marked nodes are never
    re-marked.

    Parameters
    ----------
    union : UnionGraph
        Union graph.
    seed : int, optional
        Seed of the combination order; ``None`` is deterministic.

    Returns
    -------
    dict of str to int
        Union node id -> mark, marks numbered 0, 1, ... in creation order.

    Examples
    --------
    >>> from sdfnoc.graph.parser import parse_app_graph
    >>> from sdfnoc.merge.union_graph import build_union
    >>> g = parse_app_graph(
    ...     "app a\\nnode a type=A in=0 out=1\\nnode b type=B in=1 out=1\\n"
    ...     "node c type=C in=1 out=0\\nedge a.out0 -> b.in0\\nedge b.out0 -> c.in0\\n"
    ... )
    >>> pack(build_union([g]))
    {'A#1': 0, 'B#1': 0, 'C#1': 0}
    """
    marks: dict[str, int] = {}
    mark = 0
    for combo in combination_order(union, seed):
        edges = [e for e in union.edges if e.colors == combo]
        incident: dict[str, list[Edge]] = {}
        for edge in edges:
            for node in edge.nodes:
                incident.setdefault(node, []).append(edge)
        while True:
            start = next(
                (e for e in edges if any(n not in marks for n in e.nodes)), None
            )
            if start is None:
                break
            frontier: deque[str] = deque()
            for node in start.nodes:
                if node not in marks:
                    marks[node] = mark
                    frontier.append(node)
            while frontier:
                for edge in incident[frontier.popleft()]:
                    for node in edge.nodes:
                        if node not in marks:
                            marks[node] = mark
                            frontier.append(node)
            mark += 1
    for node in union.nodes:
        if node.id not in marks:
            marks[node.id] = mark
            mark += 1
    return {n.id: marks[n.id] for n in union.nodes}


@dataclass(frozen=True)
class Pack:
    """
    A group of union nodes realized as one NoC node.

    Attributes
    ----------
    mark : int
        Packing mark.
    nodes : tuple of str
        Union node ids, sorted.
    ports : tuple of Vertex
        Vertices exposed at the pack boundary (endpoints of external edges and
        system inputs/outputs of any application), sorted. Each needs one
        Local port.
    """

    mark: int
    nodes: tuple[str, ...]
    ports: tuple[Vertex, ...]

    @property
    def name(self) -> str:
        return f"q{self.mark}"


@dataclass(frozen=True)
class PackedGraph:
    """
    Division of a union graph into packs.

    Attributes
    ----------
    union : UnionGraph
        The divided union graph.
    marks : mapping of str to int
        Union node id -> mark.
    packs : tuple of Pack
        Packs sorted by mark; they partition the union nodes.
    internal_edges : tuple of int
        Indices of union edges whose driver and loads lie in one pack.
    external_edges : tuple of int
        Indices of the remaining union edges, routed over the NoC.
    """

    union: UnionGraph
    marks: Mapping[str, int]
    packs: tuple[Pack, ...]
    internal_edges: tuple[int, ...]
    external_edges: tuple[int, ...]

    @cached_property
    def pack_map(self) -> dict[int, Pack]:
        return {p.mark: p for p in self.packs}

    def __iter__(self) -> Iterator[Pack]:
        return iter(self.packs)

    def __len__(self) -> int:
        return len(self.packs)

    def edge(self, index: int) -> Edge:
        return self.union.edges[index]

    def pack_of(self, node_id: str) -> Pack:
        return self.pack_map[self.marks[node_id]]

    def is_internal(self, index: int) -> bool:
        return index in set(self.internal_edges)

    def external_vertices(self) -> frozenset[Vertex]:
        return frozenset(v for i in self.external_edges for v in self.edge(i).vertices)

    def placeable_vertices(self) -> tuple[Vertex, ...]:
        """All pack ports, sorted: the vertices that need a Local port."""
        return tuple(sorted(v for p in self.packs for v in p.ports))


def divide(union: UnionGraph, marks: Mapping[str, int]) -> PackedGraph:
    """
    Group union nodes by mark and split edges into internal and external.

    Parameters
    ----------
    union : UnionGraph
        Union graph.
    marks : mapping of str to int
        A mark for every union node.

    Returns
    -------
    PackedGraph
        Packs with their boundary ports and the edge split.

    Raises
    ------
    ValueError
        If a union node has no mark or a mark names an unknown node.
    """
    node_ids = {n.id for n in union.nodes}
    if set(marks) != node_ids:
        missing = sorted(node_ids - set(marks))
        unknown = sorted(set(marks) - node_ids)
        raise ValueError(
            f"marks must cover the union nodes; missing {missing}, unknown {unknown}"
        )
    internal, external = [], []
    for i, edge in enumerate(union.edges):
        if len({marks[n] for n in edge.nodes}) == 1:
            internal.append(i)
        else:
            external.append(i)
    exposed = {v for i in external for v in union.edges[i].vertices}
    exposed |= union.boundary_vertices()
    members: dict[int, list[str]] = {}
    for node in union.nodes:
        members.setdefault(marks[node.id], []).append(node.id)
    packs = tuple(
        Pack(
            mark,
            tuple(sorted(members[mark])),
            tuple(sorted(v for v in exposed if marks[v.node] == mark)),
        )
        for mark in sorted(members)
    )
    packed = PackedGraph(union, dict(marks), packs, tuple(internal), tuple(external))
    logger.info(
        "divided %d union nodes into %d packs: %d internal, %d external edges",
        len(union.nodes),
        len(packs),
        len(internal),
        len(external),
    )
    return packed
