"""
dataflow_graph.py

Module for application dataflow graphs: typed nodes with ordered ports
(vertices) connected by single-driver, multi-load edges.

Implements:

- Direction, Vertex, Node, Edge: the building blocks shared with the merged
  union graph.
- DataflowGraph: one validated application graph.
- validate_acyclic: node-level cycle detection with a witness cycle.
- eliminate_dead_nodes: keep only nodes that can reach a declared output.

Unconnected In ports of a graph are its system inputs and unconnected Out
ports its system outputs.

Examples
--------
>>> from sdfnoc.graph.dataflow_graph import DataflowGraph, Edge, Node, Vertex
>>> g = DataflowGraph(
...     "a",
...     (Node("x", "CONST", 0, 1), Node("y", "ID", 1, 1)),
...     (Edge(Vertex.parse("x.out0"), (Vertex.parse("y.in0"),)),),
... )
>>> [str(v) for v in g.output_vertices()]
['y.out0']
>>> validate_acyclic(g).ok
True
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property

import networkx as nx

from sdfnoc.exceptions import GraphStructureError

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VERTEX = re.compile(r"^(?P<node>.+)\.(?P<direction>in|out)(?P<port>\d+)$")


def is_identifier(text: str) -> bool:
    """Return True if ``text`` matches ``[A-Za-z_][A-Za-z0-9_]*``."""
    return IDENTIFIER.fullmatch(text) is not None


class Direction(str, Enum):
    IN = "in"
    OUT = "out"


@dataclass(frozen=True, order=True)
class Vertex:
    """A port of a node, written ``<node>.in<k>`` or ``<node>.out<k>``."""

    node: str
    direction: Direction
    port: int

    def __str__(self) -> str:
        return f"{self.node}.{self.direction.value}{self.port}"

    @classmethod
    def parse(cls, text: str) -> Vertex:
        """
        Parse ``<node>.in<k>`` or ``<node>.out<k>``.

        Raises
        ------
        ValueError
            If the text is not a vertex reference.
        """
        match = _VERTEX.match(text)
        if match is None:
            raise ValueError(f"invalid vertex reference: {text!r}")
        return cls(
            match["node"], Direction(match["direction"]), int(match["port"])
        )

    @classmethod
    def input(cls, node: str, port: int) -> Vertex:
        return cls(node, Direction.IN, port)

    @classmethod
    def output(cls, node: str, port: int) -> Vertex:
        return cls(node, Direction.OUT, port)


@dataclass(frozen=True)
class Node:
    """A typed node with fixed input and output arities."""

    id: str
    type: str
    in_arity: int
    out_arity: int

    def __post_init__(self) -> None:
        if not is_identifier(self.type):
            raise GraphStructureError(f"invalid type label {self.type!r}")
        if self.in_arity < 0 or self.out_arity < 0:
            raise GraphStructureError(f"node {self.id}: arities must be non-negative")

    def in_vertices(self) -> tuple[Vertex, ...]:
        return tuple(Vertex.input(self.id, k) for k in range(self.in_arity))

    def out_vertices(self) -> tuple[Vertex, ...]:
        return tuple(Vertex.output(self.id, k) for k in range(self.out_arity))

    def has_vertex(self, vertex: Vertex) -> bool:
        arity = self.in_arity if vertex.direction is Direction.IN else self.out_arity
        return vertex.node == self.id and 0 <= vertex.port < arity


@dataclass(frozen=True)
class Edge:
    """
    An edge from one Out vertex to an ordered, non-empty set of In vertices.

    ``colors`` holds the application ids the edge belongs to. In an
    application graph it is the singleton ``{app_id}``.
    """

    driver: Vertex
    loads: tuple[Vertex, ...]
    colors: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "loads", tuple(self.loads))
        object.__setattr__(self, "colors", frozenset(self.colors))
        if self.driver.direction is not Direction.OUT:
            raise GraphStructureError(f"edge driver {self.driver} is not an Out vertex")
        if not self.loads:
            raise GraphStructureError(f"edge from {self.driver} has no loads")
        for load in self.loads:
            if load.direction is not Direction.IN:
                raise GraphStructureError(f"edge load {load} is not an In vertex")
        if len(set(self.loads)) != len(self.loads):
            raise GraphStructureError(f"edge from {self.driver} repeats a load")

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return (self.driver, *self.loads)

    @property
    def nodes(self) -> tuple[str, ...]:
        """Endpoint node ids, driver first, without repetitions."""
        return tuple(dict.fromkeys(v.node for v in self.vertices))

    def recolored(self, colors: Iterable[int]) -> Edge:
        return replace(self, colors=frozenset(colors))

    def sort_key(self) -> tuple:
        return (self.driver, self.loads, tuple(sorted(self.colors)))

    def __str__(self) -> str:
        return f"{self.driver} -> {' '.join(str(v) for v in self.loads)}"


@dataclass(frozen=True)
class DataflowGraph:
    """
    A validated application graph.

    Parameters
    ----------
    name : str
        Application name (the ``app`` line of the source file).
    nodes : tuple of Node
        Nodes in declaration order. Declaration order drives occurrence
        labeling during merging.
    edges : tuple of Edge
        Edges; their colors are reset to ``{app_id}``.
    app_id : int, optional
        Application id, 1-based. Defaults to 1.

    Raises
    ------
    GraphStructureError
        On duplicate node ids, endpoints referencing unknown nodes or ports,
        an Out vertex driving two edges or an In vertex loaded twice.
    """

    name: str
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    app_id: int = 1

    def __post_init__(self) -> None:
        if self.app_id < 1:
            raise GraphStructureError(f"application id must be >= 1, got {self.app_id}")
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(
            self,
            "edges",
            tuple(e.recolored((self.app_id,)) for e in self.edges),
        )
        self._check_structure()

    def _check_structure(self) -> None:
        seen: dict[str, Node] = {}
        for node in self.nodes:
            if node.id in seen:
                raise GraphStructureError(f"duplicate node id {node.id!r}")
            seen[node.id] = node
        drivers: set[Vertex] = set()
        loaded: set[Vertex] = set()
        for edge in self.edges:
            for vertex in edge.vertices:
                node = seen.get(vertex.node)
                if node is None:
                    raise GraphStructureError(f"{vertex} references unknown node")
                if not node.has_vertex(vertex):
                    raise GraphStructureError(f"{vertex} is outside the node's arity")
            if edge.driver in drivers:
                raise GraphStructureError(f"{edge.driver} drives more than one edge")
            drivers.add(edge.driver)
            for load in edge.loads:
                if load in loaded:
                    raise GraphStructureError(f"{load} is loaded by more than one edge")
                loaded.add(load)

    @cached_property
    def node_map(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def edge_driving(self) -> dict[Vertex, Edge]:
        """Out vertex -> the edge it drives."""
        return {e.driver: e for e in self.edges}

    @cached_property
    def edge_loading(self) -> dict[Vertex, Edge]:
        """In vertex -> the edge that loads it."""
        return {load: e for e in self.edges for load in e.loads}

    def node(self, node_id: str) -> Node:
        try:
            return self.node_map[node_id]
        except KeyError:
            raise GraphStructureError(f"unknown node {node_id!r}") from None

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[Node]:
        return iter(self.nodes)

    def input_vertices(self) -> tuple[Vertex, ...]:
        """Unconnected In ports in declaration order: the system inputs."""
        return tuple(
            v for n in self.nodes for v in n.in_vertices() if v not in self.edge_loading
        )

    def output_vertices(self) -> tuple[Vertex, ...]:
        """Unconnected Out ports in declaration order: the system outputs."""
        return tuple(
            v for n in self.nodes for v in n.out_vertices() if v not in self.edge_driving
        )

    def with_app_id(self, app_id: int) -> DataflowGraph:
        """Return a copy tagged (and edge-colored) with another application id."""
        return DataflowGraph(self.name, self.nodes, self.edges, app_id)

    def to_networkx(self) -> nx.DiGraph:
        """Node-level directed graph; node attribute ``type`` holds the type label."""
        graph = nx.DiGraph(name=self.name)
        for node in self.nodes:
            graph.add_node(node.id, type=node.type)
        for edge in self.edges:
            for load in edge.loads:
                graph.add_edge(edge.driver.node, load.node)
        return graph


@dataclass(frozen=True)
class CycleReport:
    """Result of :func:`validate_acyclic`; truthy when the graph is acyclic."""

    cycle: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.cycle

    def __bool__(self) -> bool:
        return self.ok


def validate_acyclic(g: DataflowGraph) -> CycleReport:
    """
    Check that the node-level graph has no directed cycle.

    Parameters
    ----------
    g : DataflowGraph
        Structurally valid graph.

    Returns
    -------
    CycleReport
        ``ok`` when acyclic, otherwise one witness cycle as a node-id sequence.

    Examples
    --------
    >>> g = DataflowGraph(
    ...     "c",
    ...     (Node("A", "ID", 1, 1), Node("B", "ID", 1, 1)),
    ...     (Edge(Vertex.parse("A.out0"), (Vertex.parse("B.in0"),)),
    ...      Edge(Vertex.parse("B.out0"), (Vertex.parse("A.in0"),))),
    ... )
    >>> validate_acyclic(g).cycle
    ('A', 'B')
    """
    try:
        arcs = nx.find_cycle(g.to_networkx(), orientation="original")
    except nx.NetworkXNoCycle:
        return CycleReport()
    return CycleReport(tuple(u for u, _, *_ in arcs))


def eliminate_dead_nodes(g: DataflowGraph, outputs: Iterable[Vertex]) -> DataflowGraph:
    """
    Keep the nodes from which some declared output vertex is reachable.

    Edges lose loads on removed nodes and disappear when no load is left.
    Retained node ids and declaration order are unchanged.

    Parameters
    ----------
    g : DataflowGraph
        Graph to prune.
    outputs : iterable of Vertex
        Out vertices of ``g`` that must stay computable.

    Returns
    -------
    DataflowGraph
        The pruned graph. Empty if no outputs are declared.

    Raises
    ------
    GraphStructureError
        If an output is not an Out vertex of ``g``.
    """
    wanted = list(outputs)
    for vertex in wanted:
        node = g.node_map.get(vertex.node)
        if (
            node is None
            or vertex.direction is not Direction.OUT
            or not node.has_vertex(vertex)
        ):
            raise GraphStructureError(f"unknown output vertex {vertex}")
    graph = g.to_networkx()
    keep: set[str] = set()
    for vertex in wanted:
        keep.add(vertex.node)
        keep |= nx.ancestors(graph, vertex.node)
    edges = []
    for edge in g.edges:
        if edge.driver.node not in keep:
            continue
        loads = tuple(v for v in edge.loads if v.node in keep)
        if loads:
            edges.append(Edge(edge.driver, loads))
    nodes = tuple(n for n in g.nodes if n.id in keep)
    return DataflowGraph(g.name, nodes, tuple(edges), g.app_id)
