"""
union_graph.py

Module for merging application graphs into one union graph.

Implements:

- LabeledNode / label_nodes: tag every node with (type, occurrence, app).
- build_union_nodes: per type, as many shared copies as the busiest
  application needs, plus the node map sigma_N.
- build_union_edges: colored union edges plus the edge map sigma_E.
- UnionGraph: the merged graph with both maps and the recolored
  application graphs it was built from.

Union node ids have the form ``<TYPE>#<m>``. The m-th occurrence of a type in
an application (declaration order) maps to copy m.

Examples
--------
>>> from sdfnoc.graph.parser import parse_app_graph
>>> adders = "node x type=ADDER in=2 out=1\\nnode y type=ADDER in=2 out=1\\n"
>>> g1 = parse_app_graph("app a\\n" + adders)
>>> g2 = parse_app_graph("app b\\nnode z type=ADDER in=2 out=1\\n", app_id=2)
>>> union = build_union([g1, g2])
>>> [n.id for n in union.nodes]
['ADDER#1', 'ADDER#2']
>>> union.sigma_n[(2, "z")]
'ADDER#1'
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from sdfnoc.exceptions import MergeConflictError
from sdfnoc.graph.dataflow_graph import DataflowGraph, Edge, Node, Vertex


@dataclass(frozen=True, order=True)
class LabeledNode:
    """Node label: the ``occurrence``-th node of ``type`` in application ``app``."""

    type: str
    occurrence: int
    app: int

    def __str__(self) -> str:
        return f"{self.type}_{self.occurrence}^{self.app}"

    @property
    def union_id(self) -> str:
        return union_node_id(self.type, self.occurrence)


def union_node_id(type_label: str, copy: int) -> str:
    return f"{type_label}#{copy}"


def split_union_id(node_id: str) -> tuple[str, int]:
    """Split ``<TYPE>#<m>`` into its type label and copy index."""
    type_label, sep, copy = node_id.rpartition("#")
    if not sep or not copy.isdigit():
        raise ValueError(f"invalid union node id {node_id!r}")
    return type_label, int(copy)


def check_app_ids(graphs: Sequence[DataflowGraph]) -> None:
    """Require application ids 1..N in list order."""
    ids = [g.app_id for g in graphs]
    if ids != list(range(1, len(graphs) + 1)):
        raise ValueError(f"application ids must be 1..{len(graphs)} in order, got {ids}")


def label_nodes(graphs: Sequence[DataflowGraph]) -> list[dict[str, LabeledNode]]:
    """
    Label every node with its type, occurrence index and application.

    Occurrences of a type are numbered 1..count in node declaration order.

    Parameters
    ----------
    graphs : sequence of DataflowGraph
        Application graphs with ids 1..N in order.

    Returns
    -------
    list of dict
        Per graph, node id -> LabeledNode.

    Examples
    --------
    >>> from sdfnoc.graph.parser import parse_app_graph
    >>> text = "app b\\n" + "".join(
    ...     f"node {n} type=ADDER in=2 out=1\\n" for n in "xyz"
    ... )
    >>> g1 = parse_app_graph("app a\\n")
    >>> labels = label_nodes([g1, parse_app_graph(text, app_id=2)])
    >>> str(labels[1]["z"])
    'ADDER_3^2'
    """
    check_app_ids(graphs)
    result = []
    for graph in graphs:
        counts: dict[str, int] = defaultdict(int)
        labels = {}
        for node in graph.nodes:
            counts[node.type] += 1
            labels[node.id] = LabeledNode(node.type, counts[node.type], graph.app_id)
        result.append(labels)
    return result


def build_union_nodes(
    graphs: Sequence[DataflowGraph], labels: Sequence[Mapping[str, LabeledNode]]
) -> tuple[tuple[Node, ...], dict[tuple[int, str], str]]:
    """
    Create the shared node copies and the node map sigma_N.

    Returns
    -------
    nodes : tuple of Node
        ``max`` over applications of the per-type count copies of each type,
        sorted by type then copy index.
    sigma_n : dict
        ``(app, node id) -> union node id``.

    Raises
    ------
    MergeConflictError
        If one type label is declared with different arities.
    """
    arity: dict[str, tuple[int, int]] = {}
    copies: dict[str, int] = defaultdict(int)
    sigma_n: dict[tuple[int, str], str] = {}
    for graph, graph_labels in zip(graphs, labels):
        for node in graph.nodes:
            shape = (node.in_arity, node.out_arity)
            if arity.setdefault(node.type, shape) != shape:
                raise MergeConflictError(
                    f"type {node.type} has arity in={arity[node.type][0]} "
                    f"out={arity[node.type][1]} elsewhere but node {node.id} of "
                    f"{graph.name} declares in={shape[0]} out={shape[1]}"
                )
            label = graph_labels[node.id]
            copies[node.type] = max(copies[node.type], label.occurrence)
            sigma_n[(graph.app_id, node.id)] = label.union_id
    nodes = tuple(
        Node(union_node_id(t, m), t, *arity[t])
        for t in sorted(copies)
        for m in range(1, copies[t] + 1)
    )
    return nodes, sigma_n


def _map_vertex(sigma_n: Mapping[tuple[int, str], str], app: int, v: Vertex) -> Vertex:
    return Vertex(sigma_n[(app, v.node)], v.direction, v.port)


def build_union_edges(
    graphs: Sequence[DataflowGraph], sigma_n: Mapping[tuple[int, str], str]
) -> tuple[tuple[Edge, ...], dict[tuple[int, Edge], int]]:
    """
    Create the colored union edges and the edge map sigma_E.

    Application edges with the same mapped driver and the same mapped load
    set become one union edge whose colors accumulate.

    Returns
    -------
    edges : tuple of Edge
        Union edges sorted by driver then loads; loads are sorted.
    sigma_e : dict
        ``(app, application edge) -> index into edges``.

    Raises
    ------
    MergeConflictError
        If two edges of one application map to the same union driver with
        different load sets.
    """
    colors: dict[tuple[Vertex, tuple[Vertex, ...]], set[int]] = defaultdict(set)
    signature: dict[tuple[int, Edge], tuple[Vertex, tuple[Vertex, ...]]] = {}
    claimed: dict[tuple[int, Vertex], tuple[Vertex, ...]] = {}
    for graph in graphs:
        app = graph.app_id
        for edge in graph.edges:
            driver = _map_vertex(sigma_n, app, edge.driver)
            loads = tuple(sorted(_map_vertex(sigma_n, app, v) for v in edge.loads))
            previous = claimed.setdefault((app, driver), loads)
            if previous != loads:
                raise MergeConflictError(
                    f"application {graph.name} drives {driver} with two load sets"
                )
            colors[(driver, loads)].add(app)
            signature[(app, edge)] = (driver, loads)
    keys = sorted(colors)
    index = {key: i for i, key in enumerate(keys)}
    edges = tuple(
        Edge(driver, loads, frozenset(colors[(driver, loads)])) for driver, loads in keys
    )
    sigma_e = {key: index[sig] for key, sig in signature.items()}
    return edges, sigma_e


@dataclass(frozen=True)
class UnionGraph:
    """
    Merged graph of several applications.

    Attributes
    ----------
    nodes : tuple of Node
        Shared node copies, ids ``<TYPE>#<m>``.
    edges : tuple of Edge
        Union edges; ``colors`` is the set of applications mapping onto each.
    sigma_n : mapping
        ``(app, node id) -> union node id``.
    sigma_e : mapping
        ``(app, application edge) -> union edge index``.
    apps : tuple of DataflowGraph
        The application graphs, app ids 1..N.
    """

    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    sigma_n: Mapping[tuple[int, str], str]
    sigma_e: Mapping[tuple[int, Edge], int]
    apps: tuple[DataflowGraph, ...]

    @cached_property
    def node_map(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    def node(self, node_id: str) -> Node:
        return self.node_map[node_id]

    def __iter__(self) -> Iterator[Node]:
        return iter(self.nodes)

    @property
    def app_ids(self) -> tuple[int, ...]:
        return tuple(g.app_id for g in self.apps)

    def app(self, app: int) -> DataflowGraph:
        if not 1 <= app <= len(self.apps):
            raise ValueError(
                f"unknown application id {app}; valid ids: {list(self.app_ids)}"
            )
        return self.apps[app - 1]

    def resolve_app(self, key: int | str) -> int:
        """
        Resolve an application id or name to its id.

        Raises
        ------
        ValueError
            Naming the valid application ids and names.
        """
        for graph in self.apps:
            if key == graph.app_id or str(key) in (graph.name, str(graph.app_id)):
                return graph.app_id
        valid = ", ".join(f"{g.app_id} ({g.name})" for g in self.apps)
        raise ValueError(f"unknown application {key!r}; valid applications: {valid}")

    def map_vertex(self, app: int, vertex: Vertex) -> Vertex:
        """Image of an application vertex in the union graph."""
        return _map_vertex(self.sigma_n, app, vertex)

    def active_nodes(self, app: int) -> frozenset[str]:
        """Union nodes used by application ``app``."""
        return frozenset(self.sigma_n[(app, n.id)] for n in self.app(app).nodes)

    def edges_of(self, app: int) -> tuple[int, ...]:
        """Indices of the union edges carrying color ``app``."""
        return tuple(i for i, e in enumerate(self.edges) if app in e.colors)

    def boundary_inputs(self, app: int) -> tuple[Vertex, ...]:
        """System inputs of ``app`` in union coordinates."""
        return tuple(self.map_vertex(app, v) for v in self.app(app).input_vertices())

    def boundary_outputs(self, app: int) -> tuple[Vertex, ...]:
        """System outputs of ``app`` in union coordinates."""
        return tuple(self.map_vertex(app, v) for v in self.app(app).output_vertices())

    def boundary_vertices(self) -> frozenset[Vertex]:
        """System inputs and outputs of every application."""
        return frozenset(
            v
            for app in self.app_ids
            for v in (*self.boundary_inputs(app), *self.boundary_outputs(app))
        )

    def color_combinations(self) -> list[frozenset[int]]:
        """Distinct edge color sets, lexicographic by sorted colors."""
        return sorted({e.colors for e in self.edges}, key=lambda c: tuple(sorted(c)))

    def to_networkx(self) -> nx.MultiDiGraph:
        """Node-level multigraph with one arc per (edge, load), keyed by edge index."""
        graph = nx.MultiDiGraph()
        for node in self.nodes:
            graph.add_node(node.id, type=node.type)
        for i, edge in enumerate(self.edges):
            for load in edge.loads:
                graph.add_edge(
                    edge.driver.node, load.node, key=i, colors=tuple(sorted(edge.colors))
                )
        return graph


def build_union(graphs: Sequence[DataflowGraph]) -> UnionGraph:
    """Label, share nodes and color edges of ``graphs`` (app ids 1..N)."""
    labels = label_nodes(graphs)
    nodes, sigma_n = build_union_nodes(graphs, labels)
    edges, sigma_e = build_union_edges(graphs, sigma_n)
    return UnionGraph(nodes, edges, sigma_n, sigma_e, tuple(graphs))
