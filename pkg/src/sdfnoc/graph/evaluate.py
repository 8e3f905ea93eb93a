"""
evaluate.py

Module for direct evaluation of an application graph: the reference result a
configured NoC must reproduce.

Every node fires once per stream index in a topological order. Unconnected In
ports take the supplied input streams; unconnected Out ports are returned.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence

import networkx as nx

from sdfnoc.exceptions import GraphCycleError, GraphStructureError
from sdfnoc.graph.dataflow_graph import DataflowGraph, Vertex, validate_acyclic
from sdfnoc.graph.tokens import Stream, Token, as_stream

logger = logging.getLogger(__name__)


def check_registry(g: DataflowGraph, registry) -> None:
    """
    Check every node type is registered with the node's declared arity.

    Raises
    ------
    UnknownOperatorError
        If a type label is missing from the registry.
    GraphStructureError
        If a node's arity differs from its operator's.
    """
    for node in g.nodes:
        spec = registry.get(node.type)
        if (spec.in_arity, spec.out_arity) != (node.in_arity, node.out_arity):
            raise GraphStructureError(
                f"node {node.id} declares in={node.in_arity} out={node.out_arity} "
                f"but {node.type} takes in={spec.in_arity} out={spec.out_arity}"
            )


def stream_length(
    inputs: Mapping[Vertex, Sequence[Token]],
    expected: Sequence[Vertex],
    length: int | None = None,
) -> int:
    """
    Check that ``inputs`` covers exactly ``expected`` with equal-length streams.

    Returns
    -------
    int
        The common stream length, or ``length`` when there are no inputs.

    Raises
    ------
    ValueError
        On missing or unexpected input vertices, unequal lengths, or a
        graph without inputs and no ``length``.
    """
    missing = [str(v) for v in expected if v not in inputs]
    if missing:
        raise ValueError(f"missing input streams for {missing}")
    extra = sorted(str(v) for v in inputs if v not in set(expected))
    if extra:
        raise ValueError(f"unexpected input streams for {extra}")
    lengths = {len(s) for s in inputs.values()}
    if len(lengths) > 1:
        raise ValueError(f"input streams have unequal lengths {sorted(lengths)}")
    if lengths:
        common = lengths.pop()
        if length is not None and length != common:
            raise ValueError(f"length={length} disagrees with input streams of {common}")
        return common
    if length is None:
        raise ValueError("graph has no inputs; pass length explicitly")
    return length


def _check_order(g: DataflowGraph, order: Sequence[str]) -> list[str]:
    order = list(order)
    if sorted(order) != sorted(n.id for n in g.nodes):
        raise ValueError("order must list every node exactly once")
    position = {node: i for i, node in enumerate(order)}
    for edge in g.edges:
        for load in edge.loads:
            if position[edge.driver.node] >= position[load.node]:
                raise ValueError(f"order is not topological at edge {edge}")
    return order


def evaluate(
    g: DataflowGraph,
    inputs: Mapping[Vertex, Sequence[Token]],
    registry,
    *,
    length: int | None = None,
    order: Sequence[str] | None = None,
) -> dict[Vertex, Stream]:
    """
    Evaluate an application graph on finite input streams.

    Parameters
    ----------
    g : DataflowGraph
        Acyclic application graph.
    inputs : mapping of Vertex to sequence of Token
        One stream per unconnected In port, all of the same length.
    registry : OperatorRegistry
        Computational law of every type label in ``g``.
    length : int, optional
        Stream length, required only when ``g`` has no unconnected In port.
    order : sequence of str, optional
        Topological node order to fire in. Defaults to the lexicographic
        topological order.

    Returns
    -------
    dict of Vertex to Stream
        One stream per unconnected Out port, in declaration order.

    Raises
    ------
    GraphCycleError
        If ``g`` has a cycle.
    UnknownOperatorError
        If a type label is not registered.
    OperatorDomainError
        If an operator rejects its tokens.
    ValueError
        On missing, unexpected or unequal input streams, or an invalid order.

    Examples
    --------
    >>> from sdfnoc.graph.parser import parse_app_graph
    >>> from sdfnoc.graph.tokens import as_stream
    >>> from sdfnoc.imaging.registry import default_registry
    >>> g = parse_app_graph("app a\\nnode s type=ADDER in=2 out=1\\n")
    >>> streams = {
    ...     Vertex.parse("s.in0"): as_stream([1, 2]),
    ...     Vertex.parse("s.in1"): as_stream([3, 4]),
    ... }
    >>> evaluate(g, streams, default_registry())[Vertex.parse("s.out0")]
    (Scalar(4), Scalar(6))
    """
    report = validate_acyclic(g)
    if not report.ok:
        raise GraphCycleError(report.cycle)
    check_registry(g, registry)
    count = stream_length(inputs, g.input_vertices(), length)
    if order is None:
        order = list(nx.lexicographical_topological_sort(g.to_networkx()))
    else:
        order = _check_order(g, order)

    values: dict[Vertex, list[Token]] = {}
    feeds = {v: as_stream(s) for v, s in inputs.items()}
    for node_id in order:
        node = g.node_map[node_id]
        ports = []
        for vertex in node.in_vertices():
            edge = g.edge_loading.get(vertex)
            ports.append(feeds[vertex] if edge is None else values[edge.driver])
        fired = [registry.fire(node.type, tuple(p[k] for p in ports)) for k in range(count)]
        for port, vertex in enumerate(node.out_vertices()):
            values[vertex] = [tokens[port] for tokens in fired]
    logger.debug("evaluated %s: %d nodes x %d tokens", g.name, len(order), count)
    return {v: tuple(values[v]) for v in g.output_vertices()}
