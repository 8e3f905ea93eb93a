"""
dot.py

Module for Graphviz DOT export of application and union graphs.

Application graphs draw one arc per (edge, load) labeled with the port pair.
Union graphs draw each pack as a cluster and label arcs with their color set.
Only the DOT source is produced; rendering needs the Graphviz binaries.
"""

from __future__ import annotations

from graphviz import Digraph

from sdfnoc.graph.dataflow_graph import DataflowGraph
from sdfnoc.merge.packing import PackedGraph


def _port_label(edge, load) -> str:
    return f"out{edge.driver.port}->in{load.port}"


def graph_to_dot(g: DataflowGraph) -> str:
    """DOT source of an application graph."""
    dot = Digraph(name=g.name)
    dot.attr(rankdir="LR")
    for node in g.nodes:
        dot.node(node.id, f"{node.id}\\n{node.type}", shape="box")
    for edge in g.edges:
        for load in edge.loads:
            dot.edge(edge.driver.node, load.node, label=_port_label(edge, load))
    return dot.source


def union_to_dot(packed: PackedGraph) -> str:
    """DOT source of a packed union graph: packs are clusters, arcs show colors."""
    dot = Digraph(name="union")
    dot.attr(rankdir="LR")
    for pack in packed.packs:
        with dot.subgraph(name=f"cluster_{pack.mark}") as cluster:
            cluster.attr(label=pack.name, style="rounded")
            for node_id in pack.nodes:
                cluster.node(node_id, node_id, shape="box")
    internal = set(packed.internal_edges)
    for i, edge in enumerate(packed.union.edges):
        colors = ",".join(str(c) for c in sorted(edge.colors))
        for load in edge.loads:
            dot.edge(
                edge.driver.node,
                load.node,
                label=f"e{i} {{{colors}}}",
                style="solid" if i in internal else "dashed",
            )
    return dot.source
