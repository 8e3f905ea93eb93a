"""Merging of application graphs: union graph, packing, division, area and file formats."""

from sdfnoc.merge.area import AreaTable, area, parse_area_table, read_area_table
from sdfnoc.merge.dot import graph_to_dot, union_to_dot
from sdfnoc.merge.merger import merge
from sdfnoc.merge.packing import Pack, PackedGraph, combination_order, divide, pack
from sdfnoc.merge.union_graph import (
    LabeledNode,
    UnionGraph,
    build_union,
    build_union_edges,
    build_union_nodes,
    label_nodes,
    split_union_id,
    union_node_id,
)
from sdfnoc.merge.union_io import format_union, parse_union, read_union

__all__ = [
    "AreaTable",
    "LabeledNode",
    "Pack",
    "PackedGraph",
    "UnionGraph",
    "area",
    "build_union",
    "build_union_edges",
    "build_union_nodes",
    "combination_order",
    "divide",
    "format_union",
    "graph_to_dot",
    "label_nodes",
    "merge",
    "pack",
    "parse_area_table",
    "parse_union",
    "read_area_table",
    "read_union",
    "split_union_id",
    "union_node_id",
    "union_to_dot",
]
