"""Application dataflow graphs: tokens, structure, text format and direct evaluation."""

from sdfnoc.graph.dataflow_graph import (
    CycleReport,
    DataflowGraph,
    Direction,
    Edge,
    Node,
    Vertex,
    eliminate_dead_nodes,
    is_identifier,
    validate_acyclic,
)
from sdfnoc.graph.evaluate import check_registry, evaluate, stream_length
from sdfnoc.graph.parser import format_app_graph, parse_app_graph, read_app_graph
from sdfnoc.graph.tokens import (
    NULL,
    Image,
    NullToken,
    Scalar,
    Stream,
    Token,
    as_stream,
    as_token,
    is_null,
)

__all__ = [
    "NULL",
    "CycleReport",
    "DataflowGraph",
    "Direction",
    "Edge",
    "Image",
    "Node",
    "NullToken",
    "Scalar",
    "Stream",
    "Token",
    "Vertex",
    "as_stream",
    "as_token",
    "check_registry",
    "eliminate_dead_nodes",
    "evaluate",
    "format_app_graph",
    "is_identifier",
    "is_null",
    "parse_app_graph",
    "read_app_graph",
    "stream_length",
    "validate_acyclic",
]
