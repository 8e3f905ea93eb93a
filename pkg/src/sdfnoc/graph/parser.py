"""
parser.py

Module for reading and writing the application graph text format.

The format is UTF-8 and line oriented; a word starting with ``#`` opens a
comment that runs to the end of the line, and tokens are separated by
whitespace::

    app <ident>
    node <ident> type=<IDENT> in=<uint> out=<uint>
    edge <ident>.out<k> -> <ident>.in<j> [<ident>.in<j> ...]

The first directive must be ``app``. Ports are 0-based and their order is
significant. Unknown directives are errors. Every error reports the 1-based
line and column of the offending token.

Examples
--------
>>> g = parse_app_graph(
...     "app a\\nnode x type=CONST in=0 out=1\\nnode y type=ID in=1 out=1\\n"
...     "edge x.out0 -> y.in0\\n"
... )
>>> len(g.nodes), len(g.edges)
(2, 1)
>>> print(format_app_graph(g), end="")
app a
node x type=CONST in=0 out=1
node y type=ID in=1 out=1
edge x.out0 -> y.in0
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from sdfnoc.exceptions import GraphCycleError, GraphParseError, ParseError
from sdfnoc.graph.dataflow_graph import (
    DataflowGraph,
    Direction,
    Edge,
    Node,
    Vertex,
    is_identifier,
    validate_acyclic,
)

_WORD = re.compile(r"\S+")
_COMMENT = re.compile(r"(?:^|(?<=\s))#.*")
_UINT = re.compile(r"\d+")
_PORT_REF = re.compile(r"^(?P<node>[^.]+)\.(?P<direction>in|out)(?P<port>\d+)$")


@dataclass(frozen=True)
class Word:
    """A whitespace-separated token with its 1-based position."""

    text: str
    line: int
    column: int

    def error(
        self, reason: str, kind: type[ParseError] = GraphParseError
    ) -> ParseError:
        return kind(reason, self.line, self.column)


def tokenize(text: str) -> list[list[Word]]:
    """
    Split a document into non-empty lines of positioned words.

    Comments (``#`` at the start of a word, to end of line) and blank lines
    are dropped.
    """
    lines: list[list[Word]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = _COMMENT.sub("", raw)
        words = [Word(m.group(), number, m.start() + 1) for m in _WORD.finditer(content)]
        if words:
            lines.append(words)
    return lines


def _key_value(word: Word, key: str) -> str:
    prefix = f"{key}="
    if not word.text.startswith(prefix):
        raise word.error(f"expected '{prefix}<value>', got {word.text!r}")
    return word.text[len(prefix) :]


def _uint(word: Word, key: str) -> int:
    value = _key_value(word, key)
    if _UINT.fullmatch(value) is None:
        raise word.error(f"'{key}' must be a non-negative integer, got {value!r}")
    return int(value)


def _port_ref(word: Word, direction: Direction) -> Vertex:
    match = _PORT_REF.match(word.text)
    if match is None or not is_identifier(match["node"]):
        raise word.error(
            f"expected <ident>.{direction.value}<k>, got {word.text!r}"
        )
    if match["direction"] != direction.value:
        raise word.error(f"expected an {direction.value} port, got {word.text!r}")
    return Vertex(match["node"], direction, int(match["port"]))


def _parse_node(words: list[Word]) -> Node:
    if len(words) != 5:
        raise words[0].error(
            "node line must be: node <ident> type=<IDENT> in=<uint> out=<uint>"
        )
    name = words[1]
    if not is_identifier(name.text):
        raise name.error(f"invalid node identifier {name.text!r}")
    type_label = _key_value(words[2], "type")
    if not is_identifier(type_label):
        raise words[2].error(f"invalid type label {type_label!r}")
    return Node(name.text, type_label, _uint(words[3], "in"), _uint(words[4], "out"))


def _parse_edge(words: list[Word]) -> tuple[Vertex, list[tuple[Vertex, Word]]]:
    if len(words) < 4 or words[2].text != "->":
        raise words[0].error(
            "edge line must be: edge <ident>.out<k> -> <ident>.in<j> ..."
        )
    driver = _port_ref(words[1], Direction.OUT)
    loads = [(_port_ref(w, Direction.IN), w) for w in words[3:]]
    return driver, loads


def parse_app_graph(text: str, app_id: int = 1) -> DataflowGraph:
    """
    Parse an application graph document.

    Parameters
    ----------
    text : str
        Document in the application graph format.
    app_id : int, optional
        Application id assigned to the graph. Defaults to 1.

    Returns
    -------
    DataflowGraph
        Validated, acyclic graph.

    Raises
    ------
    GraphParseError
        On syntax errors, duplicate node ids, out-of-range ports, a duplicate
        driver on an Out vertex or a duplicate load on an In vertex.
    GraphCycleError
        If the graph has a directed cycle.
    """
    lines = tokenize(text)
    if not lines:
        raise GraphParseError("empty document, expected 'app <ident>'", 1, 1)
    header = lines[0]
    if header[0].text != "app":
        raise header[0].error(f"expected 'app <ident>' first, got {header[0].text!r}")
    if len(header) != 2 or not is_identifier(header[1].text):
        raise header[0].error("app line must be: app <ident>")
    name = header[1].text

    nodes: dict[str, Node] = {}
    edge_lines: list[tuple[Word, Vertex, list[tuple[Vertex, Word]]]] = []
    for words in lines[1:]:
        directive = words[0]
        if directive.text == "node":
            node = _parse_node(words)
            if node.id in nodes:
                raise words[1].error(f"duplicate node id {node.id!r}")
            nodes[node.id] = node
        elif directive.text == "edge":
            driver, loads = _parse_edge(words)
            edge_lines.append((words[1], driver, loads))
        elif directive.text == "app":
            raise directive.error("duplicate 'app' line")
        else:
            raise directive.error(f"unknown directive {directive.text!r}")

    def check_vertex(vertex: Vertex, word: Word) -> None:
        node = nodes.get(vertex.node)
        if node is None:
            raise word.error(f"unknown node {vertex.node!r}")
        if not node.has_vertex(vertex):
            raise word.error(f"port index out of range: {vertex}")

    edges: list[Edge] = []
    drivers: set[Vertex] = set()
    loaded: set[Vertex] = set()
    for driver_word, driver, loads in edge_lines:
        check_vertex(driver, driver_word)
        if driver in drivers:
            raise driver_word.error(f"duplicate driver on {driver}")
        drivers.add(driver)
        for load, word in loads:
            check_vertex(load, word)
            if load in loaded:
                raise word.error(f"duplicate load on {load}")
            loaded.add(load)
        edges.append(Edge(driver, tuple(v for v, _ in loads)))

    graph = DataflowGraph(name, tuple(nodes.values()), tuple(edges), app_id)
    report = validate_acyclic(graph)
    if not report.ok:
        raise GraphCycleError(report.cycle)
    return graph


def read_app_graph(path: str | Path, app_id: int = 1) -> DataflowGraph:
    """Read an application graph file, tagging parse errors with the path."""
    path = Path(path)
    try:
        return parse_app_graph(path.read_text(encoding="utf-8"), app_id)
    except GraphParseError as err:
        err.path = str(path)
        raise


def format_app_graph(g: DataflowGraph) -> str:
    """Write a graph in the application graph format (LF line endings)."""
    lines = [f"app {g.name}"]
    lines += [
        f"node {n.id} type={n.type} in={n.in_arity} out={n.out_arity}" for n in g.nodes
    ]
    lines += [f"edge {e}" for e in g.edges]
    return "\n".join(lines) + "\n"
