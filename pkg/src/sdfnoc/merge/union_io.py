"""
union_io.py

Module for the union graph text format.

A union document is self-contained: it lists the applications, the union
nodes and colored edges, the packs, and the node map sigma_N in application
declaration order, from which the application graphs are rebuilt::

    union
    app 1 day
    app 2 night
    node CANNY#1 in=1 out=1
    edge CANNY#1.out0 -> SINK#1.in0 colors={1,2}
    pack 0: CANNY#1 GAUSS3#1 GRAYWORLD#1
    map 1:source -> SOURCE#1

The reader re-merges the rebuilt application graphs and rejects documents
whose node lines, edge lines or individual map lines disagree with the result.
"""

from __future__ import annotations

import re
from pathlib import Path

from sdfnoc.exceptions import ParseError
from sdfnoc.graph.dataflow_graph import (
    DataflowGraph,
    Direction,
    Edge,
    Node,
    Vertex,
    is_identifier,
    validate_acyclic,
)
from sdfnoc.graph.parser import Word, tokenize
from sdfnoc.merge.packing import PackedGraph, divide
from sdfnoc.merge.union_graph import build_union, split_union_id

UNION_DIRECTIVES = ("union", "app", "node", "edge", "pack", "map")
_COLORS = re.compile(r"^colors=\{(\d+(?:,\d+)*)\}$")
_MAP_SOURCE = re.compile(r"^(\d+):([A-Za-z_][A-Za-z0-9_]*)$")


def _error(word: Word, reason: str) -> ParseError:
    return word.error(reason, ParseError)


def _union_vertex(word: Word, direction: Direction) -> Vertex:
    try:
        vertex = Vertex.parse(word.text)
        split_union_id(vertex.node)
    except ValueError:
        raise _error(word, f"invalid union vertex {word.text!r}") from None
    if vertex.direction is not direction:
        raise _error(word, f"expected an {direction.value} port, got {word.text!r}")
    return vertex


def _uint(word: Word, text: str | None = None) -> int:
    text = word.text if text is None else text
    if not text.isdigit():
        raise _error(word, f"expected a non-negative integer, got {text!r}")
    return int(text)


def format_union(packed: PackedGraph) -> str:
    """Write a packed union graph (LF line endings, trailing newline)."""
    return "\n".join(union_lines(packed)) + "\n"


def union_lines(packed: PackedGraph) -> list[str]:
    union = packed.union
    lines = ["union"]
    lines += [f"app {g.app_id} {g.name}" for g in union.apps]
    lines += [f"node {n.id} in={n.in_arity} out={n.out_arity}" for n in union.nodes]
    for edge in union.edges:
        colors = ",".join(str(c) for c in sorted(edge.colors))
        lines.append(f"edge {edge} colors={{{colors}}}")
    lines += [f"pack {p.mark}: {' '.join(p.nodes)}" for p in packed.packs]
    for graph in union.apps:
        lines += [
            f"map {graph.app_id}:{n.id} -> {union.sigma_n[(graph.app_id, n.id)]}"
            for n in graph.nodes
        ]
    return lines


def parse_union_lines(lines: list[list[Word]]) -> PackedGraph:
    """
    Build a packed union graph from tokenized union directives.

    Raises
    ------
    ParseError
        On syntax errors or an inconsistent document.
    """
    if not lines or lines[0][0].text != "union" or len(lines[0]) != 1:
        where = lines[0][0] if lines else Word("", 1, 1)
        raise _error(where, "expected 'union' header")
    apps: dict[int, str] = {}
    nodes: dict[str, Node] = {}
    edges: list[Edge] = []
    marks: dict[str, int] = {}
    maps: dict[int, list[tuple[str, str, Word]]] = {}
    for words in lines[1:]:
        head = words[0]
        if head.text == "app":
            if len(words) != 3 or not is_identifier(words[2].text):
                raise _error(head, "app line must be: app <id> <ident>")
            app_id = _uint(words[1])
            if app_id != len(apps) + 1:
                raise _error(words[1], f"expected application id {len(apps) + 1}")
            apps[app_id] = words[2].text
        elif head.text == "node":
            if len(words) != 4:
                raise _error(head, "node line must be: node <TYPE>#<m> in=<uint> out=<uint>")
            try:
                type_label, _ = split_union_id(words[1].text)
            except ValueError:
                raise _error(words[1], f"invalid union node id {words[1].text!r}") from None
            if words[1].text in nodes:
                raise _error(words[1], f"duplicate node {words[1].text}")
            arities = []
            for word, key in ((words[2], "in"), (words[3], "out")):
                if not word.text.startswith(f"{key}="):
                    raise _error(word, f"expected '{key}=<uint>'")
                arities.append(_uint(word, word.text[len(key) + 1 :]))
            nodes[words[1].text] = Node(words[1].text, type_label, *arities)
        elif head.text == "edge":
            if len(words) < 5 or words[2].text != "->":
                raise _error(head, "edge line must be: edge <v> -> <v> ... colors={i,...}")
            match = _COLORS.match(words[-1].text)
            if match is None:
                raise _error(words[-1], f"expected colors={{i,...}}, got {words[-1].text!r}")
            driver = _union_vertex(words[1], Direction.OUT)
            loads = tuple(_union_vertex(w, Direction.IN) for w in words[3:-1])
            colors = frozenset(int(c) for c in match.group(1).split(","))
            edges.append(Edge(driver, loads, colors))
        elif head.text == "pack":
            if len(words) < 3 or not words[1].text.endswith(":"):
                raise _error(head, "pack line must be: pack <q>: <node> ...")
            mark = _uint(words[1], words[1].text[:-1])
            for word in words[2:]:
                if word.text in marks:
                    raise _error(word, f"{word.text} is in two packs")
                marks[word.text] = mark
        elif head.text == "map":
            match = _MAP_SOURCE.match(words[1].text) if len(words) == 4 else None
            if match is None or words[2].text != "->":
                raise _error(head, "map line must be: map <app>:<node> -> <TYPE>#<m>")
            maps.setdefault(int(match.group(1)), []).append(
                (match.group(2), words[3].text, words[3])
            )
        else:
            raise _error(head, f"unknown directive {head.text!r}")

    anchor = lines[0][0]
    graphs = []
    for app_id, name in apps.items():
        entries = maps.get(app_id, [])
        inverse: dict[str, str] = {}
        app_nodes = []
        for node_id, union_id, word in entries:
            union_node = nodes.get(union_id)
            if union_node is None:
                raise _error(word, f"map target {union_id} is not a union node")
            if union_id in inverse:
                raise _error(word, f"{union_id} is mapped twice in application {app_id}")
            inverse[union_id] = node_id
            app_nodes.append(
                Node(node_id, union_node.type, union_node.in_arity, union_node.out_arity)
            )

        def back(vertex: Vertex) -> Vertex:
            if vertex.node not in inverse:
                raise _error(anchor, f"{vertex} has color {app_id} but is not mapped")
            return Vertex(inverse[vertex.node], vertex.direction, vertex.port)

        app_edges = sorted(
            (
                Edge(back(e.driver), tuple(back(v) for v in e.loads))
                for e in edges
                if app_id in e.colors
            ),
            key=Edge.sort_key,
        )
        try:
            graph = DataflowGraph(name, tuple(app_nodes), tuple(app_edges), app_id)
        except ValueError as err:
            raise _error(anchor, f"application {name}: {err}") from None
        if not validate_acyclic(graph).ok:
            raise _error(anchor, f"application {name} is cyclic")
        graphs.append(graph)
    if set(maps) - set(apps):
        raise _error(anchor, f"map lines for undeclared applications {sorted(set(maps) - set(apps))}")
    if not graphs:
        raise _error(anchor, "union declares no application")

    union = build_union(graphs)
    if tuple(nodes.values()) != union.nodes:
        raise _error(anchor, "node lines disagree with the application maps")
    if tuple(edges) != union.edges:
        raise _error(anchor, "edge lines disagree with the application maps")
    for app_id, entries in maps.items():
        for node_id, union_id, word in entries:
            merged = union.sigma_n[(app_id, node_id)]
            if merged != union_id:
                raise _error(
                    word,
                    f"map {app_id}:{node_id} -> {union_id} disagrees with the merge ({merged})",
                )
    try:
        return divide(union, marks)
    except ValueError as err:
        raise _error(anchor, str(err)) from None


def parse_union(text: str) -> PackedGraph:
    """Parse a union document into a :class:`PackedGraph`."""
    return parse_union_lines(tokenize(text))


def read_union(path: str | Path) -> PackedGraph:
    """Read a union file, tagging parse errors with the path."""
    path = Path(path)
    try:
        return parse_union(path.read_text(encoding="utf-8"))
    except ParseError as err:
        err.path = str(path)
        raise
