"""
result.py

Module for the complete map-and-route step and its self-contained file format.

Implements:

- PnrResult: placement, routes and per-application configurations.
- place_and_route: place, route, derive every configuration, check.
- format_pnr / parse_pnr / read_pnr: the PnR file::

      pnr
      mesh 2x5
      seed 0
      union
      ...
      place q0.CANNY#1.out0 -> (0,2)
      route e0: X(0,2)L>E I(0,2)E=(0,3)W X(0,3)W>L
"""

from __future__ import annotations

import logging
import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd
from graphviz import Digraph

from sdfnoc.exceptions import InvalidConfigurationError, ParseError
from sdfnoc.graph.dataflow_graph import Vertex
from sdfnoc.graph.parser import Word, tokenize
from sdfnoc.merge.packing import PackedGraph
from sdfnoc.merge.union_io import UNION_DIRECTIVES, parse_union_lines, union_lines
from sdfnoc.noc.config import CrossbarConfig
from sdfnoc.noc.mesh import InterLink, Link, MeshNoC, format_coord, parse_link, parse_mesh
from sdfnoc.pnr.check import CheckViolation, check
from sdfnoc.pnr.configs import derive_configs
from sdfnoc.pnr.placement import AnnealingSchedule, Placement, place, placement_cost
from sdfnoc.pnr.routing import route
from sdfnoc.visualization.mixins import NocPlotMixin

logger = logging.getLogger(__name__)

_COORD = re.compile(r"^\((\d+),(\d+)\)$")
_EDGE_ID = re.compile(r"^e(\d+):$")


@dataclass(frozen=True)
class PnrResult(NocPlotMixin):
    """
    A placed and routed packed union graph.

    Attributes
    ----------
    noc : MeshNoC
        Target mesh.
    packed : PackedGraph
        Packed union graph.
    placement : Placement
        sigma_M.
    routes : mapping of int to frozenset of Link
        sigma_R over the external edges.
    configs : mapping of int to CrossbarConfig
        Configuration of every application.
    seed : int
        Placement seed.
    """

    noc: MeshNoC
    packed: PackedGraph
    placement: Placement
    routes: Mapping[int, frozenset[Link]]
    configs: Mapping[int, CrossbarConfig] = field(default_factory=dict)
    seed: int = 0

    def config(self, app: int | str) -> CrossbarConfig:
        """Configuration of an application given by id or name."""
        return self.configs[self.packed.union.resolve_app(app)]

    def check(self) -> list[CheckViolation]:
        return check(self.packed, self.noc, self.placement, self.routes)

    def wirelength(self) -> int:
        """Inter-router links used, summed over routes."""
        return sum(
            1 for links in self.routes.values() for link in links if isinstance(link, InterLink)
        )

    def cost(self) -> float:
        return placement_cost(self.packed, self.placement)

    def to_dataframe(self) -> pd.DataFrame:
        """
        Per-application summary.

        Returns
        -------
        pd.DataFrame
            One row per application with its routed edges, inter-router links
            and crossbar connections switched on.
        """
        rows = []
        union = self.packed.union
        for app in union.app_ids:
            edges = [i for i in self.routes if app in self.packed.edge(i).colors]
            links = {link for i in edges for link in self.routes[i]}
            rows.append(
                {
                    "app": app,
                    "name": union.app(app).name,
                    "routed_edges": len(edges),
                    "inter_links": sum(isinstance(link, InterLink) for link in links),
                    "connections": len(self.configs.get(app, CrossbarConfig())),
                }
            )
        return pd.DataFrame(rows).set_index("app")

    def to_dot(self) -> str:
        """DOT source: routers as nodes, placed ports as labels, routed inter links as arcs."""
        dot = Digraph(name="pnr")
        dot.attr(layout="neato")
        for router in self.noc.routers:
            vertex = self.placement.vertex_at(router)
            label = format_coord(router) if vertex is None else f"{format_coord(router)}\\n{vertex}"
            dot.node(
                format_coord(router), label, shape="box", pos=f"{router[1] * 2},{-router[0] * 2}!"
            )
        for idx, links in self.routes.items():
            colors = ",".join(str(c) for c in sorted(self.packed.edge(idx).colors))
            for link in self.noc.sort_links(links):
                if isinstance(link, InterLink):
                    dot.edge(
                        format_coord(link.a),
                        format_coord(link.b),
                        label=f"e{idx} {{{colors}}}",
                        dir="none",
                    )
        return dot.source


def place_and_route(
    packed: PackedGraph,
    noc: MeshNoC,
    seed: int = 0,
    *,
    max_rip_up: int = 50,
    schedule: AnnealingSchedule | None = None,
) -> PnrResult:
    """
    Place, route and configure a packed union graph.

    Parameters
    ----------
    packed : PackedGraph
        Packed union graph.
    noc : MeshNoC
        Target mesh.
    seed : int, optional
        Placement seed. Defaults to 0.
    max_rip_up : int, optional
        Routing iteration cap. Defaults to 50.
    schedule : AnnealingSchedule, optional
        Placement schedule.

    Returns
    -------
    PnrResult
        A result with no :func:`~sdfnoc.pnr.check.check` violation.

    Raises
    ------
    PlacementCapacityError
        If the pack ports do not fit the mesh.
    UnroutableError
        If routing does not converge.
    InvalidConfigurationError
        If the result fails verification.
    """
    placement = place(packed, noc, seed, schedule)
    routes = route(packed, noc, placement, max_rip_up)
    return _assemble(noc, packed, placement, routes, seed)


def _assemble(
    noc: MeshNoC,
    packed: PackedGraph,
    placement: Placement,
    routes: Mapping[int, frozenset[Link]],
    seed: int,
) -> PnrResult:
    violations = check(packed, noc, placement, routes)
    if violations:
        raise InvalidConfigurationError("place and route result failed verification", violations)
    configs = {
        app: derive_configs(routes, packed, placement, app, noc) for app in packed.union.app_ids
    }
    result = PnrResult(noc, packed, placement, dict(routes), configs, seed)
    logger.info(
        "placed %d vertices and routed %d nets on %s; wirelength %d",
        len(placement),
        len(routes),
        noc,
        result.wirelength(),
    )
    return result


def format_pnr(result: PnrResult) -> str:
    """Write a PnR document (LF line endings, trailing newline)."""
    lines = ["pnr", f"mesh {result.noc}", f"seed {result.seed}"]
    lines += union_lines(result.packed)
    for vertex, router in result.placement.items():
        pack = result.packed.pack_of(vertex.node)
        lines.append(f"place {pack.name}.{vertex} -> {format_coord(router)}")
    for idx in sorted(result.routes):
        links = " ".join(str(link) for link in result.noc.sort_links(result.routes[idx]))
        lines.append(f"route e{idx}: {links}")
    return "\n".join(lines) + "\n"


def _header(lines: list[list[Word]], k: int, key: str) -> Word:
    if len(lines) <= k or lines[k][0].text != key or len(lines[k]) != 2:
        where = lines[k][0] if len(lines) > k else Word("", 1, 1)
        raise where.error(f"expected '{key} <value>'", ParseError)
    return lines[k][1]


def parse_pnr(text: str) -> PnrResult:
    """
    Parse a PnR document and re-derive every application's configuration.

    Raises
    ------
    ParseError
        On syntax errors, placements or routes naming unknown vertices or
        edges, or a result that fails verification.
    """
    lines = tokenize(text)
    if not lines or [w.text for w in lines[0]] != ["pnr"]:
        where = lines[0][0] if lines else Word("", 1, 1)
        raise where.error("expected 'pnr' header", ParseError)
    mesh_word = _header(lines, 1, "mesh")
    try:
        noc = MeshNoC(*parse_mesh(mesh_word.text))
    except ValueError as err:
        raise mesh_word.error(str(err), ParseError) from None
    seed_word = _header(lines, 2, "seed")
    try:
        seed = int(seed_word.text)
    except ValueError:
        raise seed_word.error(f"invalid seed {seed_word.text!r}", ParseError) from None

    body = lines[3:]
    union_part = [words for words in body if words[0].text in UNION_DIRECTIVES]
    rest = [words for words in body if words[0].text not in UNION_DIRECTIVES]
    packed = parse_union_lines(union_part)

    sites: dict[Vertex, tuple[int, int]] = {}
    routes: dict[int, frozenset[Link]] = {}
    for words in rest:
        head = words[0]
        if head.text == "place":
            if len(words) != 4 or words[2].text != "->":
                raise head.error("place line must be: place <pack>.<vertex> -> (<r>,<c>)", ParseError)
            pack_name, _, vertex_text = words[1].text.partition(".")
            try:
                vertex = Vertex.parse(vertex_text)
                pack = packed.pack_of(vertex.node)
            except (ValueError, KeyError):
                raise words[1].error(f"unknown vertex {words[1].text!r}", ParseError) from None
            if pack.name != pack_name:
                raise words[1].error(f"{vertex} belongs to pack {pack.name}", ParseError)
            if vertex in sites:
                raise words[1].error(f"{vertex} placed twice", ParseError)
            match = _COORD.match(words[3].text)
            if match is None:
                raise words[3].error(f"invalid router {words[3].text!r}", ParseError)
            sites[vertex] = (int(match.group(1)), int(match.group(2)))
        elif head.text == "route":
            match = _EDGE_ID.match(words[1].text) if len(words) >= 2 else None
            if match is None:
                raise head.error("route line must be: route e<k>: <link> ...", ParseError)
            idx = int(match.group(1))
            if idx >= len(packed.union.edges):
                raise words[1].error(f"unknown edge e{idx}", ParseError)
            if idx in routes:
                raise words[1].error(f"edge e{idx} routed twice", ParseError)
            links: list[Link] = []
            for word in words[2:]:
                try:
                    links.append(parse_link(word.text))
                except ValueError as err:
                    raise word.error(str(err), ParseError) from None
            routes[idx] = frozenset(links)
        else:
            raise head.error(f"unknown directive {head.text!r}", ParseError)
    try:
        return _assemble(noc, packed, Placement(sites), routes, seed)
    except InvalidConfigurationError as err:
        raise ParseError(str(err), lines[0][0].line, 1) from None


def read_pnr(path: str | Path) -> PnrResult:
    """Read a PnR file, tagging parse errors with the path."""
    path = Path(path)
    try:
        return parse_pnr(path.read_text(encoding="utf-8"))
    except ParseError as err:
        err.path = str(path)
        raise
