"""
check.py

Module for the independent verification of a placement and its routes.

The checker shares no code with the placer or the router. It reports:

- ``off-mesh``, ``unplaced``, ``unexpected-vertex``, ``injectivity``:
  sigma_M maps exactly the pack ports, injectively, onto existing routers.
- ``missing-route``, ``unexpected-route``, ``unknown-link``: every external
  edge has a route made of links of the mesh.
- ``connectivity``, ``stray-link``, ``stray-sink``: following the route's own
  links from the driver's Local input reaches every load's Local output,
  every link of the route and no other Local output.
- ``dead-end``: every link reached that way lies on a path to a Local output.
- ``disjointness``: routes of edges with intersecting color sets share no link.
- ``config-<rule>``: the configuration of each application passes
  :func:`sdfnoc.noc.config.validate_config`.
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations

from sdfnoc.merge.packing import PackedGraph
from sdfnoc.noc.config import CrossbarConfig, validate_config
from sdfnoc.noc.mesh import Coord, InterLink, IntraLink, Link, MeshNoC, RouterPort, format_coord
from sdfnoc.pnr.placement import Placement


@dataclass(frozen=True)
class CheckViolation:
    """One failed PnR property; ``subject`` names the vertex, edge or application."""

    rule: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"[{self.rule}] {self.subject}: {self.message}"


def _link_exists(noc: MeshNoC, link: Link) -> bool:
    if isinstance(link, IntraLink):
        return (
            noc.contains(link.router)
            and noc.has_port(link.router, link.in_port)
            and noc.has_port(link.router, link.out_port)
        )
    return noc.contains(link.a) and noc.contains(link.b)


def _flow(
    links: frozenset[Link], root: Coord
) -> tuple[set[Coord], set[Link], set[Link]]:
    """
    Follow the route from the Local input of ``root``.

    Returns the Local outputs reached, the links reached and, among those,
    the links from which no Local output can be reached.
    """
    crossbar: dict[tuple[Coord, RouterPort], list[IntraLink]] = {}
    wires: dict[tuple[Coord, RouterPort], tuple[InterLink, Coord, RouterPort]] = {}
    for link in links:
        if isinstance(link, IntraLink):
            crossbar.setdefault((link.router, link.in_port), []).append(link)
        else:
            wires[(link.a, link.a_port)] = (link, link.b, link.b_port)
            wires[(link.b, link.b_port)] = (link, link.a, link.a_port)
    sinks: set[Coord] = set()
    used: set[Link] = set()
    # (input key, links taken, next input key); None ends at a Local output
    hops: list[tuple[tuple[Coord, RouterPort], tuple[Link, ...], tuple | None]] = []
    stubs: list[IntraLink] = []
    seen = {(root, RouterPort.L)}
    queue = deque(seen)
    while queue:
        key = queue.popleft()
        for link in crossbar.get(key, []):
            used.add(link)
            if link.out_port is RouterPort.L:
                sinks.add(link.router)
                hops.append((key, (link,), None))
                continue
            wire = wires.get((link.router, link.out_port))
            if wire is None:
                stubs.append(link)
                continue
            inter, far, far_port = wire
            used.add(inter)
            hops.append((key, (link, inter), (far, far_port)))
            if (far, far_port) not in seen:
                seen.add((far, far_port))
                queue.append((far, far_port))

    live: set[tuple[Coord, RouterPort]] = set()
    grew = True
    while grew:
        grew = False
        for start, _, end in hops:
            if start not in live and (end is None or end in live):
                live.add(start)
                grew = True
    productive = {
        link for _, chain, end in hops if end is None or end in live for link in chain
    }
    return sinks, used, used - productive


def check(
    packed: PackedGraph,
    noc: MeshNoC,
    placement: Placement,
    routes: Mapping[int, frozenset[Link]],
) -> list[CheckViolation]:
    """
    Verify a placement and routes against the map-and-route constraints.

    Returns
    -------
    list of CheckViolation
        Empty when everything holds.
    """
    violations: list[CheckViolation] = []
    domain = set(packed.placeable_vertices())

    for vertex, site in placement.items():
        if vertex not in domain:
            violations.append(
                CheckViolation("unexpected-vertex", str(vertex), "not a pack port")
            )
        if not noc.contains(site):
            violations.append(
                CheckViolation("off-mesh", str(vertex), f"{format_coord(site)} is not a router")
            )
    for vertex in sorted(domain - set(placement)):
        violations.append(CheckViolation("unplaced", str(vertex), "pack port has no router"))
    counts = Counter(site for _, site in placement.items())
    for site, count in sorted(counts.items()):
        if count > 1:
            names = " ".join(str(v) for v, s in placement.items() if s == site)
            violations.append(
                CheckViolation("injectivity", format_coord(site), f"shared by {names}")
            )

    external = set(packed.external_edges)
    for idx in sorted(external - set(routes)):
        violations.append(CheckViolation("missing-route", f"e{idx}", "external edge not routed"))
    for idx in sorted(set(routes) - external):
        violations.append(CheckViolation("unexpected-route", f"e{idx}", "not an external edge"))

    for idx in sorted(external & set(routes)):
        links = routes[idx]
        edge = packed.edge(idx)
        unknown = [link for link in links if not _link_exists(noc, link)]
        for link in sorted(unknown, key=str):
            violations.append(CheckViolation("unknown-link", f"e{idx}", f"{link} not in the mesh"))
        if any(v not in placement for v in edge.vertices):
            continue
        sinks, used, dead = _flow(links, placement[edge.driver])
        wanted = {placement[v] for v in edge.loads}
        for load in edge.loads:
            if placement[load] not in sinks:
                violations.append(
                    CheckViolation(
                        "connectivity",
                        f"e{idx}",
                        f"{load} at {format_coord(placement[load])} is not reached",
                    )
                )
        for site in sorted(sinks - wanted):
            violations.append(
                CheckViolation("stray-sink", f"e{idx}", f"reaches Local of {format_coord(site)}")
            )
        for link in sorted(links - used, key=str):
            violations.append(
                CheckViolation("stray-link", f"e{idx}", f"{link} is not on the signal tree")
            )
        for link in sorted(dead, key=str):
            violations.append(CheckViolation("dead-end", f"e{idx}", f"{link} leads to no load"))

    routed = sorted(external & set(routes))
    for a, b in combinations(routed, 2):
        if packed.edge(a).colors & packed.edge(b).colors:
            shared = routes[a] & routes[b]
            if shared:
                names = " ".join(sorted(str(link) for link in shared))
                violations.append(
                    CheckViolation("disjointness", f"e{a} e{b}", f"share {names}")
                )

    for app in packed.union.app_ids:
        links = [
            link for idx in routed if app in packed.edge(idx).colors for link in routes[idx]
        ]
        for v in validate_config(noc, CrossbarConfig.from_links(links)):
            violations.append(CheckViolation(f"config-{v.rule}", f"app {app}", str(v)))
    return violations
