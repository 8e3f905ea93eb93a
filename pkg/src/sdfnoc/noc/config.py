"""
config.py

Module for crossbar configurations of a mesh NoC and their validity rules.

A configuration lists, per router, the crossbar connections ``in -> out`` that
are switched on. One input may fan out to several outputs (multicast); every
output has at most one driver. Per configuration each physical inter-router
link carries data in one direction only, and each Local port is either an
input or an output.

Implements:

- CrossbarConfig: immutable full-NoC configuration.
- Violation / validate_config: rule checking, violations as data.
- Trace / trace_from_local: follow a signal from a Local input.
- format_config / parse_config: the per-application config file format::

      config app=day mesh=2x5
      router (0,0): L->E
      router (0,1): W->L,W->S
"""

from __future__ import annotations

import re
from collections import defaultdict, deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from sdfnoc.exceptions import ParseError
from sdfnoc.noc.mesh import (
    PORT_ORDER,
    Coord,
    InterLink,
    IntraLink,
    Link,
    MeshNoC,
    RouterPort,
    format_coord,
    parse_mesh,
)

Connection = tuple[RouterPort, RouterPort]

_HEADER = re.compile(r"^config app=(\S+) mesh=(\d+x\d+)$")
_ROUTER = re.compile(r"^router \((\d+),(\d+)\): (\S+)$")
_CONNECTION = re.compile(r"^([NESWL])->([NESWL])$")


def _connection_key(conn: Connection) -> tuple[int, int]:
    return (conn[0].index, conn[1].index)


@dataclass(frozen=True)
class CrossbarConfig:
    """
    Crossbar connections switched on in every router of the NoC.

    Parameters
    ----------
    connections : mapping of Coord to iterable of (RouterPort, RouterPort)
        Router -> set of ``(in_port, out_port)``. Routers without connections
        may be omitted.
    """

    connections: Mapping[Coord, frozenset[Connection]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normalized = {
            tuple(router): frozenset((RouterPort(p), RouterPort(q)) for p, q in conns)
            for router, conns in self.connections.items()
        }
        object.__setattr__(
            self,
            "connections",
            {router: normalized[router] for router in sorted(normalized) if normalized[router]},
        )

    @classmethod
    def from_links(cls, links: Iterable[Link]) -> CrossbarConfig:
        """Configuration switching on the intra links among ``links``."""
        connections: dict[Coord, set[Connection]] = defaultdict(set)
        for link in links:
            if isinstance(link, IntraLink):
                connections[link.router].add((link.in_port, link.out_port))
        return cls(connections)

    def at(self, router: Coord) -> frozenset[Connection]:
        return self.connections.get(router, frozenset())

    def routers(self) -> tuple[Coord, ...]:
        return tuple(self.connections)

    def __iter__(self) -> Iterator[IntraLink]:
        for router, conns in self.connections.items():
            for p, q in sorted(conns, key=_connection_key):
                yield IntraLink(router, p, q)

    def __len__(self) -> int:
        return sum(len(c) for c in self.connections.values())

    def intra_links(self) -> frozenset[IntraLink]:
        return frozenset(self)

    def transposed(self) -> CrossbarConfig:
        """Configuration of the transposed mesh."""
        return CrossbarConfig(
            {
                (c, r): {(p.transposed(), q.transposed()) for p, q in conns}
                for (r, c), conns in self.connections.items()
            }
        )


@dataclass(frozen=True)
class Violation:
    """One broken configuration rule."""

    rule: str
    router: Coord | None
    port: RouterPort | None
    message: str

    def __str__(self) -> str:
        where = "" if self.router is None else f" at {format_coord(self.router)}"
        port = "" if self.port is None else f" port {self.port.value}"
        return f"[{self.rule}]{where}{port}: {self.message}"


def validate_config(noc: MeshNoC, cfg: CrossbarConfig) -> list[Violation]:
    """
    Check a configuration against the NoC rules.

    Rules: ``unknown-router``, ``self-connection``, ``border-port`` (a mesh
    port without neighbor), ``single-driver`` (an output driven twice),
    ``link-direction`` (an inter link used both ways) and ``local-direction``
    (a Local port used as input and output).

    Returns
    -------
    list of Violation
        Empty when the configuration is valid.

    Examples
    --------
    >>> from sdfnoc.noc.mesh import build_mesh
    >>> L, E, W = RouterPort.L, RouterPort.E, RouterPort.W
    >>> cfg = CrossbarConfig({(0, 0): {(L, E)}, (0, 1): {(L, W)}})
    >>> [v.rule for v in validate_config(build_mesh(1, 2), cfg)]
    ['link-direction']
    """
    violations: list[Violation] = []
    for router, conns in cfg.connections.items():
        if not noc.contains(router):
            violations.append(
                Violation("unknown-router", router, None, f"router outside the {noc} mesh")
            )
            continue
        drivers: dict[RouterPort, list[RouterPort]] = defaultdict(list)
        for p, q in sorted(conns, key=_connection_key):
            if p is q:
                violations.append(
                    Violation("self-connection", router, p, f"{p.value}->{q.value}")
                )
            for port in (p, q):
                if not noc.has_port(router, port):
                    violations.append(
                        Violation("border-port", router, port, "port has no neighbor")
                    )
            drivers[q].append(p)
        for out_port in PORT_ORDER:
            sources = drivers.get(out_port, [])
            if len(sources) > 1:
                names = ",".join(p.value for p in sources)
                violations.append(
                    Violation("single-driver", router, out_port, f"driven by {names}")
                )
        local_in = any(p is RouterPort.L for p, _ in conns)
        local_out = RouterPort.L in drivers
        if local_in and local_out:
            violations.append(
                Violation(
                    "local-direction", router, RouterPort.L, "Local is input and output"
                )
            )
    for link in noc.inter_links:
        forward = _uses(cfg, link.a, link.a_port, outgoing=True) or _uses(
            cfg, link.b, link.b_port, outgoing=False
        )
        backward = _uses(cfg, link.b, link.b_port, outgoing=True) or _uses(
            cfg, link.a, link.a_port, outgoing=False
        )
        if forward and backward:
            violations.append(
                Violation(
                    "link-direction", link.a, link.a_port, f"{link} driven in both directions"
                )
            )
    return violations


def _uses(cfg: CrossbarConfig, router: Coord, port: RouterPort, outgoing: bool) -> bool:
    side = 1 if outgoing else 0
    return any(conn[side] is port for conn in cfg.at(router))


@dataclass(frozen=True)
class Trace:
    """
    Where a signal entering a Local input goes.

    Attributes
    ----------
    reached : tuple of Coord
        Routers whose Local output the signal reaches.
    links : tuple of Link
        Links traversed, in traversal order.
    dead_ends : tuple of (Coord, RouterPort)
        Crossbar inputs reached without any connection, or outputs leading
        off the mesh.
    """

    reached: tuple[Coord, ...]
    links: tuple[Link, ...]
    dead_ends: tuple[tuple[Coord, RouterPort], ...]


def trace_from_local(noc: MeshNoC, cfg: CrossbarConfig, router: Coord) -> Trace:
    """
    Follow the crossbar connections from the Local input of ``router``.

    The traversal is breadth first and visits each crossbar input once.
    """
    reached: list[Coord] = []
    links: list[Link] = []
    dead_ends: list[tuple[Coord, RouterPort]] = []
    seen = {(router, RouterPort.L)}
    queue = deque([(router, RouterPort.L)])
    while queue:
        at, in_port = queue.popleft()
        outs = sorted((q for p, q in cfg.at(at) if p is in_port), key=PORT_ORDER.index)
        if not outs and in_port is not RouterPort.L:
            dead_ends.append((at, in_port))
        for out_port in outs:
            links.append(IntraLink(at, in_port, out_port))
            if out_port is RouterPort.L:
                reached.append(at)
                continue
            neighbor = noc.neighbor(at, out_port)
            if neighbor is None:
                dead_ends.append((at, out_port))
                continue
            links.append(InterLink.between(at, out_port, neighbor))
            nxt = (neighbor, out_port.opposite)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return Trace(tuple(reached), tuple(links), tuple(dead_ends))


def format_config(cfg: CrossbarConfig, noc: MeshNoC, app: str) -> str:
    """Write a configuration file for application ``app``."""
    lines = [f"config app={app} mesh={noc}"]
    for router, conns in cfg.connections.items():
        body = ",".join(f"{p.value}->{q.value}" for p, q in sorted(conns, key=_connection_key))
        lines.append(f"router {format_coord(router)}: {body}")
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> tuple[str, MeshNoC, CrossbarConfig]:
    """
    Parse a configuration file.

    Returns
    -------
    app : str
        Application name of the header.
    noc : MeshNoC
        Mesh of the header.
    cfg : CrossbarConfig
        The connections.

    Raises
    ------
    ParseError
        On malformed lines or a router listed twice.
    """
    lines = [(n, line.strip()) for n, line in enumerate(text.splitlines(), start=1)]
    lines = [(n, line) for n, line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError("empty config, expected 'config app=<ident> mesh=<R>x<C>'", 1, 1)
    number, header = lines[0]
    match = _HEADER.match(header)
    if match is None:
        raise ParseError("expected 'config app=<ident> mesh=<R>x<C>'", number, 1)
    app = match.group(1)
    try:
        noc = MeshNoC(*parse_mesh(match.group(2)))
    except ValueError as err:
        raise ParseError(str(err), number, header.index("mesh=") + 1) from None
    connections: dict[Coord, set[Connection]] = {}
    for number, line in lines[1:]:
        match = _ROUTER.match(line)
        if match is None:
            raise ParseError("expected 'router (<r>,<c>): <IN>-><OUT>,...'", number, 1)
        router = (int(match.group(1)), int(match.group(2)))
        if router in connections:
            raise ParseError(f"router {format_coord(router)} listed twice", number, 1)
        conns = set()
        column = match.start(3) + 1
        for item in match.group(3).split(","):
            conn = _CONNECTION.match(item)
            if conn is None:
                raise ParseError(f"invalid connection {item!r}", number, column)
            conns.add((RouterPort(conn.group(1)), RouterPort(conn.group(2))))
            column += len(item) + 1
        connections[router] = conns
    return app, noc, CrossbarConfig(connections)


def read_config(path: str | Path) -> tuple[str, MeshNoC, CrossbarConfig]:
    path = Path(path)
    try:
        return parse_config(path.read_text(encoding="utf-8"))
    except ParseError as err:
        err.path = str(path)
        raise
