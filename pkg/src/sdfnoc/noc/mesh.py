"""
mesh.py

Module for the circuit-switched 2D mesh NoC model.

Every router is a 5x5 crossbar over the ports North, East, South, West and
Local. Routers are addressed ``(row, col)``; North is row - 1, East col + 1,
South row + 1, West col - 1. The link set holds:

- IntraLink: a crossbar connection ``in_port -> out_port`` (different ports)
  inside one router, written ``X(r,c)IN>OUT``.
- InterLink: the physical link between two neighboring routers, written
  ``I(r1,c1)P1=(r2,c2)P2`` with ``P1`` East or South.

Link enumeration is row-major over routers, then port order N, E, S, W, L.

Examples
--------
>>> noc = build_mesh(2, 5)
>>> len(noc.routers), len(noc.inter_links), len(noc.intra_links)
(10, 13, 200)
>>> str(noc.inter_links[0])
'I(0,0)E=(0,1)W'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Union

Coord = tuple[int, int]


class RouterPort(str, Enum):
    N = "N"
    E = "E"
    S = "S"
    W = "W"
    L = "L"

    @property
    def index(self) -> int:
        return PORT_ORDER.index(self)

    @property
    def opposite(self) -> RouterPort:
        return _OPPOSITE[self]

    def transposed(self) -> RouterPort:
        return _TRANSPOSED[self]


PORT_ORDER = (RouterPort.N, RouterPort.E, RouterPort.S, RouterPort.W, RouterPort.L)
MESH_PORTS = PORT_ORDER[:4]
_OFFSETS = {
    RouterPort.N: (-1, 0),
    RouterPort.E: (0, 1),
    RouterPort.S: (1, 0),
    RouterPort.W: (0, -1),
}
_OPPOSITE = {
    RouterPort.N: RouterPort.S,
    RouterPort.S: RouterPort.N,
    RouterPort.E: RouterPort.W,
    RouterPort.W: RouterPort.E,
    RouterPort.L: RouterPort.L,
}
# (r, c) -> (c, r) swaps North with West and East with South
_TRANSPOSED = {
    RouterPort.N: RouterPort.W,
    RouterPort.W: RouterPort.N,
    RouterPort.E: RouterPort.S,
    RouterPort.S: RouterPort.E,
    RouterPort.L: RouterPort.L,
}

_COORD = r"\((\d+),(\d+)\)"
_INTRA = re.compile(rf"^X{_COORD}([NESWL])>([NESWL])$")
_INTER = re.compile(rf"^I{_COORD}([NESWL])={_COORD}([NESWL])$")
_MESH = re.compile(r"^(\d+)x(\d+)$")


def format_coord(coord: Coord) -> str:
    return f"({coord[0]},{coord[1]})"


@dataclass(frozen=True)
class IntraLink:
    """Crossbar connection ``in_port -> out_port`` inside one router."""

    router: Coord
    in_port: RouterPort
    out_port: RouterPort

    def __post_init__(self) -> None:
        if self.in_port is self.out_port:
            raise ValueError(f"self connection {self.in_port.value} in router {self.router}")

    def __str__(self) -> str:
        return f"X{format_coord(self.router)}{self.in_port.value}>{self.out_port.value}"

    def transposed(self) -> IntraLink:
        r, c = self.router
        return IntraLink((c, r), self.in_port.transposed(), self.out_port.transposed())


@dataclass(frozen=True)
class InterLink:
    """Physical link between neighbors; ``a_port`` is East or South of ``a``."""

    a: Coord
    a_port: RouterPort
    b: Coord
    b_port: RouterPort

    def __post_init__(self) -> None:
        if self.a_port not in (RouterPort.E, RouterPort.S):
            raise ValueError(f"inter link must be written from its E or S side: {self}")
        if self.b_port is not self.a_port.opposite:
            raise ValueError(f"inter link ports do not face each other: {self}")
        dr, dc = _OFFSETS[self.a_port]
        if (self.a[0] + dr, self.a[1] + dc) != self.b:
            raise ValueError(f"inter link routers are not neighbors: {self}")

    @classmethod
    def between(cls, router: Coord, port: RouterPort, neighbor: Coord) -> InterLink:
        """Canonical link leaving ``router`` through ``port`` towards ``neighbor``."""
        if port in (RouterPort.E, RouterPort.S):
            return cls(router, port, neighbor, port.opposite)
        return cls(neighbor, port.opposite, router, port)

    def endpoint(self, router: Coord) -> RouterPort:
        """Port of ``router`` this link attaches to."""
        if router == self.a:
            return self.a_port
        if router == self.b:
            return self.b_port
        raise ValueError(f"{router} is not an endpoint of {self}")

    def __str__(self) -> str:
        return (
            f"I{format_coord(self.a)}{self.a_port.value}="
            f"{format_coord(self.b)}{self.b_port.value}"
        )

    def transposed(self) -> InterLink:
        (ar, ac), (br, bc) = self.a, self.b
        return InterLink(
            (ac, ar), self.a_port.transposed(), (bc, br), self.b_port.transposed()
        )


Link = Union[IntraLink, InterLink]


def parse_link(text: str) -> Link:
    """
    Parse ``X(r,c)IN>OUT`` or ``I(r1,c1)P1=(r2,c2)P2``.

    Raises
    ------
    ValueError
        If the text is not a link.
    """
    match = _INTRA.match(text)
    if match:
        r, c, p, q = match.groups()
        return IntraLink((int(r), int(c)), RouterPort(p), RouterPort(q))
    match = _INTER.match(text)
    if match:
        r1, c1, p1, r2, c2, p2 = match.groups()
        return InterLink((int(r1), int(c1)), RouterPort(p1), (int(r2), int(c2)), RouterPort(p2))
    raise ValueError(f"invalid link {text!r}")


def parse_mesh(text: str) -> tuple[int, int]:
    """Parse ``<rows>x<cols>``."""
    match = _MESH.match(text.strip())
    if match is None:
        raise ValueError(f"mesh must be written <rows>x<cols>, got {text!r}")
    return int(match.group(1)), int(match.group(2))


@dataclass(frozen=True)
class MeshNoC:
    """
    A ``rows`` x ``cols`` mesh of 5x5 crossbar routers.

    Raises
    ------
    ValueError
        If a dimension is smaller than 1.
    """

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"mesh dimensions must be >= 1, got {self.rows}x{self.cols}")

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"

    @cached_property
    def routers(self) -> tuple[Coord, ...]:
        """Router coordinates in row-major order."""
        return tuple((r, c) for r in range(self.rows) for c in range(self.cols))

    @property
    def capacity(self) -> int:
        """Number of Local ports."""
        return self.rows * self.cols

    def contains(self, router: Coord) -> bool:
        return 0 <= router[0] < self.rows and 0 <= router[1] < self.cols

    def neighbor(self, router: Coord, port: RouterPort) -> Coord | None:
        """Router behind ``port``, or None for Local and border ports."""
        if port is RouterPort.L:
            return None
        dr, dc = _OFFSETS[port]
        other = (router[0] + dr, router[1] + dc)
        return other if self.contains(other) else None

    def has_port(self, router: Coord, port: RouterPort) -> bool:
        """Local always exists; mesh ports exist when a neighbor is behind them."""
        return port is RouterPort.L or self.neighbor(router, port) is not None

    def link_at(self, router: Coord, port: RouterPort) -> InterLink | None:
        neighbor = self.neighbor(router, port)
        return None if neighbor is None else InterLink.between(router, port, neighbor)

    @cached_property
    def intra_links(self) -> tuple[IntraLink, ...]:
        return tuple(
            IntraLink(router, p, q)
            for router in self.routers
            for p in PORT_ORDER
            for q in PORT_ORDER
            if p is not q
        )

    @cached_property
    def inter_links(self) -> tuple[InterLink, ...]:
        """One canonical link per pair of orthogonal neighbors."""
        links = []
        for router in self.routers:
            for port in (RouterPort.E, RouterPort.S):
                link = self.link_at(router, port)
                if link is not None:
                    links.append(link)
        return tuple(links)

    @cached_property
    def links(self) -> tuple[Link, ...]:
        """All links: per router (row-major) its intra links, then its E and S links."""
        intra = {router: [] for router in self.routers}
        for link in self.intra_links:
            intra[link.router].append(link)
        inter = {router: [] for router in self.routers}
        for link in self.inter_links:
            inter[link.a].append(link)
        return tuple(
            link for router in self.routers for link in (*intra[router], *inter[router])
        )

    @cached_property
    def link_index(self) -> dict[Link, int]:
        return {link: i for i, link in enumerate(self.links)}

    def sort_links(self, links) -> list[Link]:
        """Sort links in canonical enumeration order."""
        return sorted(links, key=self.link_index.__getitem__)

    def transposed(self) -> MeshNoC:
        return MeshNoC(self.cols, self.rows)


def build_mesh(rows: int, cols: int) -> MeshNoC:
    """
    Build a ``rows`` x ``cols`` mesh.

    Raises
    ------
    ValueError
        On a zero dimension.

    Examples
    --------
    >>> len(build_mesh(3, 3).inter_links)
    12
    """
    return MeshNoC(rows, cols)
