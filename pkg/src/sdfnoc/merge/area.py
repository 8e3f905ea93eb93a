"""
area.py

Module for the area metric of a packed union graph.

The modeled area is the sum of the intrinsic areas of the union nodes plus
one router per pack. The area of routing wires is not modeled.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

from sdfnoc.exceptions import MissingAreaError, ParseError
from sdfnoc.graph.dataflow_graph import is_identifier
from sdfnoc.merge.packing import PackedGraph

ROUTER = "ROUTER"
_WORD = re.compile(r"\S+")


@dataclass(frozen=True)
class AreaTable:
    """
    Intrinsic area per node type plus the area of one router.

    Parameters
    ----------
    intrinsic : mapping of str to int
        Type label -> area units.
    router_area : int, optional
        Area units of one router. Defaults to 0.

    Raises
    ------
    ValueError
        If an area is negative.
    """

    intrinsic: Mapping[str, int] = field(default_factory=dict)
    router_area: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "intrinsic", dict(self.intrinsic))
        for type_label, value in self.intrinsic.items():
            if value < 0:
                raise ValueError(f"area of {type_label} must be >= 0, got {value}")
        if self.router_area < 0:
            raise ValueError(f"router area must be >= 0, got {self.router_area}")

    def __getitem__(self, type_label: str) -> int:
        try:
            return self.intrinsic[type_label]
        except KeyError:
            raise MissingAreaError(
                f"Unknown node type in area table: {type_label}"
                "\n Type must be one of: "
                f"{sorted(self.intrinsic)}"
            ) from None

    def with_router_area(self, router_area: int) -> AreaTable:
        return AreaTable(self.intrinsic, router_area)


def area(packed: PackedGraph, table: AreaTable) -> int:
    """
    Modeled area of a packed graph.

    Returns
    -------
    int
        Sum of intrinsic node areas plus ``len(packs) * router_area``.

    Raises
    ------
    MissingAreaError
        If a node type has no table entry.

    Examples
    --------
    >>> from sdfnoc.graph.parser import parse_app_graph
    >>> from sdfnoc.merge.merger import merge
    >>> _, packed = merge([parse_app_graph("app a\\nnode g type=GAUSS3 in=1 out=1\\n")])
    >>> area(packed, AreaTable({"GAUSS3": 1058}))
    1058
    """
    intrinsic = sum(table[node.type] for node in packed.union.nodes)
    return intrinsic + len(packed.packs) * table.router_area


def parse_area_table(text: str) -> AreaTable:
    """
    Parse ``<TYPE> <uint>`` lines plus one ``ROUTER <uint>`` line.

    ``#`` starts a comment. A missing ROUTER line means router area 0.
    """
    intrinsic: dict[str, int] = {}
    router_area: int | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        words = [(m.group(), m.start() + 1) for m in _WORD.finditer(raw.split("#", 1)[0])]
        if not words:
            continue
        if len(words) != 2:
            raise ParseError("expected '<TYPE> <uint>'", number, words[0][1])
        (label, label_col), (value, value_col) = words
        if not is_identifier(label):
            raise ParseError(f"invalid type label {label!r}", number, label_col)
        if not value.isdigit():
            raise ParseError(f"expected a non-negative integer, got {value!r}", number, value_col)
        if label == ROUTER:
            if router_area is not None:
                raise ParseError("duplicate ROUTER line", number, label_col)
            router_area = int(value)
        else:
            if label in intrinsic:
                raise ParseError(f"duplicate entry for {label}", number, label_col)
            intrinsic[label] = int(value)
    return AreaTable(intrinsic, router_area or 0)


def read_area_table(path: str | Path) -> AreaTable:
    path = Path(path)
    try:
        return parse_area_table(path.read_text(encoding="utf-8"))
    except ParseError as err:
        err.path = str(path)
        raise
