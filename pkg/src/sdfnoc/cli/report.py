"""
report.py

Module for the area report comparing standalone implementations with the
merged, reconfigurable one.

Implements:

- AreaReport: standalone totals, reconfigurable total and savings.
- model_report: areas computed with :func:`sdfnoc.merge.area.area`.
- given_report: areas supplied as measured totals.

Examples
--------
>>> report = given_report([14327, 27872], 31042)
>>> round(100 * report.savings, 2)
26.44
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import pandas as pd

from sdfnoc.graph.dataflow_graph import DataflowGraph
from sdfnoc.merge.area import AreaTable, area
from sdfnoc.merge.merger import merge

# Measured totals of the two standalone preprocessors and of the merged one
GIVEN_STANDALONE = (14327, 27872)
GIVEN_RECONFIGURABLE = 31042

REPORT_MODES = ("model", "given")


@dataclass(frozen=True)
class AreaReport:
    """
    Area of each standalone application against the merged implementation.

    Attributes
    ----------
    mode : str
        ``"model"`` or ``"given"``.
    standalone : mapping of str to int
        Application name -> area of its standalone implementation.
    reconfigurable : int
        Area of the merged implementation.
    """

    mode: str
    standalone: Mapping[str, int]
    reconfigurable: int

    def __post_init__(self) -> None:
        if self.mode not in REPORT_MODES:
            raise ValueError(
                f"Unknown report mode: {self.mode}"
                "\n Mode must be one of: "
                f"{list(REPORT_MODES)}"
            )
        if not self.standalone:
            raise ValueError("report needs at least one standalone area")

    @property
    def total_standalone(self) -> int:
        return sum(self.standalone.values())

    @property
    def savings(self) -> float:
        """``(sum(standalone) - reconfigurable) / sum(standalone)``."""
        total = self.total_standalone
        if total == 0:
            return 0.0
        return (total - self.reconfigurable) / total

    def to_dataframe(self) -> pd.DataFrame:
        """One row per implementation with its area."""
        rows = [{"implementation": name, "area": a} for name, a in self.standalone.items()]
        rows.append({"implementation": "standalone total", "area": self.total_standalone})
        rows.append({"implementation": "reconfigurable", "area": self.reconfigurable})
        return pd.DataFrame(rows).set_index("implementation")

    def format_report(self) -> str:
        """Plain text report with the savings in percent, two decimals."""
        width = max(len(name) for name in (*self.standalone, "standalone total", "reconfigurable"))
        lines = [f"area report ({self.mode})"]
        for name, value in self.to_dataframe()["area"].items():
            lines.append(f"  {name:<{width}}  {int(value):>8d}")
        lines.append(f"savings: {100 * self.savings:.2f}%")
        return "\n".join(lines) + "\n"


def model_report(graphs: Sequence[DataflowGraph], table: AreaTable) -> AreaReport:
    """
    Model the area of each application alone and of their merge.

    Raises
    ------
    MissingAreaError
        If a node type has no area.
    """
    standalone = {}
    for g in graphs:
        _, packed = merge([g])
        standalone[g.name] = area(packed, table)
    _, packed = merge(graphs)
    return AreaReport("model", standalone, area(packed, table))


def given_report(
    standalone: Sequence[int] = GIVEN_STANDALONE,
    reconfigurable: int = GIVEN_RECONFIGURABLE,
    names: Sequence[str] | None = None,
) -> AreaReport:
    """Report on measured totals; applications are named ``app1``, ``app2``, ... by default."""
    names = names or [f"app{i}" for i in range(1, len(standalone) + 1)]
    if len(names) != len(standalone):
        raise ValueError(f"{len(names)} names for {len(standalone)} standalone areas")
    if any(a < 0 for a in standalone) or reconfigurable < 0:
        raise ValueError("areas must be >= 0")
    return AreaReport("given", dict(zip(names, standalone)), reconfigurable)
