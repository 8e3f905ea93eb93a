"""
project.py

Module for project files, which tie the design flow inputs together::

    app day.sdf
    app night.sdf
    mesh 2x5
    areas areas.txt
    seed 0

Application files are listed in application id order. Paths are relative to
the project file.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from sdfnoc.exceptions import ParseError
from sdfnoc.graph.dataflow_graph import DataflowGraph
from sdfnoc.graph.parser import read_app_graph, tokenize
from sdfnoc.merge.area import AreaTable, read_area_table
from sdfnoc.noc.mesh import MeshNoC, parse_mesh


@dataclass(frozen=True)
class Project:
    """
    Inputs of the design flow.

    Attributes
    ----------
    apps : tuple of Path
        Application graph files, application ids 1..N in order.
    mesh : tuple of int
        ``(rows, cols)`` of the target NoC.
    areas : Path or None
        Area table file.
    seed : int
        Seed of every randomized step.
    """

    apps: tuple[Path, ...]
    mesh: tuple[int, int]
    areas: Path | None = None
    seed: int = 0

    def load_graphs(self) -> list[DataflowGraph]:
        return [read_app_graph(path, app_id) for app_id, path in enumerate(self.apps, start=1)]

    def noc(self) -> MeshNoC:
        return MeshNoC(*self.mesh)

    def area_table(self) -> AreaTable:
        if self.areas is None:
            raise ValueError("project has no 'areas' line")
        return read_area_table(self.areas)


def parse_project(text: str, base_dir: str | Path = ".") -> Project:
    """
    Parse a project document.

    Raises
    ------
    ParseError
        On unknown directives, a repeated ``mesh``/``areas``/``seed`` line, or
        a project without ``app`` or ``mesh`` lines.
    """
    base = Path(base_dir)
    apps: list[Path] = []
    values: dict[str, object] = {}
    lines = tokenize(text)
    for words in lines:
        head = words[0]
        if len(words) != 2:
            raise head.error(f"expected '{head.text} <value>'", ParseError)
        value = words[1]
        if head.text == "app":
            apps.append(base / value.text)
            continue
        if head.text not in ("mesh", "areas", "seed"):
            raise head.error(f"unknown directive {head.text!r}", ParseError)
        if head.text in values:
            raise head.error(f"duplicate '{head.text}' line", ParseError)
        try:
            if head.text == "mesh":
                values["mesh"] = parse_mesh(value.text)
            elif head.text == "seed":
                values["seed"] = int(value.text)
            else:
                values["areas"] = base / value.text
        except ValueError as err:
            raise value.error(str(err), ParseError) from None
    anchor = lines[0][0] if lines else None
    if not apps:
        raise ParseError("project lists no 'app'", anchor.line if anchor else 1, 1)
    if "mesh" not in values:
        raise ParseError("project has no 'mesh' line", anchor.line if anchor else 1, 1)
    return Project(
        tuple(apps),
        values["mesh"],
        values.get("areas"),
        values.get("seed", 0),
    )


def read_project(path: str | Path) -> Project:
    """Read a project file, tagging parse errors with the path."""
    path = Path(path)
    try:
        return parse_project(path.read_text(encoding="utf-8"), path.parent)
    except ParseError as err:
        err.path = str(path)
        raise
