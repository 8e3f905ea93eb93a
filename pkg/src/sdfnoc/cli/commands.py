"""
commands.py

Module for the design flow steps behind the ``sdfnoc`` command line.

Every command reads its upstream artifacts, runs one step and returns the
text of the artifact it produces. With ``out`` the text is also written to
that path (UTF-8, LF line endings).

Implements:

- Diagnostic: outcome of validating one file.
- cmd_validate: parse and check graph, union, PnR and config files.
- cmd_merge: application graphs -> union file.
- cmd_pnr: union file -> PnR file.
- cmd_config: PnR file -> configuration of one application.
- cmd_simulate: PnR file + stream file -> output stream file.
- cmd_report: area report in model or given mode.
- cmd_export_dot: graph, union or PnR file -> DOT source.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from sdfnoc.cli.project import Project, read_project
from sdfnoc.cli.report import (
    GIVEN_RECONFIGURABLE,
    GIVEN_STANDALONE,
    AreaReport,
    given_report,
    model_report,
)
from sdfnoc.exceptions import InvalidConfigurationError, ParseError, SdfNocError
from sdfnoc.graph.evaluate import check_registry
from sdfnoc.graph.parser import read_app_graph, tokenize
from sdfnoc.imaging.registry import get_operator_registry
from sdfnoc.merge.area import read_area_table
from sdfnoc.merge.dot import graph_to_dot, union_to_dot
from sdfnoc.merge.merger import merge
from sdfnoc.merge.union_io import format_union, read_union
from sdfnoc.noc.config import format_config, read_config, validate_config
from sdfnoc.noc.mesh import MeshNoC, parse_mesh
from sdfnoc.pnr.result import format_pnr, place_and_route, read_pnr
from sdfnoc.sim.delays import DelayModel
from sdfnoc.sim.simulator import simulate
from sdfnoc.sim.streams import format_streams, read_streams, write_streams

logger = logging.getLogger(__name__)

# First directive of each artifact format
ARTIFACT_KINDS = {"app": "graph", "union": "union", "pnr": "pnr", "config": "config"}


def artifact_kind(path: str | Path) -> str:
    """
    Kind of an artifact file, from its first directive.

    Raises
    ------
    ParseError
        If the first directive names no known format.
    """
    path = Path(path)
    lines = tokenize(path.read_text(encoding="utf-8"))
    head = lines[0][0].text if lines else ""
    if head not in ARTIFACT_KINDS:
        raise ParseError(
            f"Unknown artifact with first directive {head!r}"
            "\n Directive must be one of: "
            f"{list(ARTIFACT_KINDS)}",
            lines[0][0].line if lines else 1,
            1,
            str(path),
        )
    return ARTIFACT_KINDS[head]


def _write(text: str, out: str | Path | None) -> str:
    if out is not None:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
        logger.info("wrote %s", out)
    return text


def _project_seed(seed: int | None, proj: Project | None) -> int:
    if seed is not None:
        return seed
    return proj.seed if proj is not None else 0


@dataclass(frozen=True)
class Diagnostic:
    """Outcome of validating one file."""

    path: str
    ok: bool
    message: str

    def __str__(self) -> str:
        if self.ok:
            return f"{self.path}: ok ({self.message})"
        return f"{self.path}: error: {self.message}"


def _check_artifact(path: str | Path, operators) -> str:
    kind = artifact_kind(path)
    if kind == "graph":
        g = read_app_graph(path)
        check_registry(g, operators)
        summary = f"{len(g.nodes)} nodes, {len(g.edges)} edges"
    elif kind == "union":
        packed = read_union(path)
        summary = f"{len(packed.union.nodes)} union nodes, {len(packed.packs)} packs"
    elif kind == "pnr":
        result = read_pnr(path)
        summary = f"{len(result.routes)} routed nets on {result.noc}"
    else:
        app, noc, cfg = read_config(path)
        violations = validate_config(noc, cfg)
        if violations:
            raise InvalidConfigurationError(str(violations[0]), violations)
        summary = f"application {app}, {len(cfg)} connections"
    return f"{kind}: {summary}"


def _error_message(err: Exception) -> str:
    if isinstance(err, ParseError):
        where = ":".join(str(p) for p in (err.line, err.column) if p is not None)
        return f"{where}: {err.reason}" if where else err.reason
    return str(err)


def cmd_validate(files: Sequence[str | Path], registry: str = "default") -> list[Diagnostic]:
    """
    Parse and check every file; return one diagnostic per file.

    Application graphs are also checked against the operator registry, PnR
    files are re-verified and configurations validated against their mesh. A
    file that fails does not stop the others from being checked.
    """
    operators = get_operator_registry(registry)
    diagnostics = []
    for path in files:
        try:
            diagnostics.append(Diagnostic(str(path), True, _check_artifact(path, operators)))
        except (SdfNocError, OSError, ValueError) as err:
            logger.debug("%s failed validation", path, exc_info=True)
            diagnostics.append(Diagnostic(str(path), False, _error_message(err)))
    return diagnostics


def cmd_merge(
    files: Sequence[str | Path] = (),
    out: str | Path | None = None,
    seed: int | None = None,
    random_packing: bool = False,
    project: str | Path | None = None,
) -> str:
    """
    Merge application graphs, ids 1..N in argument order, into a union file.

    With ``project`` the graphs and the seed default to the project's.
    """
    proj = read_project(project) if project is not None else None
    if not files:
        if proj is None:
            raise ValueError("merge needs application graphs or a project file")
        files = proj.apps
    seed = _project_seed(seed, proj)
    graphs = [read_app_graph(path, i) for i, path in enumerate(files, start=1)]
    _, packed = merge(graphs, seed if random_packing else None)
    return _write(format_union(packed), out)


def cmd_pnr(
    union_path: str | Path,
    mesh: str | None = None,
    seed: int | None = None,
    max_rip_up: int = 50,
    out: str | Path | None = None,
    project: str | Path | None = None,
) -> str:
    """
    Place and route a union file on a ``RxC`` mesh.

    ``mesh`` and ``seed`` default to the ones of ``project``.
    """
    proj = read_project(project) if project is not None else None
    if mesh is not None:
        noc = MeshNoC(*parse_mesh(mesh))
    elif proj is not None:
        noc = proj.noc()
    else:
        raise ValueError("pnr needs a mesh or a project file")
    seed = _project_seed(seed, proj)
    packed = read_union(union_path)
    result = place_and_route(packed, noc, seed, max_rip_up=max_rip_up)
    return _write(format_pnr(result), out)


def cmd_config(pnr_path: str | Path, app: str, out: str | Path | None = None) -> str:
    """Configuration file of one application, named by id or name."""
    result = read_pnr(pnr_path)
    union = result.packed.union
    app_id = union.resolve_app(app)
    text = format_config(result.config(app_id), result.noc, union.app(app_id).name)
    return _write(text, out)


def cmd_simulate(
    pnr_path: str | Path,
    app: str,
    streams_path: str | Path,
    delay_max: int = 0,
    seed: int | None = None,
    out: str | Path | None = None,
    trace: str | Path | None = None,
    registry: str = "default",
    project: str | Path | None = None,
) -> str:
    """
    Simulate one application on its configured NoC.

    Output streams holding images can only be written with ``out``: the
    images are saved next to the stream file. With ``project`` the delay seed
    defaults to the project's, and the PnR file must target the project's mesh.
    """
    result = read_pnr(pnr_path)
    proj = read_project(project) if project is not None else None
    if proj is not None and proj.noc() != result.noc:
        raise ValueError(
            f"{pnr_path} targets a {result.noc} mesh but the project uses {proj.noc()}"
        )
    seed = _project_seed(seed, proj)
    app_id = result.packed.union.resolve_app(app)
    inputs = read_streams(streams_path)
    sim = simulate(
        result.noc,
        result.config(app_id),
        result.packed,
        result.placement,
        result.routes,
        get_operator_registry(registry),
        inputs,
        DelayModel(seed=seed, max_delay=delay_max),
        app_id,
    )
    if trace is not None:
        _write("".join(f"{line}\n" for line in sim.trace), trace)
    if out is not None:
        write_streams(out, sim.outputs)
        return Path(out).read_text(encoding="utf-8")
    return format_streams(sim.outputs)


def cmd_report(
    project: str | Path | None = None,
    mode: str = "model",
    areas: str | Path | None = None,
    standalone: Sequence[int] | None = None,
    reconfigurable: int | None = None,
) -> AreaReport:
    """
    Area report.

    In ``model`` mode the applications of ``project`` are merged and sized
    with the project's area table (``areas`` overrides it). In ``given`` mode
    the measured totals are used; they default to the bundled experiment's.
    """
    if mode == "given":
        return given_report(
            standalone or GIVEN_STANDALONE,
            GIVEN_RECONFIGURABLE if reconfigurable is None else reconfigurable,
        )
    if mode != "model":
        raise ValueError(
            f"Unknown report mode: {mode}"
            "\n Mode must be one of: "
            "['model', 'given']"
        )
    if project is None:
        raise ValueError("model mode needs a project file")
    proj = read_project(project)
    table = read_area_table(areas) if areas is not None else proj.area_table()
    return model_report(proj.load_graphs(), table)


def cmd_export_dot(path: str | Path, out: str | Path | None = None) -> str:
    """DOT source of an application graph, a union or a PnR result."""
    kind = artifact_kind(path)
    if kind == "graph":
        text = graph_to_dot(read_app_graph(path))
    elif kind == "union":
        text = union_to_dot(read_union(path))
    elif kind == "pnr":
        text = read_pnr(path).to_dot()
    else:
        raise ParseError("configurations have no DOT export", 1, 1, str(path))
    return _write(text, out)
