"""Command-line front end: project files, area reports and the design flow commands."""

from sdfnoc.cli.commands import (
    Diagnostic,
    artifact_kind,
    cmd_config,
    cmd_export_dot,
    cmd_merge,
    cmd_pnr,
    cmd_report,
    cmd_simulate,
    cmd_validate,
)
from sdfnoc.cli.project import Project, parse_project, read_project
from sdfnoc.cli.report import AreaReport, given_report, model_report

__all__ = [
    "AreaReport",
    "Diagnostic",
    "Project",
    "artifact_kind",
    "cmd_config",
    "cmd_export_dot",
    "cmd_merge",
    "cmd_pnr",
    "cmd_report",
    "cmd_simulate",
    "cmd_validate",
    "given_report",
    "model_report",
    "parse_project",
    "read_project",
]
