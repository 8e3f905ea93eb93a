"""
configs.py

Module for deriving the crossbar configuration of one application from the
routes: the links of every external edge carrying the application's color are
switched on, all others are off.
"""

from __future__ import annotations

from collections.abc import Mapping

from sdfnoc.exceptions import InvalidConfigurationError
from sdfnoc.merge.packing import PackedGraph
from sdfnoc.noc.config import CrossbarConfig, validate_config
from sdfnoc.noc.mesh import Link, MeshNoC
from sdfnoc.pnr.placement import Placement


def app_links(routes: Mapping[int, frozenset[Link]], packed: PackedGraph, app: int) -> frozenset[Link]:
    """Links of every routed edge with color ``app``."""
    return frozenset(
        link for idx, links in routes.items() if app in packed.edge(idx).colors for link in links
    )


def config_for_app(
    routes: Mapping[int, frozenset[Link]], packed: PackedGraph, app: int
) -> CrossbarConfig:
    """Crossbar connections of application ``app`` without validation."""
    return CrossbarConfig.from_links(app_links(routes, packed, app))


def derive_configs(
    routes: Mapping[int, frozenset[Link]],
    packed: PackedGraph,
    placement: Placement,
    app: int,
    noc: MeshNoC,
) -> CrossbarConfig:
    """
    Full-NoC configuration of application ``app``.

    Parameters
    ----------
    routes : mapping of int to frozenset of Link
        Routes of the external edges.
    packed : PackedGraph
        Packed union graph.
    placement : Placement
        Placement the routes were computed for.
    app : int
        Application id.
    noc : MeshNoC
        Target mesh.

    Returns
    -------
    CrossbarConfig
        The connections of every route carrying ``app``.

    Raises
    ------
    ValueError
        If ``app`` is not an application of the union.
    InvalidConfigurationError
        If the configuration breaks a NoC rule.
    """
    packed.union.app(app)
    cfg = config_for_app(routes, packed, app)
    violations = validate_config(noc, cfg)
    if violations:
        raise InvalidConfigurationError(
            f"configuration of application {app} is invalid", violations
        )
    for idx, links in routes.items():
        edge = packed.edge(idx)
        if app in edge.colors and any(v not in placement for v in edge.vertices):
            raise InvalidConfigurationError(f"edge e{idx} has an unplaced endpoint")
    return cfg
