"""Map and route: placement, routing, verification and per-application configurations."""

from sdfnoc.pnr.check import CheckViolation, check
from sdfnoc.pnr.configs import app_links, config_for_app, derive_configs
from sdfnoc.pnr.placement import AnnealingSchedule, Placement, place, placement_cost
from sdfnoc.pnr.result import PnrResult, format_pnr, parse_pnr, place_and_route, read_pnr
from sdfnoc.pnr.routing import net_order, resource, route, routing_graph

__all__ = [
    "AnnealingSchedule",
    "CheckViolation",
    "Placement",
    "PnrResult",
    "app_links",
    "check",
    "config_for_app",
    "derive_configs",
    "format_pnr",
    "net_order",
    "parse_pnr",
    "place",
    "place_and_route",
    "placement_cost",
    "read_pnr",
    "resource",
    "route",
    "routing_graph",
]
