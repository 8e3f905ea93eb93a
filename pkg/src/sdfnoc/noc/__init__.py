"""Circuit-switched mesh NoC model: routers, links and crossbar configurations."""

from sdfnoc.noc.config import (
    CrossbarConfig,
    Trace,
    Violation,
    format_config,
    parse_config,
    read_config,
    trace_from_local,
    validate_config,
)
from sdfnoc.noc.mesh import (
    MESH_PORTS,
    PORT_ORDER,
    Coord,
    InterLink,
    IntraLink,
    Link,
    MeshNoC,
    RouterPort,
    build_mesh,
    format_coord,
    parse_link,
    parse_mesh,
)

__all__ = [
    "MESH_PORTS",
    "PORT_ORDER",
    "Coord",
    "CrossbarConfig",
    "InterLink",
    "IntraLink",
    "Link",
    "MeshNoC",
    "RouterPort",
    "Trace",
    "Violation",
    "build_mesh",
    "format_config",
    "format_coord",
    "parse_config",
    "parse_link",
    "parse_mesh",
    "read_config",
    "trace_from_local",
    "validate_config",
]
