"""Discrete-event simulation of configured NoCs: delays, resynchronization and stream files."""

from sdfnoc.sim.delays import DelayModel
from sdfnoc.sim.resync import Resynchronizer, resynchronize
from sdfnoc.sim.simulator import Segment, SimResult, reconfigure_and_run, simulate
from sdfnoc.sim.streams import format_streams, parse_streams, read_streams, write_streams

__all__ = [
    "DelayModel",
    "Resynchronizer",
    "Segment",
    "SimResult",
    "format_streams",
    "parse_streams",
    "read_streams",
    "reconfigure_and_run",
    "resynchronize",
    "simulate",
    "write_streams",
]
