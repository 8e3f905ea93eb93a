"""Visualization helpers: plotting mix-ins for placed and routed NoCs."""

from sdfnoc.visualization.mixins import NocPlotMixin

__all__ = ["NocPlotMixin"]
