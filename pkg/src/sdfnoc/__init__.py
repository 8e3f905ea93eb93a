"""sdfnoc: merge temporally exclusive dataflow applications onto a reconfigurable NoC.

The public API is organised into the following sub-packages:

* :mod:`sdfnoc.graph` - tokens, application graphs, their text format and
  direct evaluation.
* :mod:`sdfnoc.imaging` - integer image operators, operator registries and
  PGM/PPM files.
* :mod:`sdfnoc.merge` - union graph construction, packing, division, area
  model and the union file format.
* :mod:`sdfnoc.noc` - mesh routers, links and crossbar configurations.
* :mod:`sdfnoc.pnr` - placement, routing, verification and per-application
  configurations.
* :mod:`sdfnoc.sim` - discrete-event simulation of a configured NoC.
* :mod:`sdfnoc.cli` - project files, area reports and the ``sdfnoc`` script.
* :mod:`sdfnoc.data` - the bundled day/night preprocessor experiment.
* :mod:`sdfnoc.visualization` - mix-in plotting helpers.

Sub-packages are not imported eagerly to keep ``import sdfnoc`` cheap.
Import what you need, e.g.::

    from sdfnoc.merge import merge
    from sdfnoc.noc import MeshNoC
    from sdfnoc.pnr import place_and_route
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
