"""
merger.py

Module for the complete merge step: label, share nodes, color edges, pack and
divide.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from sdfnoc.graph.dataflow_graph import DataflowGraph
from sdfnoc.merge.packing import PackedGraph, divide, pack
from sdfnoc.merge.union_graph import UnionGraph, build_union

logger = logging.getLogger(__name__)


def merge(
    graphs: Sequence[DataflowGraph], seed: int | None = None
) -> tuple[UnionGraph, PackedGraph]:
    """
    Merge temporally exclusive application graphs.

    Parameters
    ----------
    graphs : sequence of DataflowGraph
        Application graphs. They are re-tagged with application ids 1..N in
        list order; ids double as edge colors.
    seed : int, optional
        Seed of the packing combination order. ``None`` (default) is
        deterministic.

    Returns
    -------
    union : UnionGraph
        Union graph with sigma_N and sigma_E.
    packed : PackedGraph
        Its division into packs.

    Raises
    ------
    ValueError
        If no graph is given.
    MergeConflictError
        If the graphs cannot be merged consistently.

    Examples
    --------
    >>> from sdfnoc.graph.parser import parse_app_graph
    >>> g = parse_app_graph("app a\\nnode x type=ID in=1 out=1\\n")
    >>> union, packed = merge([g, g])
    >>> len(union.nodes), len(packed.packs)
    (1, 1)
    """
    if not graphs:
        raise ValueError("merge needs at least one application graph")
    tagged = [g.with_app_id(i) for i, g in enumerate(graphs, start=1)]
    union = build_union(tagged)
    packed = divide(union, pack(union, seed))
    logger.info(
        "merged %d applications: %d union nodes, %d union edges, %d packs",
        len(tagged),
        len(union.nodes),
        len(union.edges),
        len(packed.packs),
    )
    return union, packed
