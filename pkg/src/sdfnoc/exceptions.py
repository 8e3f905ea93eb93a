"""
exceptions.py

Module for the exception hierarchy shared by every sdfnoc sub-package.

All errors derive from :class:`SdfNocError` and from the builtin a caller
would expect (``ValueError`` for bad input, ``RuntimeError`` for failures
while executing a configured NoC), so ``except ValueError`` keeps working.
"""

from __future__ import annotations

from collections.abc import Sequence


class SdfNocError(Exception):
    """Base class of all sdfnoc errors."""


class ParseError(SdfNocError, ValueError):
    """
    Malformed text document (graph, union, PnR, config, stream, image or project).

    Parameters
    ----------
    reason : str
        Human readable description of the problem.
    line : int, optional
        1-based line number, if known.
    column : int, optional
        1-based column number, if known.
    path : str, optional
        File the text was read from. Readers fill it in after the fact.
    """

    def __init__(
        self,
        reason: str,
        line: int | None = None,
        column: int | None = None,
        path: str | None = None,
    ) -> None:
        self.reason = reason
        self.line = line
        self.column = column
        self.path = path
        super().__init__(reason)

    def location(self) -> str:
        parts = [str(p) for p in (self.path, self.line, self.column) if p is not None]
        return ":".join(parts)

    def __str__(self) -> str:
        where = self.location()
        if self.path is not None:
            return f"{where}: {self.reason}"
        if self.line is not None:
            if self.column is not None:
                return f"line {self.line}, column {self.column}: {self.reason}"
            return f"line {self.line}: {self.reason}"
        return self.reason


class GraphParseError(ParseError):
    """Syntax or structural error in an application graph document."""


class GraphStructureError(SdfNocError, ValueError):
    """Duplicate ids, out-of-range ports, duplicate drivers or loads, dangling endpoints."""


class GraphCycleError(SdfNocError, ValueError):
    """An application graph contains a directed cycle."""

    def __init__(self, cycle: Sequence[str]) -> None:
        self.cycle = tuple(cycle)
        super().__init__(f"graph contains a cycle: {' -> '.join(self.cycle)}")


class UnknownOperatorError(SdfNocError, ValueError):
    """A node type has no entry in the operator registry."""


class OperatorDomainError(SdfNocError, ValueError):
    """An operator was fired on tokens outside its domain."""


class MergeConflictError(SdfNocError, ValueError):
    """Application graphs cannot be merged consistently."""


class MissingAreaError(SdfNocError, ValueError):
    """An area table has no entry for a node type."""


class PlacementCapacityError(SdfNocError, ValueError):
    """More vertices must be placed than the mesh has Local ports."""


class UnroutableError(SdfNocError, ValueError):
    """Routing did not converge within the rip-up limit."""

    def __init__(self, blocked: Sequence[int], iterations: int) -> None:
        self.blocked = tuple(blocked)
        self.iterations = iterations
        names = ", ".join(f"e{i}" for i in self.blocked)
        super().__init__(
            f"unroutable after {iterations} rip-up iterations; blocked nets: {names}"
        )


class InvalidConfigurationError(SdfNocError, ValueError):
    """A derived crossbar configuration violates the NoC rules."""

    def __init__(self, message: str, violations: Sequence[object] = ()) -> None:
        self.violations = tuple(violations)
        detail = "".join(f"\n  {v}" for v in self.violations)
        super().__init__(f"{message}{detail}")


class SimulationError(SdfNocError, RuntimeError):
    """Base class for failures while simulating a configured NoC."""


class SimulationDeadlockError(SimulationError):
    """No event can fire but some boundary output stream is incomplete."""


class UnconfiguredPortError(SimulationError):
    """A token reached a crossbar port that the configuration does not connect."""
