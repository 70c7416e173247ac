# mesh/errors.py
from __future__ import annotations

from typing import Optional


class MeshStructureError(ValueError):
    """Triangle connectivity does not describe a usable mesh."""


class TriangleFormatError(ValueError):
    """
    A .node/.ele text could not be parsed.

    `line` is 1-based and refers to the physical line in `source`.
    """

    def __init__(self, message: str, line: Optional[int] = None, source: str = ""):
        self.message = message
        self.line = line
        self.source = source
        where = source or "input"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


class GenerationError(ValueError):
    """Mesh generation was asked for something it cannot build."""


class InvariantViolation(RuntimeError):
    """A smoothed mesh broke a preservation or equivalence check."""


class ReportSchemaError(ValueError):
    """A bench report does not match the documented schema."""
