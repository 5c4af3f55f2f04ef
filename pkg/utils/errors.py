"""
Exceptions raised by the graph pipeline
"""


class PlanarError(Exception):
    """Base class for every error the pipeline reports to the caller."""


class GraphInputError(PlanarError):
    """Malformed input: unknown vertex ids, bad files, violated preconditions."""


class StructuralError(PlanarError):
    """A combinatorial structure (rotation, decomposition) is inconsistent."""


class NonPlanarError(PlanarError):
    """The graph has no planar embedding.

    `witness` holds the edges of a Kuratowski subgraph when one was found.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = tuple(witness or ())


class InternalError(PlanarError):
    """An internal invariant failed; always a bug, never bad input."""
