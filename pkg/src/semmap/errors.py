"""Exception hierarchy shared across the package.

Everything raised on bad data derives from SemmapError so the CLI can map
data problems to exit code 1 while argparse keeps exit code 2 for usage.
"""


class SemmapError(Exception):
    """Base class for all data and pipeline errors."""


class MatrixFormatError(SemmapError, ValueError):
    """Malformed or invalid form-function matrix input."""


class DimensionMismatchError(SemmapError, ValueError):
    """Two objects that must share a node/function count do not."""


class SubsetCapError(SemmapError, RuntimeError):
    """Connected-subset counting refused: graph too large for the general
    counter and not a forest; pass force=True to override."""


class EnumerationError(SemmapError, RuntimeError):
    """Spanning-tree enumeration cannot satisfy the request (disconnected
    graph, rank beyond the tree count, or budget exhausted)."""


class DegenerateStudyError(SemmapError, RuntimeError):
    """A correlation study round produced constant values, so the
    correlation is undefined."""
