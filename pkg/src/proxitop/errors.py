"""Exception types and size caps shared across the toolkit.

Everything in this package enumerates subsets of a finite ground set, so
costs grow like 2^n (subsets), 4^n (pairs of subsets) or 8^n (triples).
The caps below bound the exhaustive operations; callers may raise them
explicitly when they know what they are paying for.
"""

# Ground sets larger than this are rejected at construction time.
MAX_GROUND_POINTS = 16

# Operations that sweep pairs or triples of subsets (axiom checkers,
# far-pair partitions) refuse to run exhaustively above this many points.
DEFAULT_EXHAUSTIVE_CAP = 10

# Per-pair witness searches (2^n candidate subsets, or regular-open pairs).
DEFAULT_WITNESS_CAP = 12

# Maximum number of hyperpoints (nonempty closed sets) in CL(X).
DEFAULT_HYPER_CAP = 4096

# Safety valve for base generation (finite intersections of a subbase).
DEFAULT_BASE_CAP = 200_000


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class CapExceededError(ToolkitError):
    """An exhaustive operation was asked to run beyond its size cap."""

    def __init__(self, operation: str, size: int, cap: int):
        self.operation = operation
        self.size = size
        self.cap = cap
        super().__init__(
            f"{operation}: size {size} exceeds cap {cap}; "
            f"raise the cap explicitly or use sampling mode where available"
        )


class InvalidTopologyError(ToolkitError):
    """The open family is not a topology; carries the failing report."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"open family is not a topology: {report.summary()}")


class NotOpenError(ToolkitError):
    """A subbase generator was given a set that is not open."""


class HyperspaceMismatchError(ToolkitError):
    """Two hyperspace bases do not live over the same enumerated CL(X)."""


class InvalidModelError(ToolkitError):
    """A model description failed validation; `where` names the field."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
