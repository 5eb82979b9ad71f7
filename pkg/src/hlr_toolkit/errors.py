"""Exception hierarchy for the toolkit."""

from typing import TYPE_CHECKING, Any, Optional, Tuple

if TYPE_CHECKING:
    from .report import ValidationReport


class HLRError(Exception):
    """Base class for toolkit errors."""

    pass


class ShapeError(HLRError):
    """Raised when tensor or matrix shapes are inconsistent."""

    pass


class BaseMismatchError(HLRError):
    """Raised when two structures that must share a base algebra do not."""

    pass


class PreconditionError(HLRError):
    """Raised when an input fails validation or a regularity requirement."""

    def __init__(self, message: str, report: Optional["ValidationReport"] = None):
        super().__init__(message)
        self.report = report


class ConstructionError(HLRError):
    """Raised when a construction cannot produce a valid object.

    Attributes:
        tensor: Name of the structure map that could not be induced or restricted
        witness: Optional vector exhibiting the problem
        report: Optional validation report of the rejected candidate
    """

    def __init__(
        self,
        message: str,
        tensor: Optional[str] = None,
        witness: Optional[Tuple[Any, ...]] = None,
        report: Optional["ValidationReport"] = None,
    ):
        super().__init__(message)
        self.tensor = tensor
        self.witness = witness
        self.report = report


class ParseError(HLRError):
    """Raised when a document cannot be parsed.

    Attributes:
        path: Location inside the document, e.g. ``payload.alpha.rows[0][1]``
    """

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.message = message
        self.path = path
