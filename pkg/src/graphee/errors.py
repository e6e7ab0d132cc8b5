"""Exception types shared by all graphee modules."""


class GrapheeError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(GrapheeError, ValueError):
    """A shape, index, or label constraint was violated.

    Raised for out-of-range triplets, non-square matrices where a square
    one is required, dimension mismatches, and invalid class counts.
    """


class NumericalDomainError(GrapheeError, ValueError):
    """A value fell outside the numeric domain an operation supports.

    Raised for negative degrees under Laplacian normalization and for
    non-finite inputs to row correlation.
    """


class ParseError(GrapheeError, ValueError):
    """An input file is malformed; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
