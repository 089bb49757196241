"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: PreconditionError and its
subclasses exit with 2, CapacityError with 3.  Failed verification checks
are reported as data, not exceptions.
"""


class PreconditionError(ValueError):
    """An input violates an operation's contract.

    ``witness`` optionally carries the offending object(s), e.g. a pair of
    vectors on which a bilinear-form check failed.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotIsotropicError(PreconditionError):
    """A subspace required to be q-isotropic is not; witness is a vector pair."""


class ParseError(PreconditionError):
    """A code file could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class CapacityError(RuntimeError):
    """Requested work exceeds a configured enumeration or dense-size cap."""
