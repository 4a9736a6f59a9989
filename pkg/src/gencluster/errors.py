"""Exception types shared across the package.

Every error raised by the library derives from :class:`GenClusterError`,
so callers can catch one type at the boundary.  Input/validation problems
and mathematical impossibilities get distinct subclasses because the
command line maps them to different exit codes.
"""


class GenClusterError(Exception):
    """Base class for all library errors."""


class TableMismatch(GenClusterError):
    """Two ring elements over different variable tables were combined."""


class InexactDivision(GenClusterError):
    """A Laurent-polynomial division left a nonzero remainder."""


class UnknownSymbol(GenClusterError):
    """A symbol is not present in the relevant variable table."""


class NonFrozenSupport(GenClusterError):
    """A tropical operation met a monomial supported on a cluster variable."""


class NotSkewSymmetrizable(GenClusterError):
    """No positive diagonal matrix skew-symmetrizes the principal part."""


class InvalidDivisors(GenClusterError):
    """A divisor vector is not compatible with an exchange matrix."""


class IndexOutOfRange(GenClusterError, IndexError):
    """A mutation index does not name a mutable direction."""


class NotSkewSymmetric(GenClusterError):
    """A quiver construction needs a skew-symmetric principal part."""


class FrozenVertexMutation(GenClusterError):
    """A mutation was requested at a frozen vertex."""


class FoldingViolation(GenClusterError):
    """A partition fails the folding conditions.

    Attributes
    ----------
    class_index : int
        Index of the offending class.
    edge : tuple or None
        Pair of vertex indices carrying an intra-class arrow, when that
        is what failed.
    """

    def __init__(self, message, class_index=None, edge=None):
        super().__init__(message)
        self.class_index = class_index
        self.edge = edge


class HomogeneityFailure(GenClusterError):
    """An exchange polynomial is not coefficient-homogeneous.

    Attributes
    ----------
    row : int
        Cluster row whose exchange data fails.
    column : str or None
        Name of a frozen variable witnessing the failure.
    term : str or None
        Text of an offending exchange-polynomial term.
    """

    def __init__(self, message, row=None, column=None, term=None):
        super().__init__(message)
        self.row = row
        self.column = column
        self.term = term


class StructureViolation(GenClusterError):
    """A block-structured matrix violates a required block identity."""


class GroupCoherenceViolation(GenClusterError):
    """Members of one mutation group disagree where they must agree."""


class CorrespondenceViolation(GenClusterError):
    """Two objects that must track the same mutation history do not."""


class ParseError(GenClusterError):
    """A text input does not match the documented grammar.

    ``line`` and ``column`` are 1-based positions when known; they are
    folded into the message so plain ``str()`` reporting stays useful.
    """

    def __init__(self, message, line=None, column=None):
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(GenClusterError):
    """A parsed object fails a semantic validity requirement."""
