"""Exception types shared across the package.

Every error raised by the library derives from ColorEnvError, so callers
(notably the CLI) can separate "bad input / resource limit" from check
failures, which are reported as data, never as exceptions.
"""


class ColorEnvError(Exception):
    """Base class for all library errors."""


class RootOrderMismatch(ColorEnvError, ValueError):
    """Arithmetic attempted between scalars of different root orders."""


class DivisionByZero(ColorEnvError, ZeroDivisionError):
    """Inverse of the zero scalar requested."""


class ElementGroupMismatch(ColorEnvError, ValueError):
    """A group element does not belong to the expected group."""


class SizeMismatch(ColorEnvError, ValueError):
    """Permutation size and degree-list length disagree."""


class GroupTooLarge(ColorEnvError, ValueError):
    """Group order exceeds the enumeration bound."""


class DefinitionError(ColorEnvError, ValueError):
    """An algebra-definition file is malformed; the message names the field."""


class ColorMismatch(ColorEnvError, ValueError):
    """Operation mixing objects over different colors."""


class DimensionMismatch(ColorEnvError, ValueError):
    """Vector or row length does not match the ambient dimension."""


class BasisMismatch(ColorEnvError, ValueError):
    """Operation mixing vectors over different bases."""


class Truncated(ColorEnvError, ArithmeticError):
    """A product left the finite truncation window."""


class DegreeOverflow(ColorEnvError, ArithmeticError):
    """A normal form or product would need degree beyond the bound d."""


class NotInMH(ColorEnvError, ArithmeticError):
    """A star product failed membership in the computed image span."""
