"""Exception types shared across depth2-kit.

The command-line front end maps these onto exit codes: size and budget
violations exit with 3, everything else that is the caller's fault
exits with 2.
"""


class Depth2Error(Exception):
    """Base class for all errors raised by this package."""


class SizeError(Depth2Error):
    """A hard size cap was exceeded (atoms, worlds, search bounds)."""


class DomainError(Depth2Error):
    """An element, index, arity, or parameter is outside its domain."""


class PreconditionError(Depth2Error):
    """A structural precondition of the operation does not hold."""


class NoClosureError(Depth2Error):
    """The candidate closed-element set admits no closure operator."""

    def __init__(self, element: int, message: str | None = None):
        self.element = element
        super().__init__(
            message or f"no least candidate above element {element}"
        )


class TrivialityError(Depth2Error):
    """The construction would yield the one-element algebra."""


class BudgetError(Depth2Error):
    """An exhaustive check would exceed the evaluation budget."""


class BindingError(Depth2Error):
    """A formula variable has no assigned value."""


class FormulaSyntaxError(Depth2Error):
    """Lexical or syntax error in formula text, with 1-based column."""

    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = frozenset(expected)
        super().__init__(f"{message} at column {position}")
