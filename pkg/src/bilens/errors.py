class BilensError(Exception):
    """Base class for every error raised by this package."""


class EndpointMismatch(BilensError):
    """Two morphisms were glued along endpoints that do not agree."""


class NotACone(BilensError):
    """The legs handed to a limit construction do not commute."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotACocone(BilensError):
    """The legs handed to a colimit construction do not commute.

    ``witness`` is an element ``z`` of the relating set on which the two
    legs disagree.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoMediatorConstructible(BilensError):
    """The pushout cocone needed by the pullback mediator does not commute.

    This says the construction is inapplicable to the cone. It does not
    say that no mediator exists; only the exhaustive verifier decides
    that.  ``witness`` is a triple ``(p, w, b)`` of element labels.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class InapplicableLaw(BilensError):
    """A law was checked on a lens whose shape does not make it typeable."""


class SchemaError(BilensError):
    """A JSON document does not match the expected schema."""
