"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent user input (bad graph, bad parameters, ...)."""


class CapacityError(RuntimeError):
    """The requested computation exceeds a configured size bound."""


class PreconditionError(InputError):
    """A documented operation precondition does not hold.

    Carries an optional ``witness`` payload explaining the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
