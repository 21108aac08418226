"""Exception types shared by the package."""


class InputError(ValueError):
    """Malformed or inconsistent input.

    ``kind`` names the violated invariant, ``where`` points at the offending
    field (for example ``cubes[3].corners``).
    """

    def __init__(self, kind: str, message: str = "", where: str | None = None):
        self.kind = kind
        self.where = where
        text = kind if not message else f"{kind}: {message}"
        if where:
            text = f"{text} (at {where})"
        super().__init__(text)


class ComplexError(InputError):
    pass


class GroupError(InputError):
    pass


class InvariantViolation(RuntimeError):
    """An identity that must hold by construction failed.

    Raised instead of returning a verdict, since it signals a bug rather
    than a property of the input.
    """
