"""Exception hierarchy shared by every stirlab module."""


class StirlabError(Exception):
    """Base class for all errors raised by stirlab."""


class InvalidParameterError(StirlabError, ValueError):
    """A family or triangle was requested with a disallowed parameter set."""


class CapExceededError(StirlabError):
    """An index exceeds a configured table cap or enumeration guard."""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the limit {limit}")


class GuardError(CapExceededError):
    """Brute-force enumeration refused because n is above its hard guard."""


class UnsupportedFamilyError(StirlabError, ValueError):
    """The requested operation has no route for this family."""


class OutOfRangeError(StirlabError, ValueError):
    """A closed form was evaluated outside its validity range."""


class NonIntegralError(StirlabError, ArithmeticError):
    """A rational formula or an exact division did not produce an integer."""


class UnknownIdError(StirlabError, KeyError):
    """No registry entry (closed form, claim, family) has this id."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown id"


class WindowTooSmallError(StirlabError, ValueError):
    """Period detection was asked for more evidence than the window holds."""
