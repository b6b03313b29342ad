"""Exception types raised across chronomind."""


class ChronomindError(Exception):
    """Base class for every error raised by this package."""


class MalformedInterval(ChronomindError, ValueError):
    """An interval whose lower end exceeds its upper end (or is not a natural)."""


class ParseError(ChronomindError, ValueError):
    def __init__(self, message, line=1, col=1):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, column {col})")


class DialectError(ChronomindError, ValueError):
    """A construct was used outside the logic it belongs to (e.g. a nominal in LEK)."""


class DuplicateWorld(ParseError):
    pass


class UnknownWorldInRelation(ParseError):
    pass


class UnknownWorld(ChronomindError, KeyError):
    def __str__(self):
        return f"unknown world {self.args[0]!r}"


class UnknownAgent(ChronomindError, KeyError):
    def __str__(self):
        return f"unknown agent {self.args[0]!r}"


class NotGround(ChronomindError, ValueError):
    """A mental operation received an argument of the wrong shape."""
