"""Exception hierarchy shared by every module of the package."""


class CoinductError(Exception):
    """Base class for all errors raised by coinduct."""


class ParseError(CoinductError):
    """Malformed concrete syntax (process expressions, rule files, certificates)."""

    def __init__(self, message: str, pos: int | None = None, line: int | None = None):
        self.message = message
        self.pos = pos
        self.line = line
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif pos is not None:
            where = f" (at position {pos})"
        super().__init__(message + where)


class NotAProcess(CoinductError):
    """An operation that needs a closed expression received an open one."""


class BudgetExceeded(CoinductError):
    """A state or pair budget was exhausted."""
