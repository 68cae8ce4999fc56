class NutlError(Exception):
    """Base class for every error raised by the toolkit."""


class ParseError(NutlError):
    def __init__(self, msg, line=None, col=None):
        self.msg = msg
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{msg}{where}")


class UnboundVariableError(ParseError):
    pass


class UnguardedError(NutlError):
    pass


class NotNormalizedError(NutlError):
    pass


class BudgetExceeded(NutlError):
    pass


class KripkeError(NutlError):
    pass


class SoundnessError(NutlError):
    """A witness produced by the search failed the independent oracle."""
