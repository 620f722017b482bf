"""Exception hierarchy.

Domain rejections subclass :class:`ZetacodeError`; the CLI maps them to exit
status 1, and :class:`InputFormatError` (file parsing) to exit status 2.
"""


class ZetacodeError(Exception):
    """Base class for every rejection raised by the package."""


class GraphError(ZetacodeError, ValueError):
    pass


class CodeError(ZetacodeError, ValueError):
    pass


class IntegralityError(ZetacodeError, ArithmeticError):
    """An expansion that must have integer coefficients produced a fraction."""


class ConvergenceError(ZetacodeError, ValueError):
    pass


class EnsembleError(ZetacodeError, ValueError):
    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats or {}


class InputFormatError(ZetacodeError):
    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
        self.path = path
        self.line = line
