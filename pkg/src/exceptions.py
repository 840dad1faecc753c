"""
Excecoes
========

Error types raised by the engine. Every error carries a machine-readable
``code`` and, where one exists, a ``witness`` (offending cone, point,
pair of bases, JSON path, ...). The CLI maps all of them to exit code 1.
"""

from typing import Any, Optional


class TropFanError(Exception):
    """Base class for all engine errors"""

    default_code = "ERROR"

    def __init__(self, code: Optional[str] = None, message: str = "", witness: Any = None):
        self.code = code or self.default_code
        self.witness = witness
        text = f"{self.code}: {message}" if message else self.code
        if witness is not None:
            text += f" (witness: {witness})"
        super().__init__(text)


class FanError(TropFanError, ValueError):
    """Invalid fan, face or fan operation"""

    default_code = "INVALID_FAN"


class MatroidError(TropFanError, ValueError):
    """Invalid matroid data or matroid operation"""

    default_code = "INVALID_MATROID"


class PreconditionError(TropFanError):
    """An operation was called outside its documented preconditions"""

    default_code = "PRECONDITION"


class WitnessError(TropFanError):
    """A shellability witness step failed; ``witness`` holds the JSON path"""

    default_code = "STEP_VIOLATION"


class InputFormatError(TropFanError, ValueError):
    """Malformed input file; message carries line/column or field path"""

    default_code = "MALFORMED_INPUT"
