"""Exception hierarchy shared by all modules.

The CLI maps the three families to exit codes 2 (parameter), 3 (numerical
regime) and 4 (resource limit).
"""

from __future__ import annotations


class HeckeError(Exception):
    """Base class; ``details`` is serialized into ``--json-errors`` output."""

    exit_code = 1

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), **_jsonable(self.details)}


class ParameterError(HeckeError, ValueError):
    exit_code = 2


class NumericalRegimeError(HeckeError, ArithmeticError):
    exit_code = 3


class PoleError(NumericalRegimeError):
    pass


class RegimeError(NumericalRegimeError):
    """Raised when an operation is used outside its region of validity."""


class NotHyperbolicError(NumericalRegimeError):
    pass


class BracketError(NumericalRegimeError):
    pass


class ContourError(NumericalRegimeError):
    pass


class ResourceLimitError(HeckeError):
    exit_code = 4


def _jsonable(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, complex):
            out[k] = [v.real, v.imag]
        elif isinstance(v, (list, tuple)):
            out[k] = [x if isinstance(x, (int, float, str)) else str(x) for x in v]
        elif isinstance(v, (int, float, str, bool)) or v is None:
            out[k] = v
        else:
            out[k] = str(v)
    return out
