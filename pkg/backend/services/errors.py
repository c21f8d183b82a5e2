"""Exceptions raised by the arc computation services"""
from typing import Optional


class KeralaArcError(ValueError):
    """Base class for every error raised by the services"""


class ArcDomainError(KeralaArcError):
    """Input lies outside the domain of the method"""


class NumericDomainError(KeralaArcError):
    """An intermediate quantity left its valid range (e.g. negative radicand)"""


class ComponentRangeError(KeralaArcError):
    """A sexagesimal component is out of range"""


class SexagesimalParseError(KeralaArcError):
    """Malformed sexagesimal text"""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


class ConvergenceError(KeralaArcError):
    """Iteration did not stabilize; carries the partial trace"""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


class OutOfTableRangeError(KeralaArcError):
    """Value not covered by a lookup table"""

    def __init__(self, message: str, low: Optional[int] = None, high: Optional[int] = None):
        super().__init__(message)
        self.low = low
        self.high = high


class SmallArcAdvisedError(ArcDomainError):
    """jyā below the first table entry; the small-arc methods apply"""


class DegenerateInputError(KeralaArcError):
    """Inputs make a formula's denominator vanish"""
