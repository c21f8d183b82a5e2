"""
High-precision trigonometric oracle.

Reference values for sine tables, error scans and verification are computed
with mpmath at a configurable working precision, never with platform floats.
"""
from fractions import Fraction
import logging
import os
from typing import Optional, Union

from mpmath import mp, mpf

logger = logging.getLogger(__name__)

DEFAULT_DIGITS = 30

Number = Union[int, Fraction, mpf]


def resolve_digits(digits: Optional[int]) -> int:
    """Explicit digits, else ORACLE_DIGITS, else 30"""
    if digits is not None:
        return digits
    return int(os.getenv("ORACLE_DIGITS", DEFAULT_DIGITS))


def to_mpf(value: Number) -> mpf:
    """Convert an exact rational to mpf at the current working precision"""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def to_fraction(value: mpf) -> Fraction:
    """Exact rational equal to the binary value of an mpf"""
    man, exp = value.man_exp
    if not man:
        return Fraction(0)
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def minutes_to_radians(minutes: Number) -> mpf:
    """Arc-minutes as an angle (21600' to the full turn)"""
    return to_mpf(minutes) * mp.pi / 10800


def sin_degrees(degrees: Number, digits: Optional[int] = None) -> mpf:
    with mp.workdps(resolve_digits(digits)):
        return +mp.sin(to_mpf(degrees) * mp.pi / 180)


def jya_oracle(arc_minutes: Number, radius: Number, digits: Optional[int] = None) -> mpf:
    """radius * sin(arc), arc in minutes, result in the unit of radius"""
    with mp.workdps(resolve_digits(digits)):
        return +(to_mpf(radius) * mp.sin(minutes_to_radians(arc_minutes)))


def kojya_oracle(arc_minutes: Number, radius: Number, digits: Optional[int] = None) -> mpf:
    with mp.workdps(resolve_digits(digits)):
        return +(to_mpf(radius) * mp.cos(minutes_to_radians(arc_minutes)))


def arc_minutes_oracle(jya: Number, radius: Number, digits: Optional[int] = None) -> mpf:
    """Arc in minutes whose jyā on the given radius is `jya`"""
    with mp.workdps(resolve_digits(digits)):
        ratio = to_mpf(jya) / to_mpf(radius)
        return +(mp.asin(ratio) * 10800 / mp.pi)


def pi_value(digits: Optional[int] = None) -> mpf:
    with mp.workdps(resolve_digits(digits)):
        return +mp.pi
