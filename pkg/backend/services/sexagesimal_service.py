"""
Sexagesimal arc arithmetic.

Arcs are carried exactly, either as an integer count of arc-thirds (ArcThirds)
or as a Fraction of arc-minutes (RationalArc). 1' = 60'' = 3600'''.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
import math
import os
from typing import Tuple, Union

from services.errors import (
    ArcDomainError,
    ComponentRangeError,
    NumericDomainError,
    SexagesimalParseError,
)

logger = logging.getLogger(__name__)

ArcThirds = int
RationalArc = Fraction
Rational = Union[int, Fraction]

THIRDS_PER_SECOND = 60
THIRDS_PER_MINUTE = 3600
THIRDS_PER_DEGREE = 60 * THIRDS_PER_MINUTE

# Root results land on a grid of 1/8 third unless the caller asks otherwise
DEFAULT_ROOT_PRECISION = 8

ASCII_MARKS = ("'", "''", "'''")
UNICODE_MARKS = ("′", "″", "‴")


class RoundingMode(str, Enum):
    NEAREST = "nearest"  # ties away from zero
    HALF_EVEN = "half_even"
    FLOOR = "floor"
    CEIL = "ceil"


class ArcUnit(str, Enum):
    THIRDS = "thirds"
    MINUTES = "minutes"
    DEGREES = "degrees"


UNIT_THIRDS = {
    ArcUnit.THIRDS: 1,
    ArcUnit.MINUTES: THIRDS_PER_MINUTE,
    ArcUnit.DEGREES: THIRDS_PER_DEGREE,
}


@dataclass(frozen=True)
class RadiusConstant:
    """The trijyā (radius) of the reference circle, in thirds"""
    thirds: ArcThirds

    def __post_init__(self):
        if self.thirds <= 0:
            raise ArcDomainError(f"radius must be positive, got {self.thirds}'''")

    @property
    def minutes(self) -> RationalArc:
        return Fraction(self.thirds, THIRDS_PER_MINUTE)

    @property
    def squared(self) -> int:
        return self.thirds * self.thirds


# r = 3437'44''48'''
TRIJYA = RadiusConstant(12375888)


def thirds_from_components(minutes: int, seconds: int = 0, thirds: int = 0, sign: int = 1) -> ArcThirds:
    """Recompose sign, minutes, seconds and thirds into a count of thirds"""
    if sign not in (1, -1):
        raise ComponentRangeError(f"sign must be +1 or -1, got {sign}")
    if minutes < 0:
        raise ComponentRangeError(f"minutes must be non-negative, got {minutes}")
    if not 0 <= seconds < 60:
        raise ComponentRangeError(f"seconds must be in [0, 60), got {seconds}")
    if not 0 <= thirds < 60:
        raise ComponentRangeError(f"thirds must be in [0, 60), got {thirds}")
    return sign * (minutes * THIRDS_PER_MINUTE + seconds * THIRDS_PER_SECOND + thirds)


def components_from_thirds(value: ArcThirds) -> Tuple[int, int, int, int]:
    """Split a count of thirds into (sign, minutes, seconds, thirds)"""
    sign = -1 if value < 0 else 1
    minutes, rest = divmod(abs(value), THIRDS_PER_MINUTE)
    seconds, thirds = divmod(rest, THIRDS_PER_SECOND)
    return sign, minutes, seconds, thirds


def format_sexagesimal(value: ArcThirds, unicode: bool = False) -> str:
    """Canonical text: minutes unpadded, seconds and thirds as two digits"""
    sign, minutes, seconds, thirds = components_from_thirds(value)
    marks = UNICODE_MARKS if unicode else ASCII_MARKS
    prefix = "-" if sign < 0 else ""
    return f"{prefix}{minutes}{marks[0]}{seconds:02d}{marks[1]}{thirds:02d}{marks[2]}"


def _read_digits(text: str, pos: int, max_len: int = 0) -> Tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise SexagesimalParseError("expected digits", text, start)
    if max_len and pos - start > max_len:
        raise SexagesimalParseError(f"at most {max_len} digits allowed", text, start)
    return int(text[start:pos]), pos


def _read_marks(text: str, pos: int, expected: int) -> int:
    start = pos
    while pos < len(text) and text[pos] == "'":
        pos += 1
    if pos - start != expected:
        raise SexagesimalParseError(f"expected {expected} apostrophe(s)", text, start)
    return pos


def parse_sexagesimal(text: str) -> ArcThirds:
    """
    Parse `[-]M'[S''[T''']]` into thirds.

    Unicode primes are accepted and read as their ASCII equivalents.
    """
    normalized = (
        text.replace(UNICODE_MARKS[2], "'''")
        .replace(UNICODE_MARKS[1], "''")
        .replace(UNICODE_MARKS[0], "'")
    )
    pos = 0
    sign = 1
    if normalized.startswith("-"):
        sign = -1
        pos = 1

    minutes, pos = _read_digits(normalized, pos)
    pos = _read_marks(normalized, pos, 1)
    fields = [minutes]

    for marks in (2, 3):
        if pos == len(normalized):
            break
        start = pos
        value, pos = _read_digits(normalized, pos, max_len=2)
        if value >= 60:
            raise SexagesimalParseError(f"component {value} must be below 60", normalized, start)
        pos = _read_marks(normalized, pos, marks)
        fields.append(value)

    if pos != len(normalized):
        raise SexagesimalParseError("unexpected trailing text", normalized, pos)

    fields += [0] * (3 - len(fields))
    return thirds_from_components(fields[0], fields[1], fields[2], sign)


def round_fraction(value: Rational, mode: RoundingMode = RoundingMode.NEAREST) -> int:
    """Round an exact rational to an integer"""
    value = Fraction(value)
    if mode == RoundingMode.FLOOR:
        return math.floor(value)
    if mode == RoundingMode.CEIL:
        return math.ceil(value)
    if mode == RoundingMode.HALF_EVEN:
        return round(value)
    magnitude = math.floor(abs(value) + Fraction(1, 2))
    return magnitude if value >= 0 else -magnitude


def round_to_thirds(value: RationalArc, mode: RoundingMode = RoundingMode.NEAREST) -> ArcThirds:
    """Round a rational number of minutes to whole thirds"""
    return round_fraction(Fraction(value) * THIRDS_PER_MINUTE, mode)


def thirds_to_minutes(value: ArcThirds) -> RationalArc:
    return Fraction(value, THIRDS_PER_MINUTE)


def minutes_to_thirds(value: RationalArc) -> ArcThirds:
    """Exact conversion; the value must be a whole number of thirds"""
    scaled = Fraction(value) * THIRDS_PER_MINUTE
    if scaled.denominator != 1:
        raise ArcDomainError(f"{value} minutes is not a whole number of thirds")
    return scaled.numerator


def degrees_to_thirds(value: Rational) -> Fraction:
    return Fraction(value) * THIRDS_PER_DEGREE


def thirds_in_unit(value: Rational, unit: ArcUnit) -> Fraction:
    """Express a quantity of thirds in the requested unit"""
    return Fraction(value) / UNIT_THIRDS[unit]


def parse_arc_text(text: str, unit: ArcUnit = ArcUnit.MINUTES) -> RationalArc:
    """
    Read an arc given either in sexagesimal notation or as a decimal number
    in `unit`. Returns exact minutes.
    """
    text = text.strip()
    if any(mark in text for mark in ("'",) + UNICODE_MARKS):
        return thirds_to_minutes(parse_sexagesimal(text))
    try:
        number = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SexagesimalParseError("not a sexagesimal value or decimal number", text, 0) from None
    return number * UNIT_THIRDS[unit] / THIRDS_PER_MINUTE


def radius_from_text(text: str) -> RadiusConstant:
    return RadiusConstant(parse_sexagesimal(text))


def default_radius() -> RadiusConstant:
    """Radius from KERALA_RADIUS, falling back to the standard trijyā"""
    text = os.getenv("KERALA_RADIUS")
    if not text:
        return TRIJYA
    radius = radius_from_text(text)
    if radius != TRIJYA:
        logger.info(f"Using non-standard radius {format_sexagesimal(radius.thirds)} from KERALA_RADIUS")
    return radius


def _integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) by Newton's method from above"""
    if n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def root_fraction(value: Rational, k: int, grid: int) -> Fraction:
    """
    Largest multiple of 1/grid not exceeding value ** (1/k).

    The result is monotone in value and within 1/grid of the true root.
    """
    value = Fraction(value)
    if value < 0:
        raise NumericDomainError(f"cannot take root of negative value {value}")
    n = value.numerator * grid ** k // value.denominator
    return Fraction(_integer_root(n, k), grid)


def isqrt_rational(
    value: Rational,
    precision_thirds: int = DEFAULT_ROOT_PRECISION,
    scale: int = THIRDS_PER_MINUTE,
) -> Fraction:
    """
    Square root to within 1/precision_thirds of a third.

    `scale` is the number of thirds in one unit of the result: 3600 when the
    argument is in square minutes, 1 when it is in square thirds.
    """
    if precision_thirds <= 0:
        raise ArcDomainError("precision_thirds must be positive")
    return root_fraction(value, 2, precision_thirds * scale)


def icbrt_rational(
    value: Rational,
    precision_thirds: int = DEFAULT_ROOT_PRECISION,
    scale: int = THIRDS_PER_MINUTE,
) -> Fraction:
    """Cube root to within 1/precision_thirds of a third (see isqrt_rational)"""
    if precision_thirds <= 0:
        raise ArcDomainError("precision_thirds must be positive")
    return root_fraction(value, 3, precision_thirds * scale)
