"""
Circumference refinement.

Given a diameter D and an approximate circumference C*, the jyā series gives
a* = jyā(C*/4) and b* = kojyā(C*/4) on radius D. The true quarter arc has
jyā = kojyā = √(D²/2), so the difference of √(b*²/2) and √(a*²/2) is the jyā
of (C - C*)/4. Converting it to an arc with the cubic correction yields C.

All quantities are exact Fractions of minutes; squares are square minutes.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging
from typing import List, Optional, Tuple

from services.errors import ArcDomainError, NumericDomainError
from services.sexagesimal_service import (
    THIRDS_PER_MINUTE,
    RationalArc,
    Rational,
    isqrt_rational,
    parse_sexagesimal,
    round_fraction,
    thirds_to_minutes,
)
from services.small_arc_service import jya_series_terms
from services.trig_oracle_service import pi_value, to_mpf

logger = logging.getLogger(__name__)

# 1/8 third, in minutes
DEFAULT_CUTOFF = Fraction(1, 8 * THIRDS_PER_MINUTE)
DEFAULT_A_STAR_RESOLUTION = 1  # thirds
C_STAR_TOLERANCE = Fraction(1, 10)

# Diameter and approximate circumference of the worked example, in minutes
WORKED_EXAMPLE = (Fraction(1400), Fraction(4400))

# Rows of the worked example as printed, where they disagree with the
# recomputed chain
PRINTED_DEVIATIONS = {
    "delta_jya": thirds_to_minutes(parse_sexagesimal("0'26''24'''")),
    "C": thirds_to_minutes(parse_sexagesimal("4398'14''24'''")),
}


class Direction(str, Enum):
    GREATER = "C>C*"
    LESS = "C<C*"
    EQUAL = "equal"


@dataclass
class CircumferenceTrace:
    D: RationalArc
    C_star: RationalArc
    series_terms: List[RationalArc] = field(default_factory=list)
    a_star_exact: RationalArc = Fraction(0)
    a_star: RationalArc = Fraction(0)
    a_star_sq: Fraction = Fraction(0)
    b_star_sq: Fraction = Fraction(0)
    sqrt_half_a: RationalArc = Fraction(0)
    sqrt_half_b: RationalArc = Fraction(0)
    delta_jya: RationalArc = Fraction(0)
    delta_arc: RationalArc = Fraction(0)
    correction: RationalArc = Fraction(0)
    C: RationalArc = Fraction(0)
    direction: Direction = Direction.EQUAL

    def rows(self) -> List[Tuple[str, Fraction]]:
        """(label, value) pairs in the order of the worked computation"""
        rows = [("D", self.D), ("C*", self.C_star), ("C*/4", self.C_star / 4)]
        rows += [(f"term {i}", term) for i, term in enumerate(self.series_terms, start=1)]
        rows += [
            ("a*", self.a_star),
            ("(a*)^2", self.a_star_sq),
            ("(b*)^2 = D^2 - (a*)^2", self.b_star_sq),
            ("sqrt((a*)^2/2)", self.sqrt_half_a),
            ("sqrt((b*)^2/2)", self.sqrt_half_b),
            ("Delta", self.delta_jya),
            ("delta", self.delta_arc),
            ("4 delta", self.correction),
            ("C", self.C),
        ]
        return rows

    def printed_deviations(self) -> List[Tuple[str, Fraction, Fraction]]:
        """(label, printed, recomputed) for the worked example's slipped rows"""
        if (self.D, self.C_star) != WORKED_EXAMPLE:
            return []
        return [
            ("Delta", PRINTED_DEVIATIONS["delta_jya"], self.delta_jya),
            ("C", PRINTED_DEVIATIONS["C"], self.C),
        ]


def jya_on_diameter_circle(
    arc: Rational,
    D: Rational,
    cutoff: Rational = DEFAULT_CUTOFF,
) -> Tuple[RationalArc, List[RationalArc]]:
    """jyā of `arc` by the series on radius D, with the signed terms"""
    arc = Fraction(arc)
    D = Fraction(D)
    if D <= 0:
        raise ArcDomainError(f"diameter must be positive, got {D}")
    if abs(arc) > 2 * D:
        raise ArcDomainError(f"arc {arc} exceeds 2D = {2 * D}")
    terms = jya_series_terms(arc, D, cutoff)
    return sum(terms, Fraction(0)), terms


def quadrant_jya_constants(D: Rational) -> Tuple[RationalArc, RationalArc]:
    """jyā(C/4) and kojyā(C/4), both √(D²/2)"""
    D = Fraction(D)
    if D <= 0:
        raise ArcDomainError(f"diameter must be positive, got {D}")
    value = isqrt_rational(D * D / 2)
    return value, value


def _check_c_star(D: Fraction, C_star: Fraction):
    circumference = pi_value() * to_mpf(D)
    if abs(to_mpf(C_star) - circumference) > to_mpf(C_STAR_TOLERANCE) * circumference:
        raise ArcDomainError(f"C* = {C_star} is not within 10% of pi*D for D = {D}")


def refine_circumference(
    D: Rational,
    C_star: Rational,
    a_star_resolution: Optional[int] = DEFAULT_A_STAR_RESOLUTION,
) -> Tuple[RationalArc, CircumferenceTrace]:
    """
    One refinement step C* -> C.

    a* is rounded to a multiple of `a_star_resolution` thirds before squaring
    (None keeps the exact series value). Roots are taken to 1/8 third.
    """
    D = Fraction(D)
    C_star = Fraction(C_star)
    if D <= 0:
        raise ArcDomainError(f"diameter must be positive, got {D}")
    _check_c_star(D, C_star)

    trace = CircumferenceTrace(D=D, C_star=C_star)
    trace.a_star_exact, trace.series_terms = jya_on_diameter_circle(C_star / 4, D)
    if a_star_resolution is None:
        trace.a_star = trace.a_star_exact
    else:
        units = round_fraction(trace.a_star_exact * THIRDS_PER_MINUTE / a_star_resolution)
        trace.a_star = Fraction(units * a_star_resolution, THIRDS_PER_MINUTE)

    trace.a_star_sq = trace.a_star ** 2
    trace.b_star_sq = D * D - trace.a_star_sq
    if trace.b_star_sq < 0:
        raise NumericDomainError(f"(b*)^2 = {trace.b_star_sq} is negative")

    trace.sqrt_half_a = isqrt_rational(trace.a_star_sq / 2)
    trace.sqrt_half_b = isqrt_rational(trace.b_star_sq / 2)
    trace.delta_jya = abs(trace.sqrt_half_b - trace.sqrt_half_a)
    trace.delta_arc = trace.delta_jya + trace.delta_jya ** 3 / (6 * D * D)
    trace.correction = 4 * trace.delta_arc

    if trace.sqrt_half_b > trace.sqrt_half_a:
        trace.direction = Direction.GREATER
        trace.C = C_star + trace.correction
    elif trace.sqrt_half_b < trace.sqrt_half_a:
        trace.direction = Direction.LESS
        trace.C = C_star - trace.correction
    else:
        trace.direction = Direction.EQUAL
        trace.C = C_star

    logger.info(f"Refined C*={C_star} for D={D}: C={float(trace.C):.6f} ({trace.direction.value})")
    return trace.C, trace
