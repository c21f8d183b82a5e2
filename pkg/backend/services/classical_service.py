"""
Classical sine and arcsin approximations.

Bhāskara I's rational approximation to the sine, the two-constraint fit that
reproduces it, the relative-error scan against the trigonometric oracle, and
Brahmagupta's arcsin formula obtained by inverting it.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import List, Optional, Sequence, Tuple

from mpmath import mp, mpf

from services.errors import ArcDomainError, KeralaArcError, NumericDomainError
from services.sexagesimal_service import (
    TRIJYA,
    RadiusConstant,
    Rational,
    RationalArc,
    root_fraction,
)
from services.trig_oracle_service import resolve_digits, to_mpf

logger = logging.getLogger(__name__)

DegreeAngle = Fraction

HALF_TURN = 180
QUARTER_TURN = 90
BHASKARA_DENOMINATOR = 40500  # 5 * 90 * 90
BRAHMAGUPTA_MULTIPLIER = 10125  # 8100 * 5/4
# Finest grid the scan accepts, in degrees
MIN_SCAN_STEP = Fraction(1, 100)

# Angles where the approximation is exact, with the sine values it returns
EXACT_NODES = {
    Fraction(0): Fraction(0),
    Fraction(30): Fraction(1, 2),
    Fraction(90): Fraction(1),
    Fraction(150): Fraction(1, 2),
    Fraction(180): Fraction(0),
}


def _half_turn_product(x: Fraction) -> Fraction:
    return x * (HALF_TURN - x)


def bhaskara_sin(x: Rational) -> Fraction:
    """sin(x°) ≈ 4x(180 - x) / (40500 - x(180 - x)), exact for rational x"""
    x = Fraction(x)
    if not 0 <= x <= HALF_TURN:
        raise ArcDomainError(f"angle {x} deg outside [0, 180]")
    product = _half_turn_product(x)
    return 4 * product / (BHASKARA_DENOMINATOR - product)


def bhaskara_jya(x: Rational, r: RadiusConstant = TRIJYA) -> RationalArc:
    """jyā(x°) = r·sin(x°) in minutes"""
    return r.minutes * bhaskara_sin(x)


def bhaskara_sin_radians(theta: Rational, digits: Optional[int] = None) -> mpf:
    """Radian form 16θ(π - θ) / (5π² - 4θ(π - θ))"""
    with mp.workdps(resolve_digits(digits)):
        theta = to_mpf(theta)
        if theta < 0 or theta > mp.pi:
            raise ArcDomainError(f"angle {theta} rad outside [0, pi]")
        product = theta * (mp.pi - theta)
        return +(16 * product / (5 * mp.pi ** 2 - 4 * product))


@dataclass(frozen=True)
class ErrorScanRow:
    x: Fraction
    approx: Fraction
    exact: mpf
    rel_err_percent: mpf


@dataclass(frozen=True)
class ErrorScan:
    """Relative error of bhaskara_sin over a degree grid"""
    step: Fraction
    digits: int
    rows: List[ErrorScanRow]
    max_row: ErrorScanRow
    # Limit of the relative error as x -> 0+, (16 / 5π - 1) * 100
    small_x_limit_percent: mpf


def bhaskara_error_scan(step: Rational = 1, digits: Optional[int] = None) -> ErrorScan:
    """
    Compare bhaskara_sin with the oracle at x = step, 2·step, ... below 180.

    x = 0 and x = 180 are left out since the relative error is 0/0 there.
    """
    step = Fraction(step)
    if not 0 < step < HALF_TURN:
        raise ArcDomainError(f"scan step {step} deg must lie in (0, 180)")
    if step < MIN_SCAN_STEP:
        raise ArcDomainError(f"scan step {step} deg is finer than the minimum {MIN_SCAN_STEP} deg")
    digits = resolve_digits(digits)

    rows = []
    with mp.workdps(digits):
        n = 1
        while n * step < HALF_TURN:
            x = n * step
            approx = bhaskara_sin(x)
            exact = mp.sin(to_mpf(x) * mp.pi / HALF_TURN)
            rel_err = abs(to_mpf(approx) - exact) / exact * 100
            rows.append(ErrorScanRow(x=x, approx=approx, exact=+exact, rel_err_percent=+rel_err))
            n += 1
        small_x_limit = (16 / (5 * mp.pi) - 1) * 100

    max_row = max(rows, key=lambda row: row.rel_err_percent)
    logger.info(
        f"Error scan step={step}: {len(rows)} rows, max {mp.nstr(max_row.rel_err_percent, 6)}% "
        f"at x={max_row.x}, small-x limit {mp.nstr(small_x_limit, 6)}%"
    )
    return ErrorScan(
        step=step,
        digits=digits,
        rows=rows,
        max_row=max_row,
        small_x_limit_percent=+small_x_limit,
    )


@dataclass(frozen=True)
class RationalFitResult:
    """Constants of g(x) = a + b·x(180 - x)"""
    a: Fraction
    b: Fraction

    def denominator(self, x: Rational) -> Fraction:
        return self.a + self.b * _half_turn_product(Fraction(x))

    def reconstructed_sin(self, x: Rational) -> Fraction:
        """x(180 - x) / g(x)"""
        return _half_turn_product(Fraction(x)) / self.denominator(x)


def _solve_2x2(rows: Sequence[Tuple[Fraction, Fraction, Fraction]]) -> Tuple[Fraction, Fraction]:
    """Cramer's rule for p·a + q·b = c"""
    (p1, q1, c1), (p2, q2, c2) = rows
    det = p1 * q2 - p2 * q1
    if det == 0:
        raise NumericDomainError("singular constraint system")
    return (c1 * q2 - c2 * q1) / det, (p1 * c2 - p2 * c1) / det


def fit_bhaskara_constants() -> RationalFitResult:
    """
    Find g(x) = a + b·x(180 - x) such that x(180 - x)/g(x) hits the exact
    nodes sin 30° = 1/2 and sin 90° = 1, i.e. g(30) = 9000 and g(90) = 8100.
    """
    constraints = []
    for x in (Fraction(30), Fraction(90)):
        product = _half_turn_product(x)
        constraints.append((Fraction(1), product, product / EXACT_NODES[x]))
    a, b = _solve_2x2(constraints)
    fit = RationalFitResult(a=a, b=b)

    for x in EXACT_NODES:
        if fit.reconstructed_sin(x) != bhaskara_sin(x):
            raise KeralaArcError(f"fitted constants a={a}, b={b} do not reproduce the formula at {x}")
    logger.info(f"Fitted g(x) = {a} + ({b})·x(180 - x)")
    return fit


def brahmagupta_arcsin(
    m: RationalArc,
    r: RadiusConstant = TRIJYA,
    precision_digits: int = 18,
) -> DegreeAngle:
    """
    s = 90 - sqrt(8100 - 10125·m / (m/4 + r)) degrees, for 0 <= m <= r.

    m is in the unit of r.minutes. The root is taken on a 10^-precision_digits
    grid, so s is exact whenever the radicand is a perfect square.
    """
    m = Fraction(m)
    radius = r.minutes
    if m < 0 or m > radius:
        raise ArcDomainError(f"jyā {m} outside [0, r]")
    radicand = QUARTER_TURN * QUARTER_TURN - BRAHMAGUPTA_MULTIPLIER * m / (m / 4 + radius)
    if radicand < 0:
        raise NumericDomainError(f"negative radicand {radicand}")
    return QUARTER_TURN - root_fraction(radicand, 2, 10 ** precision_digits)
