"""
Small-arc methods.

The Mādhava–Newton jyā series, the cubic jyā and arcsin approximations,
Śankara Vāriyar's fixed-point arcsin iteration with its trace, and the formal
coefficient engine whose stabilized coefficients are the ternary-tree numbers
(3j)! / (j! (2j+1)!).

Arcs and jyās are integer thirds unless noted; interiors are exact Fractions.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Dict, List, Optional, Tuple, Union

from mpmath import mp, mpf

from services.errors import ArcDomainError, ConvergenceError
from services.sexagesimal_service import (
    TRIJYA,
    ArcThirds,
    RadiusConstant,
    Rational,
    format_sexagesimal,
    round_fraction,
)
from services.trig_oracle_service import resolve_digits, to_mpf

logger = logging.getLogger(__name__)

QUADRANT_THIRDS = 5400 * 3600

# Series terms smaller than this (in thirds) are dropped
JYA_TERM_CUTOFF = Fraction(1, 8)
MAX_SERIES_TERMS = 200

DEFAULT_MAX_ITER = 50

# Exact-mode iteration: values are kept on a 2^-64 third grid and iteration
# stops once successive arcs agree to 2^-32 third
EXACT_GUARD_GRID = 2 ** 64
EXACT_STOP_TOLERANCE = Fraction(1, 2 ** 32)


def jya_series_terms(arc: Rational, radius: Rational, cutoff: Rational = JYA_TERM_CUTOFF) -> List[Fraction]:
    """
    Signed terms of the nested series for radius·sin(arc/radius).

    Each term is the previous one times -arc² / ((2k)(2k+1)·radius²). Terms
    are kept while their magnitude is at least `cutoff`, in the unit of arc.
    """
    arc = Fraction(arc)
    radius = Fraction(radius)
    cutoff = Fraction(cutoff)
    ratio = arc * arc / (radius * radius)

    terms = []
    term = arc
    k = 0
    while term and abs(term) >= cutoff:
        if len(terms) >= MAX_SERIES_TERMS:
            raise ConvergenceError(f"jyā series for {arc} did not fall below {cutoff}")
        terms.append(term)
        k += 1
        term = -term * ratio / ((2 * k) * (2 * k + 1))
    return terms


def madhava_jya(s: ArcThirds, r: RadiusConstant = TRIJYA) -> ArcThirds:
    """jyā(s) from the Mādhava–Newton series, rounded to thirds"""
    if abs(s) > QUADRANT_THIRDS:
        raise ArcDomainError(f"arc {format_sexagesimal(s)} is beyond a quadrant (5400')")
    terms = jya_series_terms(s, r.thirds)
    return round_fraction(sum(terms, Fraction(0)))


def cubic_jya(s: ArcThirds, r: RadiusConstant = TRIJYA) -> ArcThirds:
    """s - s³/(6r²), rounded"""
    s = Fraction(s)
    return round_fraction(s - s ** 3 / (6 * r.squared))


def arcsin_poly3(m: ArcThirds, r: RadiusConstant = TRIJYA) -> ArcThirds:
    """m + m³/(6r²), rounded"""
    if not 0 <= m <= r.thirds:
        raise ArcDomainError(f"jyā {format_sexagesimal(m)} outside [0, r]")
    m = Fraction(m)
    return round_fraction(m + m ** 3 / (6 * r.squared))


def arcsin_series_coefficients(n: int) -> List[Fraction]:
    """First n coefficients of arcsin x = Σ (2k)! / (4^k (k!)² (2k+1)) x^(2k+1)"""
    if n < 1:
        raise ArcDomainError(f"need at least one term, got {n}")
    return [
        Fraction(math.factorial(2 * k), 4 ** k * math.factorial(k) ** 2 * (2 * k + 1))
        for k in range(n)
    ]


def arcsin_series(x: Rational, terms: int) -> Fraction:
    x = Fraction(x)
    if abs(x) > 1:
        raise ArcDomainError(f"arcsin argument {x} outside [-1, 1]")
    return sum(
        (c * x ** (2 * k + 1) for k, c in enumerate(arcsin_series_coefficients(terms))),
        Fraction(0),
    )


def fixed_point_bound(r: RadiusConstant = TRIJYA) -> ArcThirds:
    """
    Largest m (in thirds) for which s = m + s³/(6r²) has a fixed point,
    floor((2√2/3)·r).
    """
    return math.isqrt(8 * r.squared // 9)


@dataclass(frozen=True)
class IterationStep:
    i: int
    delta: Union[ArcThirds, Fraction]
    s: Union[ArcThirds, Fraction]


@dataclass
class IterationTrace:
    m: ArcThirds
    r: ArcThirds
    steps: List[IterationStep] = field(default_factory=list)
    converged: bool = False

    @property
    def deltas(self) -> List[Union[ArcThirds, Fraction]]:
        return [step.delta for step in self.steps]

    @property
    def arcs(self) -> List[Union[ArcThirds, Fraction]]:
        return [step.s for step in self.steps]

    def to_rows(self, unicode: bool = False) -> List[Dict]:
        """Rows for trace output: {i, delta_thirds, s_thirds, s_sexagesimal}"""
        rows = []
        for step in self.steps:
            rows.append({
                "i": step.i,
                "delta_thirds": _as_number(step.delta),
                "s_thirds": _as_number(step.s),
                "s_sexagesimal": format_sexagesimal(round_fraction(step.s), unicode=unicode),
            })
        return rows


def _as_number(value: Union[int, Fraction]) -> Union[int, str]:
    if isinstance(value, Fraction) and value.denominator != 1:
        return str(value)
    return int(value)


def _quantise(value: Fraction) -> Fraction:
    return Fraction(math.floor(value * EXACT_GUARD_GRID), EXACT_GUARD_GRID)


def variyar_arcsin(
    m: ArcThirds,
    r: RadiusConstant = TRIJYA,
    max_iter: int = DEFAULT_MAX_ITER,
    rounding: bool = True,
) -> Tuple[Union[ArcThirds, Fraction], IterationTrace]:
    """
    Iterate Δ_i = (m + Δ_{i-1})³ / (6r²), s_i = m + Δ_i from s_0 = m.

    With rounding each Δ_i is rounded to whole thirds and iteration stops when
    s_i == s_{i-1}. Without rounding the values stay exact (on a fine guard
    grid) and iteration stops once successive arcs agree to 2^-32 third.
    The trace records steps i >= 1.
    """
    if not 0 <= m <= r.thirds:
        raise ArcDomainError(f"jyā {format_sexagesimal(m)} outside [0, r]")

    trace = IterationTrace(m=m, r=r.thirds)
    if 9 * m * m > 8 * r.squared:
        raise ConvergenceError(
            f"no fixed point for m={format_sexagesimal(m)} above (2√2/3)·r="
            f"{format_sexagesimal(fixed_point_bound(r))}",
            trace=trace,
        )

    denominator = 6 * r.squared
    s_prev: Union[int, Fraction] = m
    for i in range(1, max_iter + 1):
        delta = Fraction(s_prev) ** 3 / denominator
        delta = round_fraction(delta) if rounding else _quantise(delta)
        s = m + delta
        trace.steps.append(IterationStep(i=i, delta=delta, s=s))
        settled = s == s_prev if rounding else abs(s - s_prev) < EXACT_STOP_TOLERANCE
        if settled:
            trace.converged = True
            logger.debug(f"Iteration for m={m} settled at step {i}: s={s}")
            return s, trace
        s_prev = s

    raise ConvergenceError(
        f"iteration for m={format_sexagesimal(m)} did not settle within {max_iter} steps",
        trace=trace,
    )


@dataclass(frozen=True)
class CoeffSeries:
    """Σ c_a t^a x^(2a+1), truncated at grade `order`"""
    order: int
    coeffs: Tuple[Fraction, ...]

    def evaluate(self, t: Rational, x: Rational) -> Fraction:
        t = Fraction(t)
        x = Fraction(x)
        return sum(
            (c * t ** a * x ** (2 * a + 1) for a, c in enumerate(self.coeffs)),
            Fraction(0),
        )

    def scaled(self, t: Rational) -> Tuple[Fraction, ...]:
        """Coefficients of x^(2a+1) once t is fixed"""
        t = Fraction(t)
        return tuple(c * t ** a for a, c in enumerate(self.coeffs))


def _truncated_product(a: List[Fraction], b: List[Fraction], order: int) -> List[Fraction]:
    res = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            res[i + j] += ai * bj
    return res


def iterate_coeff_series(n: int, order: Optional[int] = None) -> CoeffSeries:
    """
    Coefficients of s_n for s_0 = x, s_i = x + t·s_{i-1}³.

    Writing s = x·P(t x²), each step is P <- 1 + u·P(u)³, so grade g of the
    new series is grade g-1 of the cube and truncation at `order` is exact.
    """
    if n < 0:
        raise ArcDomainError(f"iteration count must be non-negative, got {n}")
    order = n + 3 if order is None else order
    if order < n:
        raise ArcDomainError(f"order {order} must be at least the iteration count {n}")

    coeffs = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(n):
        cube = _truncated_product(_truncated_product(coeffs, coeffs, order), coeffs, order)
        coeffs = [Fraction(1)] + cube[:order]
    return CoeffSeries(order=order, coeffs=tuple(coeffs))


def a001764(j: int) -> int:
    """(3j)! / (j! (2j+1)!)"""
    if j < 0:
        raise ArcDomainError(f"index must be non-negative, got {j}")
    return math.factorial(3 * j) // (math.factorial(j) * math.factorial(2 * j + 1))


def a001764_recurrence(j: int) -> int:
    """Same numbers via a_{i+1} = a_i·3(3i+1)(3i+2) / ((2i+2)(2i+3))"""
    if j < 0:
        raise ArcDomainError(f"index must be non-negative, got {j}")
    a = 1
    for i in range(j):
        a = a * 3 * (3 * i + 1) * (3 * i + 2) // ((2 * i + 2) * (2 * i + 3))
    return a


def gf_partial_sum(t: Rational, x: Rational, terms: int) -> Fraction:
    t = Fraction(t)
    x = Fraction(x)
    return sum((a001764(a) * t ** a * x ** (2 * a + 1) for a in range(terms)), Fraction(0))


def gf_closed_form(t: Rational, x: Rational, digits: Optional[int] = None) -> mpf:
    """(2/√(3t))·sin(arcsin((3√(3t)/2)·x) / 3)"""
    t = Fraction(t)
    x = Fraction(x)
    if t <= 0:
        raise ArcDomainError(f"t must be positive, got {t}")
    # square of the arcsin argument
    if 27 * t * x * x / 4 > 1:
        raise ArcDomainError(f"arcsin argument out of [-1, 1] for t={t}, x={x}")
    with mp.workdps(resolve_digits(digits)):
        root = mp.sqrt(3 * to_mpf(t))
        argument = 3 * root / 2 * to_mpf(x)
        argument = max(mpf(-1), min(mpf(1), argument))
        return +(2 / root * mp.sin(mp.asin(argument) / 3))
