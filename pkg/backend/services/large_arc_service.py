"""
Arcsin of large jyās from a 24-entry sine table.

The nearest table entry (j·225') is corrected by the arc difference
2r·(jyā₂ - jyā₁)/(kojyā₁ + kojyā₂), which approximates the arc between two
points from their jyās and kojyās.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Tuple

from mpmath import mp

from services.errors import ArcDomainError, DegenerateInputError, SmallArcAdvisedError
from services.sexagesimal_service import (
    TRIJYA,
    THIRDS_PER_MINUTE,
    ArcThirds,
    RadiusConstant,
    RationalArc,
    format_sexagesimal,
    isqrt_rational,
    round_fraction,
)
from services.trig_oracle_service import resolve_digits, to_fraction, to_mpf

logger = logging.getLogger(__name__)

TABLE_STEP_MINUTES = 225
TABLE_STEP_THIRDS = TABLE_STEP_MINUTES * THIRDS_PER_MINUTE
TABLE_SIZE = 24

# Values quoted for the standard radius, keyed by arc in thirds
MADHAVA_ANCHORS = {
    810000: 809422,
    1620000: 1615378,
    6480000: 6187944,
    12960000: 10717834,
    13770000: 11099597,
}


class Branch(str, Enum):
    ADD = "add"
    SUBTRACT = "subtract"
    EXACT = "exact"


@dataclass(frozen=True)
class MadhavaSineTable:
    radius: RadiusConstant
    # (arc, jyā) pairs in thirds for j = 1..24
    entries: Tuple[Tuple[ArcThirds, ArcThirds], ...]

    def arc(self, j: int) -> ArcThirds:
        return self.entries[j - 1][0]

    def jya(self, j: int) -> ArcThirds:
        return self.entries[j - 1][1]

    def kojya(self, j: int) -> ArcThirds:
        """kojyā(j·225') = jyā((24 - j)·225')"""
        if not 1 <= j <= TABLE_SIZE:
            raise ArcDomainError(f"table index {j} outside 1..{TABLE_SIZE}")
        return 0 if j == TABLE_SIZE else self.jya(TABLE_SIZE - j)


@dataclass(frozen=True)
class LargeArcResult:
    s: ArcThirds
    s1: ArcThirds
    p: ArcThirds
    kojya_m: ArcThirds
    j: int
    branch: Branch
    # p before rounding, in thirds
    p_exact: Fraction


def oracle_jya_thirds(s: ArcThirds, r: RadiusConstant = TRIJYA, digits: Optional[int] = None) -> ArcThirds:
    """
    round(r·sin(s/r)) with the high-precision sine; the arc is measured along
    the circle of radius r, as in the series
    """
    with mp.workdps(resolve_digits(digits)):
        radius = to_mpf(r.thirds)
        value = radius * mp.sin(to_mpf(s) / radius)
        return round_fraction(to_fraction(value))


def oracle_arcsin_thirds(m: ArcThirds, r: RadiusConstant = TRIJYA, digits: Optional[int] = None) -> Fraction:
    """Arc r·asin(m/r) in thirds, unrounded"""
    if not 0 <= m <= r.thirds:
        raise ArcDomainError(f"jyā {format_sexagesimal(m)} outside [0, r]")
    with mp.workdps(resolve_digits(digits)):
        value = r.thirds * mp.asin(to_mpf(Fraction(m, r.thirds)))
        return to_fraction(value)


def build_madhava_table(r: RadiusConstant = TRIJYA, digits: Optional[int] = None) -> MadhavaSineTable:
    entries = []
    for j in range(1, TABLE_SIZE + 1):
        arc = j * TABLE_STEP_THIRDS
        entries.append((arc, oracle_jya_thirds(arc, r, digits)))
    table = MadhavaSineTable(radius=r, entries=tuple(entries))

    if r == TRIJYA:
        for arc, expected in MADHAVA_ANCHORS.items():
            got = table.jya(arc // TABLE_STEP_THIRDS)
            if got != expected:
                logger.warning(f"Sine table entry at {arc}''' is {got}, quoted value is {expected}")
    return table


def kojya_from_jya(m: ArcThirds, r: RadiusConstant = TRIJYA) -> ArcThirds:
    """round(√(r² - m²)) in thirds"""
    if not 0 <= m <= r.thirds:
        raise ArcDomainError(f"jyā {format_sexagesimal(m)} outside [0, r]")
    return round_fraction(isqrt_rational(r.squared - m * m, scale=1))


def arc_difference(
    jya1: ArcThirds,
    kojya1: ArcThirds,
    jya2: ArcThirds,
    kojya2: ArcThirds,
    r: RadiusConstant = TRIJYA,
) -> RationalArc:
    """2r·(jyā₂ - jyā₁)/(kojyā₁ + kojyā₂), exact, in the unit of the inputs"""
    denominator = kojya1 + kojya2
    if denominator == 0:
        raise DegenerateInputError("both kojyās are zero; the arcs sit at the quadrant")
    return Fraction(2 * r.thirds * (jya2 - jya1), denominator)


def _nearest_entry(table: MadhavaSineTable, m: ArcThirds) -> int:
    # ties go to the lower entry
    return min(range(1, TABLE_SIZE + 1), key=lambda j: (abs(m - table.jya(j)), j))


def arcsin_large(
    m: ArcThirds,
    r: RadiusConstant = TRIJYA,
    table: Optional[MadhavaSineTable] = None,
) -> LargeArcResult:
    """
    s = s₁ ± p where s₁ is the table arc whose jyā is nearest to m and p is
    the arc difference between that entry and (m, kojyā(m)).
    """
    if m > r.thirds:
        raise ArcDomainError(f"jyā {format_sexagesimal(m)} exceeds the radius")
    table = table or build_madhava_table(r)
    if m < table.jya(1):
        raise SmallArcAdvisedError(
            f"jyā {format_sexagesimal(m)} is below the first table entry "
            f"{format_sexagesimal(table.jya(1))}; use the iterative small-arc method"
        )

    j = _nearest_entry(table, m)
    s1 = table.arc(j)
    kojya_m = kojya_from_jya(m, r)

    if m == table.jya(j):
        p_exact, branch = Fraction(0), Branch.EXACT
    else:
        p_exact = arc_difference(table.jya(j), table.kojya(j), m, kojya_m, r)
        branch = Branch.ADD if p_exact > 0 else Branch.SUBTRACT
    p = round_fraction(p_exact)

    logger.debug(f"arcsin_large m={m}: entry j={j}, p={p} ({branch.value})")
    return LargeArcResult(
        s=s1 + p,
        s1=s1,
        p=p,
        kojya_m=kojya_m,
        j=j,
        branch=branch,
        p_exact=p_exact,
    )


def max_error_bound(
    r: RadiusConstant = TRIJYA,
    table_step: ArcThirds = TABLE_STEP_THIRDS,
    digits: Optional[int] = None,
) -> ArcThirds:
    """|2r·tan(step/2r) - step| in thirds"""
    with mp.workdps(resolve_digits(digits)):
        radius = to_mpf(r.thirds)
        step = to_mpf(table_step)
        bound = abs(2 * radius * mp.tan(step / (2 * radius)) - step)
        return round_fraction(to_fraction(bound))


def format_madhava_table_for_api(table: MadhavaSineTable, unicode: bool = False) -> List[Dict]:
    rows = []
    for j, (arc, jya) in enumerate(table.entries, start=1):
        rows.append({
            "j": j,
            "arc_minutes": arc // THIRDS_PER_MINUTE,
            "jya_thirds": jya,
            "jya_sexagesimal": format_sexagesimal(jya, unicode=unicode),
        })
    return rows
