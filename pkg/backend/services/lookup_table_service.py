"""
Arc-jyā difference lookup table.

For k = 1..24 seconds of difference between an arc and its jyā, the table
lists the jyā and arc where s - m = k''. Entries come from the cube root of
k·r²/10 (in minutes), read either as the arc (the commentary's reading, which
reproduces the printed table) or as the jyā (the formula as written).
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Tuple

from mpmath import mp, mpf

from services.errors import ArcDomainError, OutOfTableRangeError
from services.sexagesimal_service import (
    TRIJYA,
    THIRDS_PER_SECOND,
    ArcThirds,
    RadiusConstant,
    format_sexagesimal,
    icbrt_rational,
    round_fraction,
    thirds_from_components,
)
from services.trig_oracle_service import resolve_digits

logger = logging.getLogger(__name__)

TABLE_SIZE = 24
# Lookups are accepted up to 30'' outside the first and last jyā
LOOKUP_MARGIN = 30 * THIRDS_PER_SECOND


class TableMode(str, Enum):
    COMMENTARY = "commentary"
    LITERAL = "literal"
    PRINTED = "printed"


@dataclass(frozen=True)
class LookupEntry:
    k: int
    jya: ArcThirds
    arc: ArcThirds
    katapayadi_label: str = ""

    @property
    def difference(self) -> ArcThirds:
        return self.arc - self.jya


@dataclass(frozen=True)
class LookupTable:
    radius: RadiusConstant
    entries: Tuple[LookupEntry, ...]
    mode: TableMode

    def __post_init__(self):
        if len(self.entries) != TABLE_SIZE:
            raise ArcDomainError(f"lookup table needs {TABLE_SIZE} entries, got {len(self.entries)}")

    def entry(self, k: int) -> LookupEntry:
        return self.entries[k - 1]

    @property
    def covered_range(self) -> Tuple[ArcThirds, ArcThirds]:
        return self.entries[0].jya - LOOKUP_MARGIN, self.entries[-1].jya + LOOKUP_MARGIN


class LaghuvivrtiTable:
    """The 24 rows as printed: (k, label, jyā minutes, seconds, arc minutes, seconds)"""

    ROWS = [
        (1, "lavaṇaṃ nindyaṃ", 105, 43, 105, 44),
        (2, "kapilā gopī", 133, 11, 133, 13),
        (3, "cararāśaya", 152, 26, 152, 29),
        (4, "stavārthitayā", 167, 46, 167, 50),
        (5, "laghunoddiṣṭo", 180, 43, 180, 48),
        (6, "rājñaḥ pralayo", 192, 2, 192, 8),
        (7, "dhāmnāṃ trinetra", 202, 8, 202, 15),
        (8, "narakapuram", 211, 20, 211, 28),
        (9, "savadhūṭīndro", 219, 47, 219, 56),
        (10, "jalasūradrī", 227, 38, 227, 48),
        (11, "himavān guru", 234, 58, 235, 9),
        (12, "striśaṅkuvaraḥ", 241, 52, 242, 4),
        (13, "varado vajrī", 248, 24, 248, 37),
        (14, "tilabhūrmeruḥ", 254, 36, 254, 50),
        (15, "kālena tatra", 260, 31, 260, 46),
        (16, "nṛpaticaraḥ", 266, 10, 266, 26),
        (17, "tilakaṃ sāndraṃ", 271, 36, 271, 53),
        (18, "dhāvatisarit", 276, 48, 277, 6),
        (19, "na me kuñjaro", 281, 50, 282, 9),
        (20, "nivṛttajaraḥ", 286, 40, 287, 0),
        (21, "śreṣṭhakalatra", 291, 22, 291, 43),
        (22, "mamāśādhātrī", 295, 55, 296, 17),
        (23, "dhūpo'gnīnā", 300, 18, 300, 41),
        (24, "mbutilavanagaḥ", 304, 36, 305, 0),
    ]

    @classmethod
    def label(cls, k: int) -> str:
        return cls.ROWS[k - 1][1]

    @classmethod
    def entries(cls) -> Tuple[LookupEntry, ...]:
        return tuple(
            LookupEntry(
                k=k,
                jya=thirds_from_components(jya_min, jya_sec),
                arc=thirds_from_components(arc_min, arc_sec),
                katapayadi_label=label,
            )
            for k, label, jya_min, jya_sec, arc_min, arc_sec in cls.ROWS
        )


def _cube_root_seconds(k: int, r: RadiusConstant) -> int:
    """(k·r²/10)^(1/3) minutes, rounded to whole seconds"""
    root = icbrt_rational(k * r.minutes ** 2 / 10)
    return round_fraction(root * 60)


def build_lookup_table(r: RadiusConstant = TRIJYA, mode: TableMode = TableMode.COMMENTARY) -> LookupTable:
    """
    Build the 24-entry table at arc-second resolution.

    COMMENTARY takes the cube root as the arc and sets jyā = arc - k''.
    LITERAL takes it as the jyā and sets arc = jyā + k''.
    PRINTED returns the printed rows regardless of r.
    """
    if mode == TableMode.PRINTED:
        return LookupTable(radius=r, entries=LaghuvivrtiTable.entries(), mode=mode)

    entries = []
    for k in range(1, TABLE_SIZE + 1):
        root = _cube_root_seconds(k, r) * THIRDS_PER_SECOND
        difference = k * THIRDS_PER_SECOND
        if mode == TableMode.COMMENTARY:
            arc, jya = root, root - difference
        else:
            jya, arc = root, root + difference
        entries.append(LookupEntry(k=k, jya=jya, arc=arc, katapayadi_label=LaghuvivrtiTable.label(k)))

    logger.debug(f"Built {mode.value} lookup table for r={format_sexagesimal(r.thirds)}")
    return LookupTable(radius=r, entries=tuple(entries), mode=mode)


def printed_lookup_table() -> LookupTable:
    return build_lookup_table(TRIJYA, TableMode.PRINTED)


def lookup_arc(table: LookupTable, m: ArcThirds) -> Tuple[ArcThirds, LookupEntry, ArcThirds]:
    """Arc of the entry whose jyā is nearest to m (ties to the smaller k), with |m - jyā|"""
    low, high = table.covered_range
    if not low <= m <= high:
        raise OutOfTableRangeError(
            f"jyā {format_sexagesimal(m)} outside the table's range "
            f"[{format_sexagesimal(low)}, {format_sexagesimal(high)}]",
            low=low,
            high=high,
        )
    # min() keeps the first of equal keys, i.e. the smaller k
    entry = min(table.entries, key=lambda e: abs(m - e.jya))
    return entry.arc, entry, abs(m - entry.jya)


def candra_bracket(table: LookupTable, value: ArcThirds) -> Tuple[Optional[LookupEntry], Optional[LookupEntry]]:
    """Entries with the largest jyā <= value and the smallest jyā >= value"""
    below = [e for e in table.entries if e.jya <= value]
    above = [e for e in table.entries if e.jya >= value]
    return (below[-1] if below else None), (above[0] if above else None)


def max_candra_jya(r: RadiusConstant = TRIJYA) -> ArcThirds:
    """
    Largest jyā met in the lunar correction arcsin(7/80·sin θ): round(7r/80).

    For the standard table it falls between the k=23 and k=24 jyās, which is
    why 24 rows suffice.
    """
    value = round_fraction(Fraction(7 * r.thirds, 80))
    lower, upper = candra_bracket(build_lookup_table(r), value)
    if lower is None or upper is None or (lower.k, upper.k) != (23, 24):
        logger.warning(
            f"7r/80 = {format_sexagesimal(value)} is not bracketed by the k=23 and k=24 jyās "
            f"for r={format_sexagesimal(r.thirds)}"
        )
    return value


def modern_arc_for_difference(k: int, digits: Optional[int] = None) -> mpf:
    """
    Arc s in minutes with s - R·sin(s/R) = k/60 for R = 21600/2π, solved by
    bisection with the oracle's sine.
    """
    if not 1 <= k <= TABLE_SIZE:
        raise ArcDomainError(f"k must be in 1..{TABLE_SIZE}, got {k}")
    with mp.workdps(resolve_digits(digits)):
        radius = 10800 / mp.pi
        target = mpf(k) / 60
        root = mp.findroot(
            lambda s: s - radius * mp.sin(s / radius) - target,
            (mpf(0), mpf(5400)),
            solver="bisect",
            maxsteps=500,
        )
        return +root


def format_lookup_table_for_api(table: LookupTable, unicode: bool = False) -> List[Dict]:
    rows = []
    for entry in table.entries:
        rows.append({
            "k": entry.k,
            "jya_thirds": entry.jya,
            "jya_sexagesimal": format_sexagesimal(entry.jya, unicode=unicode),
            "arc_thirds": entry.arc,
            "arc_sexagesimal": format_sexagesimal(entry.arc, unicode=unicode),
            "katapayadi": entry.katapayadi_label,
        })
    return rows
